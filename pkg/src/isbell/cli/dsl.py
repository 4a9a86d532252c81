"""Line-oriented definition language for categories, functors, finite-set
data, envelope objects and cylinders.

    category two {
      objects: a, b
      morphisms: f: a -> b
    }
    setfunctor P on op(two) { a = {f}; b = {id_b}; f: id_b -> f }
    isbell Yb = yoneda(two, b)

Statements end at ``;`` or a newline; ``#`` starts a comment; ids that are
not plain words go in double quotes.  See :data:`GRAMMAR` for every form.
"""

import re
from dataclasses import dataclass, field

from .._ids import is_term
from ..cylinder import Cocone, Cone, Cylinder
from ..envelope import (IsbellEnvelope, IsbellMorphism, IsbellObject,
                        enumerate_xi, validate_morphism, validate_object, yoneda)
from ..errors import IsbellError
from ..fincat import FinCat, Functor, NatTrans, opposite, validate_category, validate_functor
from ..sets import FINSET, FinFunction, SetFunctor, fset

GRAMMAR = """\
category NAME { objects: a, b; morphisms: f: a -> b; id a = ida; compose g . f = h }
functor NAME : SRC -> TGT { ob x -> y; mor f -> g }
setfunctor NAME on CAT|op(CAT) { a = {x, y}; f: x -> y, y -> y }
set NAME = {x, y}
function NAME : SET -> SET { x -> y; ... }
isbell NAME over CAT { plus = SETFUNCTOR; minus = SETFUNCTOR; xi a b m x = u | xi auto }
isbell NAME = yoneda(CAT, c)
isbell-morphism NAME : X -> Y { plus a: x -> y, ...; minus b: n -> m, ... }
diagram NAME : INDEX -> CAT|finset|isbell(CAT) { ob i -> OBJ; mor f -> MOR }
cocone NAME : DIAGRAM => OBJ { i -> MOR }
cone NAME : OBJ => DIAGRAM { j -> MOR }
cylinder NAME : DIAGRAM ~> DIAGRAM { i, j -> MOR }
"""

KINDS = ("category", "functor", "setfunctor", "set", "function", "isbell",
         "isbell-morphism", "diagram", "cocone", "cone", "cylinder")

SYNTAX, UNRESOLVED, INVALID = 2, 3, 4


class DslError(Exception):
    def __init__(self, code, message, where=None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.where = where

    def __str__(self):
        if self.where is None:
            return self.message
        return f"{self.where}: {self.message}"


@dataclass(frozen=True)
class Loc:
    file: str
    line: int
    col: int

    def __str__(self):
        return f"{self.file}:{self.line}:{self.col}"


@dataclass(frozen=True)
class Tok:
    kind: str  # "id", "str", "sym", "nl"
    text: str
    loc: Loc


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<str>"[^"\n]*")
  | (?P<sym>->|=>|~>|[{}();,:=.\[\]])
  | (?P<id>[A-Za-z0-9_*'+<]+(?:-[A-Za-z0-9_*'+<]+)*)
""", re.VERBOSE)


def tokenize(text, filename="<input>"):
    out, pos, line, start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        loc = Loc(filename, line, pos - start + 1)
        if m is None:
            raise DslError(SYNTAX, f"unexpected character {text[pos]!r}", loc)
        kind = m.lastgroup
        if kind == "nl":
            out.append(Tok("nl", "\n", loc))
            line, start = line + 1, m.end()
        elif kind == "str":
            out.append(Tok("str", m.group()[1:-1], loc))
        elif kind in ("sym", "id"):
            out.append(Tok(kind, m.group(), loc))
        pos = m.end()
    out.append(Tok("nl", "\n", Loc(filename, line, pos - start + 1)))
    return out


class Cursor:
    def __init__(self, toks, end_loc):
        self.toks = toks
        self.i = 0
        self.end_loc = end_loc

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def loc(self):
        t = self.peek()
        return t.loc if t else self.end_loc

    def at_end(self):
        return self.i >= len(self.toks)

    def next(self):
        t = self.peek()
        if t is None:
            raise DslError(SYNTAX, "unexpected end of statement", self.end_loc)
        self.i += 1
        return t

    def ident(self, what="identifier"):
        t = self.next()
        if t.kind not in ("id", "str"):
            raise DslError(SYNTAX, f"expected {what}, found {t.text!r}", t.loc)
        if not is_term(t.text):
            raise DslError(SYNTAX, f"invalid id {t.text!r}", t.loc)
        return t

    def sym(self, s):
        t = self.next()
        if t.kind != "sym" or t.text != s:
            raise DslError(SYNTAX, f"expected {s!r}, found {t.text!r}", t.loc)
        return t

    def word(self, w):
        t = self.next()
        if t.kind != "id" or t.text != w:
            raise DslError(SYNTAX, f"expected {w!r}, found {t.text!r}", t.loc)
        return t

    def is_sym(self, s, k=0):
        t = self.peek(k)
        return t is not None and t.kind == "sym" and t.text == s

    def is_word(self, w):
        t = self.peek()
        return t is not None and t.kind == "id" and t.text == w

    def done(self):
        if not self.at_end():
            t = self.peek()
            raise DslError(SYNTAX, f"unexpected {t.text!r}", t.loc)

    def id_list(self):
        out = [self.ident()]
        while self.is_sym(","):
            self.next()
            out.append(self.ident())
        return out

    def set_literal(self):
        self.sym("{")
        out = []
        if not self.is_sym("}"):
            out = self.id_list()
        self.sym("}")
        return out


@dataclass
class Definition:
    kind: str
    name: str
    value: object
    loc: Loc
    builtin: bool = False


@dataclass
class Workspace:
    defs: dict = field(default_factory=dict)

    def add(self, d: Definition):
        if d.name in self.defs:
            prev = self.defs[d.name]
            raise DslError(SYNTAX, f"duplicate definition {d.name!r} (first defined at {prev.loc})", d.loc)
        self.defs[d.name] = d

    def get(self, tok, kinds=None):
        name = tok.text if isinstance(tok, Tok) else tok
        where = tok.loc if isinstance(tok, Tok) else None
        d = self.defs.get(name)
        if d is None:
            raise DslError(UNRESOLVED, f"undefined name {name!r}", where)
        if kinds and d.kind not in kinds:
            raise DslError(UNRESOLVED, f"{name!r} is a {d.kind}, expected {' or '.join(kinds)}", where)
        return d.value

    def kind_of(self, name):
        return self.defs[name].kind

    def names(self, kind=None, user_only=False):
        return [n for n, d in self.defs.items()
                if (kind is None or d.kind == kind) and not (user_only and d.builtin)]

    def name_of(self, value, kind=None):
        for n, d in self.defs.items():
            if (kind is None or d.kind == kind) and d.value == value:
                return n
        return None


# -- parsing -------------------------------------------------------------------

def parse_text(text, filename="<input>", ws=None, builtin=False):
    ws = ws if ws is not None else Workspace()
    toks = tokenize(text, filename)
    i = 0
    while i < len(toks):
        t = toks[i]
        if t.kind == "nl" or (t.kind == "sym" and t.text == ";"):
            i += 1
            continue
        if t.kind != "id" or t.text not in KINDS:
            raise DslError(SYNTAX, f"expected a definition keyword, found {t.text!r}", t.loc)
        # header runs to '{' or to the end of the line
        j = i + 1
        depth = 0
        header = []
        while j < len(toks):
            u = toks[j]
            if u.kind == "sym" and u.text == "{" and t.text != "set":
                break
            if u.kind == "nl" and depth == 0:
                break
            if u.kind == "sym" and u.text == "{":
                depth += 1
            if u.kind == "sym" and u.text == "}":
                depth -= 1
            header.append(u)
            j += 1
        body = None
        if j < len(toks) and toks[j].kind == "sym" and toks[j].text == "{":
            body, j = _block(toks, j)
        d = _build(t, header, body, ws)
        d.builtin = builtin
        ws.add(d)
        i = j
    return ws


def _block(toks, j):
    open_tok = toks[j]
    j += 1
    stmts, cur = [], []
    depth = 0
    while j < len(toks):
        u = toks[j]
        if u.kind == "sym" and u.text == "{":
            depth += 1
        elif u.kind == "sym" and u.text == "}":
            if depth == 0:
                if cur:
                    stmts.append(cur)
                return stmts, j + 1
            depth -= 1
        if depth == 0 and (u.kind == "nl" or (u.kind == "sym" and u.text == ";")):
            if cur:
                stmts.append(cur)
            cur = []
        elif u.kind != "nl":
            cur.append(u)
        j += 1
    raise DslError(SYNTAX, "unterminated block", open_tok.loc)


def _build(kw, header, body, ws):
    end = header[-1].loc if header else kw.loc
    hc = Cursor(header, end)
    builder = _BUILDERS[kw.text]
    try:
        return builder(kw, hc, body or [], ws)
    except DslError:
        raise
    except IsbellError as exc:
        raise DslError(INVALID, f"invalid {kw.text}: {exc}", kw.loc) from None
    except ValueError as exc:
        raise DslError(INVALID, f"invalid {kw.text}: {exc}", kw.loc) from None


def _stmts(body):
    for toks in body:
        yield Cursor(toks, toks[-1].loc)


def _require_body(kw, body):
    return body


def _category(kw, hc, body, ws):
    name = hc.ident("category name")
    hc.done()
    objects, arrows, ids, table = [], {}, {}, {}
    locs = {}
    for st in _stmts(body):
        head = st.ident()
        if head.text == "objects" and st.is_sym(":"):
            st.next()
            for o in st.id_list():
                if o.text in objects:
                    raise DslError(SYNTAX, f"duplicate object id {o.text!r}", o.loc)
                objects.append(o.text)
        elif head.text == "morphisms" and st.is_sym(":"):
            st.next()
            while True:
                m = st.ident("morphism id")
                st.sym(":")
                x, y = st.ident("object"), None
                st.sym("->")
                y = st.ident("object")
                if m.text in arrows:
                    raise DslError(SYNTAX, f"duplicate morphism id {m.text!r}", m.loc)
                arrows[m.text] = (x, y)
                locs[m.text] = m
                if not st.is_sym(","):
                    break
                st.next()
        elif head.text == "id":
            x = st.ident("object")
            st.sym("=")
            i = st.ident("morphism id")
            ids[x.text] = (x, i)
        elif head.text == "compose":
            g = st.ident()
            st.sym(".")
            f = st.ident()
            st.sym("=")
            h = st.ident()
            if (g.text, f.text) in table:
                raise DslError(SYNTAX, f"duplicate composite {g.text} . {f.text}", g.loc)
            table[(g.text, f.text)] = (g, f, h)
        else:
            raise DslError(SYNTAX, f"unknown category statement {head.text!r}", head.loc)
        st.done()
    objset = set(objects)
    for m, (x, y) in arrows.items():
        for e in (x, y):
            if e.text not in objset:
                raise DslError(UNRESOLVED, f"undefined object {e.text!r}", e.loc)
    identities = {}
    for x, (xt, it) in ids.items():
        if x not in objset:
            raise DslError(UNRESOLVED, f"undefined object {x!r}", xt.loc)
        identities[x] = it.text
    plain = {m: (x.text, y.text) for m, (x, y) in arrows.items()
             if not (m in identities.values() and identities.get(x.text) == m)}
    all_ids = dict(identities)
    from ..fincat import _default_identity
    for x in objects:
        all_ids.setdefault(x, _default_identity(x))
    for m in plain:
        if m in all_ids.values():
            raise DslError(SYNTAX, f"duplicate morphism id {m!r}", locs[m].loc)
    known = set(plain) | set(all_ids.values())
    compose = {}
    for (g, f), (gt, ft, ht) in table.items():
        for t in (gt, ft, ht):
            if t.text not in known:
                raise DslError(UNRESOLVED, f"undefined morphism {t.text!r}", t.loc)
        compose[(g, f)] = ht.text
    c = FinCat.make(objects, plain, identities, compose)
    rep = validate_category(c)
    if not rep.ok:
        raise DslError(INVALID, f"category {name.text}: {rep.message} (witness {', '.join(rep.witness)})", name.loc)
    return Definition("category", name.text, c, name.loc)


def _functor(kw, hc, body, ws):
    name = hc.ident("functor name")
    hc.sym(":")
    s = hc.ident()
    hc.sym("->")
    t = hc.ident()
    hc.done()
    src, tgt = ws.get(s, ["category"]), ws.get(t, ["category"])
    om, mm = {}, {}
    for st in _stmts(body):
        head = st.ident()
        x = st.ident()
        st.sym("->")
        y = st.ident()
        st.done()
        if head.text == "ob":
            _need(x, src.objects)
            _need(y, tgt.objects)
            om[x.text] = y.text
        elif head.text == "mor":
            _need(x, src.morphisms)
            _need(y, tgt.morphisms)
            mm[x.text] = y.text
        else:
            raise DslError(SYNTAX, f"expected 'ob' or 'mor', found {head.text!r}", head.loc)
    for x, i in src.identities.items():
        if x in om:
            mm.setdefault(i, tgt.identity(om[x]))
    F = Functor(src, tgt, om, mm)
    rep = validate_functor(F)
    if not rep.ok:
        raise DslError(INVALID, f"functor {name.text}: {rep.message}", name.loc)
    return Definition("functor", name.text, F, name.loc)


def _need(tok, universe):
    if tok.text not in universe:
        raise DslError(UNRESOLVED, f"undefined id {tok.text!r}", tok.loc)


def _category_ref(hc, ws):
    if hc.is_word("op") and hc.is_sym("(", 1):
        hc.next()
        hc.sym("(")
        c = ws.get(hc.ident(), ["category"])
        hc.sym(")")
        return opposite(c), True
    return ws.get(hc.ident(), ["category"]), False


def _setfunctor(kw, hc, body, ws):
    name = hc.ident("setfunctor name")
    hc.word("on")
    src, _ = _category_ref(hc, ws)
    hc.done()
    sets, action = {}, {}
    for st in _stmts(body):
        head = st.ident()
        if st.is_sym("="):
            st.next()
            _need(head, src.objects)
            sets[head.text] = [e.text for e in st.set_literal()]
        elif st.is_sym(":"):
            st.next()
            _need(head, src.morphisms)
            mp = {}
            if not st.at_end():
                while True:
                    x = st.ident()
                    st.sym("->")
                    y = st.ident()
                    mp[x.text] = (x, y)
                    if not st.is_sym(","):
                        break
                    st.next()
            action[head.text] = mp
        else:
            raise DslError(SYNTAX, "expected 'OBJECT = {...}' or 'MORPHISM: x -> y, ...'", st.loc())
        st.done()
    for x in src.objects:
        sets.setdefault(x, [])
    acts = {}
    for m, (x, y) in src.morphisms.items():
        if m in action:
            for e, (xt, yt) in action[m].items():
                if e not in sets[x]:
                    raise DslError(UNRESOLVED, f"{e!r} is not an element at {x}", xt.loc)
                if yt.text not in sets[y]:
                    raise DslError(UNRESOLVED, f"{yt.text!r} is not an element at {y}", yt.loc)
            acts[m] = {e: yt.text for e, (xt, yt) in action[m].items()}
        elif not sets[x]:
            acts[m] = {}
    F = SetFunctor(src, sets, acts)
    rep = validate_functor(F)
    if not rep.ok:
        raise DslError(INVALID, f"setfunctor {name.text}: {rep.message}", name.loc)
    return Definition("setfunctor", name.text, F, name.loc)


def _set(kw, hc, body, ws):
    name = hc.ident("set name")
    hc.sym("=")
    elems = hc.set_literal()
    hc.done()
    seen = set()
    for e in elems:
        if e.text in seen:
            raise DslError(SYNTAX, f"duplicate element {e.text!r}", e.loc)
        seen.add(e.text)
    return Definition("set", name.text, fset(e.text for e in elems), name.loc)


def _function(kw, hc, body, ws):
    name = hc.ident("function name")
    hc.sym(":")
    s = ws.get(hc.ident(), ["set"])
    hc.sym("->")
    t = ws.get(hc.ident(), ["set"])
    hc.done()
    mp = {}
    for st in _stmts(body):
        while True:
            x = st.ident()
            st.sym("->")
            y = st.ident()
            _need(x, s)
            _need(y, t)
            if x.text in mp:
                raise DslError(SYNTAX, f"duplicate entry for {x.text!r}", x.loc)
            mp[x.text] = y.text
            if not st.is_sym(","):
                break
            st.next()
        st.done()
    return Definition("function", name.text, FinFunction.from_mapping(s, t, mp), name.loc)


def _isbell(kw, hc, body, ws):
    name = hc.ident("object name")
    if hc.is_sym("="):
        hc.next()
        hc.word("yoneda")
        hc.sym("(")
        c = ws.get(hc.ident(), ["category"])
        hc.sym(",")
        o = hc.ident()
        hc.sym(")")
        hc.done()
        _need(o, c.objects)
        return Definition("isbell", name.text, yoneda(c, o.text), name.loc)
    hc.word("over")
    c = ws.get(hc.ident(), ["category"])
    hc.done()
    plus = minus = None
    xi, auto = {}, False
    for st in _stmts(body):
        head = st.ident()
        if head.text in ("plus", "minus"):
            st.sym("=")
            ref = st.ident()
            F = ws.get(ref, ["setfunctor"])
            want = opposite(c) if head.text == "plus" else c
            if F.source != want:
                raise DslError(INVALID, f"{ref.text} is not a functor on {'op(' if head.text == 'plus' else ''}the base"
                               f"{')' if head.text == 'plus' else ''}", ref.loc)
            if head.text == "plus":
                plus = F
            else:
                minus = F
        elif head.text == "xi":
            if st.is_word("auto"):
                st.next()
                auto = True
            else:
                a, b, m, x = st.ident(), st.ident(), st.ident(), st.ident()
                st.sym("=")
                u = st.ident()
                _need(a, c.objects)
                _need(b, c.objects)
                _need(u, c.morphisms)
                xi[(a.text, b.text, m.text, x.text)] = u.text
        else:
            raise DslError(SYNTAX, f"unknown isbell statement {head.text!r}", head.loc)
        st.done()
    if plus is None or minus is None:
        raise DslError(SYNTAX, "isbell object needs both 'plus' and 'minus'", name.loc)
    if auto:
        tables = enumerate_xi(c, plus, minus)
        if not tables:
            raise DslError(INVALID, f"no valid evaluation exists for {name.text}", name.loc)
        base = tables[0]
        base.update(xi)
        xi = base
    X = IsbellObject(c, plus, minus, xi, check=False)
    rep = validate_object(X)
    if not rep.ok:
        raise DslError(INVALID, f"isbell {name.text}: {rep.message}", name.loc)
    return Definition("isbell", name.text, X, name.loc)


def _isbell_morphism(kw, hc, body, ws):
    name = hc.ident("morphism name")
    hc.sym(":")
    X = ws.get(hc.ident(), ["isbell"])
    hc.sym("->")
    Y = ws.get(hc.ident(), ["isbell"])
    hc.done()
    if X.base != Y.base:
        raise DslError(INVALID, "objects live over different categories", name.loc)
    c = X.base
    plus = {a: {} for a in c.objects}
    minus = {b: {} for b in c.objects}
    for st in _stmts(body):
        head = st.ident()
        if head.text not in ("plus", "minus"):
            raise DslError(SYNTAX, f"expected 'plus' or 'minus', found {head.text!r}", head.loc)
        a = st.ident()
        _need(a, c.objects)
        st.sym(":")
        dom, cod = (X.plus(a.text), Y.plus(a.text)) if head.text == "plus" else (Y.minus(a.text), X.minus(a.text))
        target = plus if head.text == "plus" else minus
        if not st.at_end():
            while True:
                x = st.ident()
                st.sym("->")
                y = st.ident()
                _need(x, dom)
                _need(y, cod)
                target[a.text][x.text] = y.text
                if not st.is_sym(","):
                    break
                st.next()
        st.done()
    fp = {a: FinFunction.from_mapping(X.plus(a), Y.plus(a), plus[a]) for a in c.objects}
    fm = {b: FinFunction.from_mapping(Y.minus(b), X.minus(b), minus[b]) for b in c.objects}
    f = IsbellMorphism(X, Y, NatTrans(X.plus, Y.plus, fp), NatTrans(Y.minus, X.minus, fm), check=False)
    rep = validate_morphism(f)
    if not rep.ok:
        raise DslError(INVALID, f"isbell-morphism {name.text}: {rep.message}", name.loc)
    return Definition("isbell-morphism", name.text, f, name.loc)


def _ambient(hc, ws):
    """``(category, object resolver, morphism resolver)`` for a diagram target."""
    if hc.is_word("finset"):
        hc.next()
        return (FINSET, lambda t: ws.get(t, ["set"]), lambda t: ws.get(t, ["function"]))
    if hc.is_word("isbell") and hc.is_sym("(", 1):
        hc.next()
        hc.sym("(")
        c = ws.get(hc.ident(), ["category"])
        hc.sym(")")
        env = IsbellEnvelope(c)

        def obj(t):
            X = ws.get(t, ["isbell"])
            if X.base != c:
                raise DslError(INVALID, f"{t.text} lives over a different category", t.loc)
            return X

        return env, obj, lambda t: ws.get(t, ["isbell-morphism"])
    c = ws.get(hc.ident(), ["category"])

    def cobj(t):
        _need(t, c.objects)
        return t.text

    def cmor(t):
        _need(t, c.morphisms)
        return t.text

    return c, cobj, cmor


def _resolvers(cat, ws):
    if cat == FINSET:
        return (lambda t: ws.get(t, ["set"]), lambda t: ws.get(t, ["function"]))
    if isinstance(cat, IsbellEnvelope):
        return (lambda t: ws.get(t, ["isbell"]), lambda t: ws.get(t, ["isbell-morphism"]))

    def cobj(t):
        _need(t, cat.objects)
        return t.text

    def cmor(t):
        _need(t, cat.morphisms)
        return t.text

    return cobj, cmor


def _diagram(kw, hc, body, ws):
    name = hc.ident("diagram name")
    hc.sym(":")
    index = ws.get(hc.ident(), ["category"])
    hc.sym("->")
    cat, obj, mor = _ambient(hc, ws)
    hc.done()
    om, mm = {}, {}
    for st in _stmts(body):
        head = st.ident()
        x = st.ident()
        st.sym("->")
        y = st.ident()
        st.done()
        if head.text == "ob":
            _need(x, index.objects)
            om[x.text] = obj(y)
        elif head.text == "mor":
            _need(x, index.morphisms)
            mm[x.text] = mor(y)
        else:
            raise DslError(SYNTAX, f"expected 'ob' or 'mor', found {head.text!r}", head.loc)
    for x in index.objects:
        if x not in om:
            raise DslError(SYNTAX, f"diagram {name.text} does not map object {x!r}", name.loc)
    for x, i in index.identities.items():
        mm.setdefault(i, cat.identity(om[x]))
    D = Functor(index, cat, om, mm)
    rep = validate_functor(D)
    if not rep.ok:
        raise DslError(INVALID, f"diagram {name.text}: {rep.message}", name.loc)
    return Definition("diagram", name.text, D, name.loc)


def _legs(body, resolve, keys, two=False):
    out = {}
    for st in _stmts(body):
        i = st.ident()
        if two:
            st.sym(",")
            j = st.ident()
            k, toks = (i.text, j.text), (i, j)
        else:
            k, toks = i.text, (i,)
        st.sym("->")
        ref = st.ident()
        st.done()
        univ = keys(toks)
        if k in out:
            raise DslError(SYNTAX, f"duplicate leg {k!r}", i.loc)
        out[k] = resolve(ref)
    return out


def _cocone(kw, hc, body, ws):
    name = hc.ident("cocone name")
    hc.sym(":")
    D = ws.get(hc.ident(), ["diagram"])
    hc.sym("=>")
    vtok = hc.ident()
    hc.done()
    obj, mor = _resolvers(D.target, ws)
    V = obj(vtok)
    legs = _legs(body, mor, lambda ts: [_need(t, D.source.objects) for t in ts])
    return Definition("cocone", name.text, Cocone(D, V, legs), name.loc)


def _cone(kw, hc, body, ws):
    name = hc.ident("cone name")
    hc.sym(":")
    wtok = hc.ident()
    hc.sym("=>")
    E = ws.get(hc.ident(), ["diagram"])
    hc.done()
    obj, mor = _resolvers(E.target, ws)
    W = obj(wtok)
    legs = _legs(body, mor, lambda ts: [_need(t, E.source.objects) for t in ts])
    return Definition("cone", name.text, Cone(E, W, legs), name.loc)


def _cylinder(kw, hc, body, ws):
    name = hc.ident("cylinder name")
    hc.sym(":")
    D = ws.get(hc.ident(), ["diagram"])
    hc.sym("~>")
    E = ws.get(hc.ident(), ["diagram"])
    hc.done()
    if D.target != E.target:
        raise DslError(INVALID, "diagrams live in different categories", name.loc)
    _, mor = _resolvers(D.target, ws)

    def keys(ts):
        _need(ts[0], D.source.objects)
        _need(ts[1], E.source.objects)

    comps = _legs(body, mor, keys, two=True)
    return Definition("cylinder", name.text, Cylinder(D, E, comps), name.loc)


_BUILDERS = {
    "category": _category, "functor": _functor, "setfunctor": _setfunctor,
    "set": _set, "function": _function, "isbell": _isbell,
    "isbell-morphism": _isbell_morphism, "diagram": _diagram,
    "cocone": _cocone, "cone": _cone, "cylinder": _cylinder,
}


def parse_files(paths, ws=None):
    ws = ws if ws is not None else Workspace()
    for p in paths:
        try:
            with open(p, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DslError(UNRESOLVED, f"cannot read {p}: {exc.strerror}") from None
        except UnicodeDecodeError:
            raise DslError(SYNTAX, f"{p} is not UTF-8") from None
        parse_text(text, p, ws)
    return ws


def load_fixtures(ws=None):
    from importlib.resources import files
    text = files("isbell.data").joinpath("fixtures.cat").read_text(encoding="utf-8")
    return parse_text(text, "fixtures.cat", ws, builtin=True)


# -- printing in definition form ----------------------------------------------

def q(s):
    """Quote an id when it is not a plain word."""
    return s if re.fullmatch(r"[A-Za-z0-9_*'+<]+(?:-[A-Za-z0-9_*'+<]+)*", s) else f'"{s}"'


def print_category(name, c: FinCat):
    lines = [f"category {q(name)} {{"]
    lines.append("  objects: " + ", ".join(q(x) for x in c.objects))
    ids = set(c.identities.values())
    arrows = [(m, xy) for m, xy in c.morphisms.items() if m not in ids]
    if arrows:
        lines.append("  morphisms: " + ", ".join(f"{q(m)}: {q(x)} -> {q(y)}" for m, (x, y) in arrows))
    from ..fincat import _default_identity
    for x, i in c.identities.items():
        if i != _default_identity(x):
            lines.append(f"  id {q(x)} = {q(i)}")
    for (g, f), h in c.table.items():
        if g in ids or f in ids:
            continue
        lines.append(f"  compose {q(g)} . {q(f)} = {q(h)}")
    lines.append("}")
    return "\n".join(lines)


def print_setfunctor(name, F: SetFunctor, cat_ref):
    lines = [f"setfunctor {q(name)} on {cat_ref} {{"]
    src = F.source
    for x in src.objects:
        lines.append(f"  {q(x)} = {{{', '.join(q(e) for e in F(x))}}}")
    ids = set(src.identities.values())
    for m in src.morphisms:
        if m in ids:
            continue
        f = F.mor(m)
        body = ", ".join(f"{q(a)} -> {q(b)}" for a, b in zip(f.dom, f.values))
        lines.append(f"  {q(m)}: {body}".rstrip())
    lines.append("}")
    return "\n".join(lines)


class Printer:
    """Prints values in definition form, emitting helper definitions for
    anything not already named in the workspace."""

    def __init__(self, ws: Workspace):
        self.ws = ws
        self.blocks = []
        self.fresh = {}
        self.taken = set(ws.defs)

    def _new_name(self, base):
        n, k = base, 1
        while n in self.taken:
            k += 1
            n = f"{base}{k}"
        self.taken.add(n)
        return n

    def category(self, c, hint="C"):
        name = self.ws.name_of(c, "category") or self.fresh.get(("category", c))
        if name is None:
            name = self._new_name(hint)
            self.fresh[("category", c)] = name
            self.blocks.append(print_category(name, c))
        return name

    def category_ref(self, c):
        """``NAME`` or ``op(NAME)``, preferring an existing name."""
        direct = self.ws.name_of(c, "category") or self.fresh.get(("category", c))
        if direct:
            return q(direct)
        via = self.ws.name_of(opposite(c), "category") or self.fresh.get(("category", opposite(c)))
        if via:
            return f"op({q(via)})"
        return q(self.category(c))

    def setfunctor(self, F, hint="F"):
        name = self.ws.name_of(F, "setfunctor") or self.fresh.get(("setfunctor", F))
        if name is None:
            ref = self.category_ref(F.source)
            name = self._new_name(hint)
            self.fresh[("setfunctor", F)] = name
            self.blocks.append(print_setfunctor(name, F, ref))
        return name

    def isbell(self, X, name):
        base = self.category(X.base)
        plus = self.setfunctor(X.plus, f"{name}_plus")
        minus = self.setfunctor(X.minus, f"{name}_minus")
        lines = [f"isbell {q(name)} over {q(base)} {{", f"  plus = {q(plus)}", f"  minus = {q(minus)}"]
        for (a, b, m, x), u in X.xi.items():
            lines.append(f"  xi {q(a)} {q(b)} {q(m)} {q(x)} = {q(u)}")
        lines.append("}")
        self.blocks.append("\n".join(lines))
        self.taken.add(name)
        return name

    def text(self):
        return "\n\n".join(self.blocks) + "\n"


def print_isbell(ws: Workspace, X: IsbellObject, name: str) -> str:
    pr = Printer(ws)
    pr.isbell(X, name)
    return pr.text()
