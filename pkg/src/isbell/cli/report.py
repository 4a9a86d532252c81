"""Canonical report values and their text / JSON renderings."""

import json

from ..cylinder import Cocone, Cone, Cylinder
from ..envelope import IsbellMorphism, IsbellObject
from ..fincat import FinCat, Functor, NatTrans
from ..sets import FinFunction, SetFunctor

REPORT_VERSION = 1


def ser(v):
    """Turn a library value into nested dicts, lists and scalars."""
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, FinFunction):
        return {"dom": list(v.dom), "cod": list(v.cod), "map": dict(zip(v.dom, v.values))}
    if isinstance(v, SetFunctor):
        ids = set(v.source.identities.values())
        return {"sets": {a: list(v(a)) for a in v.source.objects},
                "action": {m: dict(zip(v.mor(m).dom, v.mor(m).values))
                           for m in v.source.morphisms if m not in ids}}
    if isinstance(v, NatTrans):
        return {a: ser(f) for a, f in v.components.items()}
    if isinstance(v, IsbellObject):
        return {"plus": ser(v.plus), "minus": ser(v.minus),
                "xi": {" ".join(k): u for k, u in v.xi.items()}}
    if isinstance(v, IsbellMorphism):
        return {"plus": ser(v.plus), "minus": ser(v.minus)}
    if isinstance(v, (Cocone, Cone)):
        return {"vertex": ser(v.vertex), "legs": {i: ser(l) for i, l in v.legs.items()}}
    if isinstance(v, Cylinder):
        return {"components": {f"{i} {j}": ser(c) for (i, j), c in v.components.items()}}
    if isinstance(v, FinCat):
        return {"objects": list(v.objects),
                "morphisms": {m: f"{x} -> {y}" for m, (x, y) in v.morphisms.items()}}
    if isinstance(v, Functor):
        return {"ob": {x: ser(v.ob(x)) for x in v.source.objects},
                "mor": {m: ser(v.mor(m)) for m in v.source.morphisms}}
    if isinstance(v, dict):
        return {str(k): ser(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, frozenset, set)):
        items = [ser(x) for x in v]
        return sorted(items, key=_order) if isinstance(v, (set, frozenset)) else items
    return repr(v)


def _order(x):
    return json.dumps(x, sort_keys=True)


def make_report(command, result):
    return {"report_version": REPORT_VERSION, "command": command, "result": ser(result)}


def render(report, fmt="text"):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    lines = []
    _text(report, 0, lines)
    return "\n".join(lines) + "\n"


def _scalar(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _is_flat(v):
    return not isinstance(v, (dict, list))


def _text(v, depth, lines):
    pad = "  " * depth
    if isinstance(v, dict):
        for k in sorted(v):
            x = v[k]
            if isinstance(x, str) and "\n" in x:
                lines.append(f"{pad}{k}: |")
                lines.extend(f"{pad}  {line}" if line else "" for line in x.rstrip("\n").split("\n"))
            elif _is_flat(x):
                lines.append(f"{pad}{k}: {_scalar(x)}")
            elif isinstance(x, list) and all(_is_flat(y) for y in x):
                lines.append(f"{pad}{k}: [{', '.join(_scalar(y) for y in x)}]")
            elif not x:
                lines.append(f"{pad}{k}: {{}}" if isinstance(x, dict) else f"{pad}{k}: []")
            else:
                lines.append(f"{pad}{k}:")
                _text(x, depth + 1, lines)
    elif isinstance(v, list):
        for x in v:
            if _is_flat(x):
                lines.append(f"{pad}- {_scalar(x)}")
            else:
                lines.append(f"{pad}-")
                _text(x, depth + 1, lines)
    else:
        lines.append(f"{pad}{_scalar(v)}")
