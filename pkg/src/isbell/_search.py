"""Finite-domain constraint search used by every enumeration in the package.

Constraints are arbitrary predicates over a tuple of variables; a
constraint is checked as soon as all of its variables are assigned, and
forward-checks the last open variable's domain once only one remains.
"""

from collections import defaultdict


class Problem:
    def __init__(self):
        self._domains = {}
        self._order = {}
        self._constraints = defaultdict(list)

    def add_variable(self, var, domain):
        if var in self._domains:
            raise ValueError(f"duplicate variable {var!r}")
        self._order[var] = len(self._order)
        self._domains[var] = list(domain)

    def add_constraint(self, variables, predicate):
        variables = tuple(variables)
        distinct = tuple(dict.fromkeys(variables))
        for v in distinct:
            if v not in self._domains:
                raise KeyError(v)
        entry = (variables, distinct, predicate)
        for v in distinct:
            self._constraints[v].append(entry)

    def restrict(self, var, allowed):
        """Unary restriction: keep only the domain values ``allowed`` accepts."""
        self._domains[var] = [x for x in self._domains[var] if allowed(x)]

    @property
    def variables(self):
        return list(self._domains)

    def solutions(self, rng=None):
        """Yield every solution as a dict.  With ``rng``, domains are tried
        in shuffled order (for sampling); otherwise in the given order."""
        domains = {v: list(d) for v, d in self._domains.items()}
        if any(not d for d in domains.values()):
            return
        yield from self._search({}, domains, rng)

    def first(self, rng=None):
        for sol in self.solutions(rng):
            return sol
        return None

    def count(self):
        return sum(1 for _ in self.solutions())

    def _search(self, assign, domains, rng):
        if len(assign) == len(domains):
            yield dict(assign)
            return
        var = min((v for v in domains if v not in assign),
                  key=lambda v: (len(domains[v]), self._order[v]))
        values = list(domains[var])
        if rng is not None:
            rng.shuffle(values)
        for value in values:
            assign[var] = value
            pruned = self._propagate(var, assign, domains)
            if pruned is not None:
                yield from self._search(assign, pruned, rng)
            del assign[var]

    def _propagate(self, var, assign, domains):
        changed = None
        for variables, distinct, pred in self._constraints[var]:
            open_vars = [v for v in distinct if v not in assign]
            if not open_vars:
                if not pred(*(assign[v] for v in variables)):
                    return None
            elif len(open_vars) == 1:
                w = open_vars[0]
                current = (changed or domains)[w]
                keep = []
                for y in current:
                    assign[w] = y
                    if pred(*(assign[v] for v in variables)):
                        keep.append(y)
                del assign[w]
                if not keep:
                    return None
                if len(keep) != len(current):
                    if changed is None:
                        changed = dict(domains)
                    changed[w] = keep
        return changed if changed is not None else domains


class UnionFind:
    """Union-find whose class representative is always the least member."""

    def __init__(self, items=()):
        self._parent = {}
        for x in items:
            self.add(x)

    def add(self, x):
        self._parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if ry < rx:
            rx, ry = ry, rx
        self._parent[ry] = rx

    def classes(self):
        out = defaultdict(list)
        for x in self._parent:
            out[self.find(x)].append(x)
        return {r: sorted(ms) for r, ms in out.items()}
