"""Finite ordinary categories given by explicit composition tables."""

from __future__ import annotations

from itertools import product
from typing import Callable, Hashable, Iterable, Sequence


class CategoryError(ValueError):
    pass


class FiniteCategory:
    """Objects, arrows with endpoints, identities and a total composition table.

    ``compose(g, f)`` is ``g . f`` (first f, then g).  Arrows are any hashable
    labels; hom-sets keep insertion order so everything downstream is
    deterministic.
    """

    def __init__(
        self,
        objects: Sequence[Hashable],
        arrows: dict[Hashable, tuple[Hashable, Hashable]],
        identities: dict[Hashable, Hashable],
        composition: dict[tuple[Hashable, Hashable], Hashable] | Callable,
        name: str = "L",
        check: bool = True,
    ):
        self.name = name
        self.objects = list(objects)
        self.arrows = dict(arrows)
        self.identities = dict(identities)
        self._homs: dict[tuple, list] = {(a, b): [] for a in self.objects for b in self.objects}
        for f, (s, t) in self.arrows.items():
            if (s, t) not in self._homs:
                raise CategoryError(f"arrow {f!r} has unknown endpoints {s!r} -> {t!r}")
            self._homs[(s, t)].append(f)
        self._compose = composition
        if check:
            problems = self.validate()
            if problems:
                raise CategoryError("; ".join(problems))

    def hom(self, a, b) -> list:
        return self._homs[(a, b)]

    def src(self, f):
        return self.arrows[f][0]

    def dst(self, f):
        return self.arrows[f][1]

    def identity(self, a):
        return self.identities[a]

    def compose(self, g, f):
        if self.dst(f) != self.src(g):
            raise CategoryError(f"cannot compose {g!r} after {f!r}")
        if callable(self._compose):
            return self._compose(g, f)
        if self.identities[self.src(f)] == f:
            return g
        if self.identities[self.dst(f)] == g:
            return f
        return self._compose[(g, f)]

    def composable_pairs(self) -> Iterable[tuple]:
        for f in self.arrows:
            for g in self._out(self.dst(f)):
                yield g, f

    def _out(self, a) -> list:
        return [g for b in self.objects for g in self.hom(a, b)]

    def validate(self) -> list[str]:
        problems = []
        for a in self.objects:
            i = self.identities.get(a)
            if i is None or self.arrows.get(i) != (a, a):
                problems.append(f"missing identity at {a!r}")
        if problems:
            return problems
        for g, f in self.composable_pairs():
            try:
                h = self.compose(g, f)
            except KeyError:
                problems.append(f"composite {g!r} . {f!r} undefined")
                continue
            if self.arrows.get(h) != (self.src(f), self.dst(g)):
                problems.append(f"composite {g!r} . {f!r} = {h!r} has wrong endpoints")
        if problems:
            return problems
        for f in self.arrows:
            for g in self._out(self.dst(f)):
                for h in self._out(self.dst(g)):
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                        problems.append(f"associativity fails at {h!r}, {g!r}, {f!r}")
        return problems

    def opposite(self) -> "FiniteCategory":
        arrows = {f: (t, s) for f, (s, t) in self.arrows.items()}
        return FiniteCategory(
            self.objects, arrows, self.identities,
            lambda g, f: self.compose(f, g), name=f"{self.name}^op", check=False,
        )

    def is_filtered(self) -> tuple[bool, str | None]:
        """Check the three filteredness conditions; name the first violated one."""
        if not self.objects:
            return False, "nonempty: the category has no objects"
        for i, j in product(self.objects, repeat=2):
            if not any(self.hom(i, k) and self.hom(j, k) for k in self.objects):
                return False, f"cocone on objects: no k receiving arrows from both {i!r} and {j!r}"
        for i, j in product(self.objects, repeat=2):
            for f, g in product(self.hom(i, j), repeat=2):
                if f == g:
                    continue
                if not any(self.compose(h, f) == self.compose(h, g) for h in self._out(j)):
                    return False, f"coequalizing arrows: no h after {j!r} with h.{f!r} = h.{g!r}"
        return True, None

    def terminal_object(self):
        for t in self.objects:
            if all(len(self.hom(a, t)) == 1 for a in self.objects):
                return t
        return None

    def __repr__(self) -> str:
        return f"FiniteCategory({self.name}: {len(self.objects)} objects, {len(self.arrows)} arrows)"


def discrete(objects: Sequence[Hashable], name: str = "L") -> FiniteCategory:
    ids = {a: ("id", a) for a in objects}
    return FiniteCategory(objects, {ids[a]: (a, a) for a in objects}, ids, {}, name=name)


def poset(objects: Sequence[Hashable], leq: Iterable[tuple[Hashable, Hashable]], name: str = "P") -> FiniteCategory:
    """The category of a finite poset given by generating relations a <= b (closed transitively)."""
    rel = {(a, a) for a in objects} | set(leq)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise CategoryError(f"relation is not antisymmetric at {a!r}, {b!r}")
    arrows = {(a, b): (a, b) for a, b in sorted(rel, key=lambda t: (objects.index(t[0]), objects.index(t[1])))}
    ids = {a: (a, a) for a in objects}
    return FiniteCategory(
        objects, arrows, ids, lambda g, f: (f[0], g[1]), name=name
    )


def from_monoid(elements: Sequence[Hashable], unit: Hashable, table: dict, obj: Hashable = "*", name: str = "M") -> FiniteCategory:
    """One-object category of a finite monoid; table[(g, f)] = g f."""
    arrows = {e: (obj, obj) for e in elements}

    def comp(g, f):
        if f == unit:
            return g
        if g == unit:
            return f
        return table[(g, f)]

    return FiniteCategory([obj], arrows, {obj: unit}, comp, name=name)


def from_quiver(
    vertices: Sequence[Hashable],
    edges: dict[str, tuple[Hashable, Hashable]],
    relations: Sequence[tuple[Sequence[str], Sequence[str]]] = (),
    name: str = "Q",
    max_length: int = 16,
) -> FiniteCategory:
    """Path category of an acyclic quiver modulo commutativity relations.

    Paths are tuples of edge names listed in the order traversed.  Each
    relation identifies two parallel paths; the congruence they generate is
    closed under pre- and post-composition.  Arrow labels are the
    lexicographically least path in each class (``()`` paths become ``id_v``).
    """
    out_edges: dict = {v: [] for v in vertices}
    for e, (s, t) in edges.items():
        if s not in out_edges or t not in out_edges:
            raise CategoryError(f"edge {e!r} has unknown endpoints")
        out_edges[s].append(e)
    paths: list[tuple[Hashable, Hashable, tuple]] = [(v, v, ()) for v in vertices]
    frontier = [(s, t, (e,)) for e, (s, t) in edges.items()]
    while frontier:
        paths.extend(frontier)
        nxt = []
        for s, t, path in frontier:
            if len(path) >= max_length:
                raise CategoryError("quiver has a cycle (path length cap reached)")
            for e in out_edges[t]:
                nxt.append((s, edges[e][1], path + (e,)))
        frontier = nxt
    ends = {p[2]: (p[0], p[1]) for p in paths}
    for v in vertices:
        ends[("__id", v)] = (v, v)

    # union-find over paths; identities are the empty path per vertex
    nodes = [p[2] if p[2] else ("__id", p[0]) for p in paths]
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def norm(path, v):
        return tuple(path) if path else ("__id", v)

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb, key=_order)] = min(ra, rb, key=_order)

    for lhs, rhs in relations:
        lhs, rhs = tuple(lhs), tuple(rhs)
        if lhs not in ends or rhs not in ends:
            raise CategoryError(f"relation {lhs} = {rhs} uses an unknown path")
        if ends[lhs] != ends[rhs]:
            raise CategoryError(f"relation {lhs} = {rhs} relates non-parallel paths")
        union(lhs, rhs)
    # close the congruence under whiskering
    changed = True
    while changed:
        changed = False
        for a in nodes:
            for b in nodes:
                if a == b or find(a) != find(b) or a[:1] == ("__id",) or b[:1] == ("__id",):
                    continue
                s, t = ends[a]
                for e in out_edges[t]:
                    x, y = a + (e,), b + (e,)
                    if find(x) != find(y):
                        union(x, y)
                        changed = True
                for e, (es, et) in edges.items():
                    if et == s:
                        x, y = (e,) + a, (e,) + b
                        if find(x) != find(y):
                            union(x, y)
                            changed = True

    reps = sorted({find(n) for n in nodes}, key=_order)
    label = {}
    for r in reps:
        label[r] = ("id", r[1]) if r[:1] == ("__id",) else ".".join(r)
    arrows = {label[r]: ends[r] for r in reps}
    ids = {v: label[find(("__id", v))] for v in vertices}
    by_label = {label[r]: r for r in reps}

    def comp(g, f):
        pf, pg = by_label[f], by_label[g]
        pf = () if pf[:1] == ("__id",) else pf
        pg = () if pg[:1] == ("__id",) else pg
        s = arrows[f][0]
        return label[find(norm(pf + pg, s))]

    return FiniteCategory(vertices, arrows, ids, comp, name=name)


def _order(path):
    if path[:1] == ("__id",):
        return (0, str(path[1]))
    return (len(path), ".".join(path))
