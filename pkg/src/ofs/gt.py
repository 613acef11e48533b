"""Graded tensor theories, their models, and the omega-category of a model.

A theory instance is a finite-fragment oracle: objects are produced on
demand by size, and every operation (boundaries, tensors, arrows) is
computed when asked. Two instances are provided: finite linear graphs
(``Delta0``) and ordered face structures with local maps (``OfsTheory``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

from . import calculus
from .enumerator import canonical_labelling, enumerate_valid
from .model import OfsError, OrderedFaceStructure
from .morphisms import Kind, Morphism, NotComposable, compose, isomorphic, iter_homs


class BudgetExceeded(OfsError):
    """The free construction did not close within the given budget."""


@dataclass(frozen=True)
class GtSquare:
    """A tensor square ``interface -> left, right -> tensor``."""

    level: int
    left: Any
    right: Any
    interface: Any
    left_leg: Any
    right_leg: Any
    tensor: Any
    kappa1: Any
    kappa2: Any


# -- the theory of finite linear graphs ----------------------------------


@dataclass(frozen=True)
class Graph:
    """A finite directed graph used as the ambient object for ``Delta0``."""

    vertices: tuple
    edges: tuple  # (name, source, target)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, str]], vertices: Iterable[str] = ()) -> "Graph":
        edges = tuple(edges)
        vs = set(vertices) | {e[1] for e in edges} | {e[2] for e in edges}
        return cls(tuple(sorted(vs)), edges)


class Delta0:
    """Objects ``[n]`` (``n`` edges in a row); arrows are vertex maps."""

    name = "Delta0"

    def dim(self, n: int) -> int:
        return 0 if n == 0 else 1

    def identity(self, n: int) -> tuple:
        return tuple(range(n + 1))

    def d(self, n: int, k: int):
        if k >= self.dim(n):
            return n, self.identity(n)
        return 0, (0,)

    def c(self, n: int, k: int):
        if k >= self.dim(n):
            return n, self.identity(n)
        return 0, (n,)

    def tensor(self, n: int, m: int, k: int) -> GtSquare:
        C, cl = self.c(n, k)
        D, dr = self.d(m, k)
        if C != D:
            raise calculus.InterfaceMismatch(f"[{n}] and [{m}] at level {k}")
        if k >= 1:
            return GtSquare(k, n, m, C, cl, dr, n, self.identity(n), self.identity(m))
        return GtSquare(k, n, m, 0, cl, dr, n + m,
                        tuple(range(n + 1)), tuple(n + j for j in range(m + 1)))

    def then(self, f: tuple, g: tuple) -> tuple:
        return tuple(g[i] for i in f)

    def isomorphic(self, n: int, m: int) -> bool:
        return n == m

    def key(self, n: int) -> Hashable:
        return n

    def objects(self, size: int, ambient=None) -> list[int]:
        return [size]

    # ambient: graphs; an arrow [n] -> G is a path of length n
    def homs(self, n: int, G: Graph) -> list[tuple]:
        out = [((v,), ()) for v in G.vertices]
        for _ in range(n):
            out = [(vs + (e[2],), es + (e[0],)) for vs, es in out for e in G.edges if e[1] == vs[-1]]
        return sorted(out)

    def restrict(self, a: tuple, i: tuple) -> tuple:
        vs, es = a
        return tuple(vs[j] for j in i), tuple(es[i[0] + j] for j in range(len(i) - 1))

    def mediate(self, sq: GtSquare, a: tuple, b: tuple) -> tuple:
        if sq.level >= 1:
            return a
        return a[0] + b[0][1:], a[1] + b[1]

    def cell_key(self, n: int, a: tuple) -> Hashable:
        return (n, a)

    def size_bound(self, G: Graph) -> int | None:
        return None


def delta0_instance() -> Delta0:
    return Delta0()


# -- the theory of ordered face structures --------------------------------


class OfsTheory:
    """Ordered face structures with the k-domain, k-codomain and k-tensor
    of the calculus; the ambient category is local maps into a fixed structure."""

    name = "oFs"

    def __init__(self, max_dim: int = 3):
        self.max_dim = max_dim
        self._objects: dict[int, list] = {}

    def dim(self, S: OrderedFaceStructure) -> int:
        return S.dim

    def d(self, S, k):
        return calculus.k_domain(S, k)

    def c(self, S, k):
        return calculus.k_codomain(S, k)

    def tensor(self, S, S2, k) -> calculus.TensorSquare:
        return calculus.tensor(S, S2, k)

    def then(self, f: Morphism, g: Morphism) -> Morphism:
        return compose(f, g)

    def isomorphic(self, S, T) -> bool:
        return isomorphic(S.plain(), T.plain())

    def key(self, S) -> Hashable:
        return canonical_labelling(S)[1]

    def objects(self, size: int, ambient=None) -> list:
        """Valid structures with ``size`` faces; with a loop-free ambient only
        those fitting inside it face-count-wise (local maps into it are injective)."""
        caps = None
        if ambient is not None and not ambient.derived.loops:
            caps = tuple(len(ambient.faces(k)) for k in range(ambient.dim + 1))
        top = size if caps is None else max(size, len(ambient))
        key = (top, caps)
        if key not in self._objects:
            dim = self.max_dim if caps is None else min(self.max_dim, len(caps) - 1)
            self._objects[key] = list(enumerate_valid(dim, top, caps=caps))
        return [S for S in self._objects[key] if len(S) == size]

    def homs(self, S, A) -> list[dict]:
        return sorted(iter_homs(S, A, Kind.LOCAL), key=lambda d: sorted(d.items()))

    def restrict(self, a: dict, i: Morphism) -> dict:
        return {y: a[x] for y, x in i.mapping.items()}

    def mediate(self, sq, a: dict, b: dict) -> dict:
        out = {sq.kappa1.mapping[x]: v for x, v in a.items()}
        for y, v in b.items():
            t = sq.kappa2.mapping[y]
            if out.get(t, v) != v:
                raise NotComposable(f"maps disagree on {t}")
            out[t] = v
        return out

    def cell_key(self, S, a: dict) -> Hashable:
        names, key = canonical_labelling(S)
        return (key, tuple(sorted((names[x], v) for x, v in a.items())))

    def size_bound(self, A) -> int | None:
        # local maps into a loop-free structure are injective
        return None if A.derived.loops else len(A)


def ofs_instance(max_dim: int = 3) -> OfsTheory:
    return OfsTheory(max_dim)


# -- generic law suite ----------------------------------------------------


def check_laws(inst, objects: Sequence) -> list[tuple]:
    """The graded tensor laws on ``objects`` and every composable tuple
    formed from them, phrased through the instance operations only."""
    same = inst.isomorphic
    fails: list[tuple] = []

    def comp(X, Y, k):
        if k >= max(inst.dim(X), inst.dim(Y)):
            return False
        return same(inst.c(X, k)[0], inst.d(Y, k)[0])

    def tens(X, Y, k):
        return inst.tensor(X, Y, k).tensor

    for X in objects:
        n = inst.dim(X)
        for l in range(1, n + 1):
            Dl, Cl = inst.d(X, l)[0], inst.c(X, l)[0]
            for k in range(l):
                if not (same(inst.c(Dl, k)[0], inst.c(X, k)[0]) and same(inst.c(Cl, k)[0], inst.c(X, k)[0])):
                    fails.append(("codomain_law", X, k, l))
                if not (same(inst.d(Dl, k)[0], inst.d(X, k)[0]) and same(inst.d(Cl, k)[0], inst.d(X, k)[0])):
                    fails.append(("domain_law", X, k, l))
        for k in range(n):
            if not same(tens(inst.d(X, k)[0], X, k), X):
                fails.append(("left_unit", X, k))
            if not same(tens(X, inst.c(X, k)[0], k), X):
                fails.append(("right_unit", X, k))
    top = max((inst.dim(X) for X in objects), default=0)
    for k in range(top):
        pairs = [(X, Y) for X in objects for Y in objects if comp(X, Y, k)]
        for X, Y in pairs:
            T = tens(X, Y, k)
            for j in range(inst.dim(T) + 1):
                if j > k:
                    de = tens(inst.d(X, j)[0], inst.d(Y, j)[0], k)
                    ce = tens(inst.c(X, j)[0], inst.c(Y, j)[0], k)
                else:
                    de, ce = inst.d(X, j)[0], inst.c(Y, j)[0]
                if not same(inst.d(T, j)[0], de):
                    fails.append(("composite_domain", X, Y, j, k))
                if not same(inst.c(T, j)[0], ce):
                    fails.append(("composite_codomain", X, Y, j, k))
            for Y2, Z in pairs:
                if Y2 is Y or same(Y2, Y):
                    if not same(tens(tens(X, Y, k), Z, k), tens(X, tens(Y, Z, k), k)):
                        fails.append(("associativity", X, Y, Z, k))
    for l in range(1, top):
        lp = [(X, Y) for X in objects for Y in objects if comp(X, Y, l)]
        for k in range(l):
            for R, R2 in lp:
                for S, S2 in lp:
                    if not (comp(R, S, k) and comp(R2, S2, k)):
                        continue
                    A, B = tens(R, R2, l), tens(S, S2, l)
                    if not comp(A, B, k):
                        continue
                    if not same(tens(A, B, k), tens(tens(R, S, k), tens(R2, S2, k), l)):
                        fails.append(("middle_exchange", R, R2, S, S2, k, l))
    return fails


# -- models ---------------------------------------------------------------


@dataclass
class FiniteModel:
    """A contravariant assignment: ``value(X)`` is a finite list and
    ``act(f, y)`` pulls an element of ``value(target f)`` back along ``f``."""

    value: Callable[[Any], list]
    act: Callable[[Any, Any], Any]
    freeze: Callable[[Any], Hashable] = field(default=lambda y: y)


def hom_model(probe: OrderedFaceStructure, kind: Kind | str = Kind.LOCAL) -> FiniteModel:
    """``X |-> Hom(X, probe)``, acting by precomposition."""
    kind = Kind(kind)

    def value(X):
        return [dict(m) for m in iter_homs(X, probe, kind)]

    def act(f: Morphism, y: dict) -> dict:
        return {a: y[b] for a, b in f.mapping.items()}

    return FiniteModel(value, act, lambda y: tuple(sorted(y.items())))


def check_is_model(m: FiniteModel, squares: Iterable) -> list[tuple]:
    """Each tensor square must go to a pullback of finite sets: restriction
    along the coprojections is a bijection onto the matching pairs."""
    fails = []
    for i, sq in enumerate(squares):
        fr = m.freeze
        pairs = set()
        for g in m.value(sq.left):
            gi = fr(m.act(sq.left_leg, g))
            for h in m.value(sq.right):
                if fr(m.act(sq.right_leg, h)) == gi:
                    pairs.add((fr(g), fr(h)))
        images = [(fr(m.act(sq.kappa1, t)), fr(m.act(sq.kappa2, t))) for t in m.value(sq.tensor)]
        if len(set(images)) != len(images) or set(images) != pairs:
            fails.append((i, len(images), len(pairs)))
    return fails


# -- the omega-category of a model ------------------------------------------


@dataclass(frozen=True)
class GtCell:
    shape: Any
    arrow: Any
    key: Hashable

    def __eq__(self, other):
        return isinstance(other, GtCell) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


class OmegaCategory:
    """Cells ``(X, a: M(X) -> A)`` up to iso of ``X``; an n-cell has ``dim X <= n``."""

    def __init__(self, inst, ambient, cells: list[GtCell], n_max: int):
        self.inst = inst
        self.ambient = ambient
        self.n_max = n_max
        self._by_key = {c.key: c for c in cells}
        self._cells = sorted(cells, key=lambda c: repr(c.key))

    def cells(self, n: int | None = None) -> list[GtCell]:
        n = self.n_max if n is None else n
        return [c for c in self._cells if self.inst.dim(c.shape) <= n]

    def count(self, n: int | None = None) -> int:
        return len(self.cells(n))

    def make(self, X, a) -> GtCell:
        return GtCell(X, a, self.inst.cell_key(X, a))

    def domain(self, c: GtCell, k: int) -> GtCell:
        Y, i = self.inst.d(c.shape, k)
        return self.make(Y, self.inst.restrict(c.arrow, i))

    def codomain(self, c: GtCell, k: int) -> GtCell:
        Y, i = self.inst.c(c.shape, k)
        return self.make(Y, self.inst.restrict(c.arrow, i))

    def composable(self, a: GtCell, b: GtCell, k: int) -> bool:
        return self.codomain(a, k) == self.domain(b, k)

    def compose(self, a: GtCell, b: GtCell, k: int) -> GtCell:
        if not self.composable(a, b, k):
            raise NotComposable(f"codomain and domain differ at level {k}")
        sq = self.inst.tensor(a.shape, b.shape, k)
        return self.make(sq.tensor, self.inst.mediate(sq, a.arrow, b.arrow))

    def contains(self, c: GtCell) -> bool:
        return c.key in self._by_key

    def check_laws(self, max_tuples: int = 2000) -> list[tuple]:
        """Globular identities, closure, units, associativity and interchange
        on the enumerated cells."""
        fails = []
        cs = self.cells()
        top = self.n_max
        for c in cs:
            for l in range(top + 1):
                dl, cl = self.domain(c, l), self.codomain(c, l)
                if self.domain(dl, l) != dl or self.codomain(cl, l) != cl:
                    fails.append(("idempotent", c.key, l))
                for k in range(l):
                    if self.domain(dl, k) != self.domain(c, k) or self.domain(cl, k) != self.domain(c, k):
                        fails.append(("dd", c.key, k, l))
                    if self.codomain(dl, k) != self.codomain(c, k) or self.codomain(cl, k) != self.codomain(c, k):
                        fails.append(("cc", c.key, k, l))
            for k in range(top):
                if self.compose(self.domain(c, k), c, k) != c or self.compose(c, self.codomain(c, k), k) != c:
                    fails.append(("unit", c.key, k))
        n = 0
        for k in range(top):
            pairs = [(a, b) for a in cs for b in cs if self.composable(a, b, k)]
            for a, b in pairs:
                ab = self.compose(a, b, k)
                if not self.contains(ab):
                    fails.append(("closure", a.key, b.key, k))
                for b2, c in pairs:
                    if b2 != b:
                        continue
                    n += 1
                    if n > max_tuples:
                        break
                    if self.compose(ab, c, k) != self.compose(a, self.compose(b, c, k), k):
                        fails.append(("associativity", a.key, b.key, c.key, k))
        for l in range(1, top + 1):
            lp = [(a, b) for a in cs for b in cs if self.composable(a, b, l)]
            for k in range(l):
                for a, a2 in lp:
                    for b, b2 in lp:
                        if not (self.composable(a, b, k) and self.composable(a2, b2, k)):
                            continue
                        left = self.compose(self.compose(a, a2, l), self.compose(b, b2, l), k)
                        right = self.compose(self.compose(a, b, k), self.compose(a2, b2, k), l)
                        if left != right:
                            fails.append(("interchange", a.key, b.key, k, l))
        return fails


def omega_category_of(inst, ambient, n_max: int, budget: int = 64) -> OmegaCategory:
    """Cells of dimension <= ``n_max``: every arrow from every object into
    ``ambient``, one object per iso class.

    Objects are visited by increasing size; ``budget`` caps the sizes
    tried when the instance cannot bound them. A construction still
    producing cells at the cap raises :class:`BudgetExceeded`.
    """
    bound = inst.size_bound(ambient)
    cells: dict = {}
    size = 0
    while True:
        if bound is not None and size > bound:
            break
        if size > budget:
            raise BudgetExceeded(f"cells of size {size - 1} still present")
        found = 0
        for X in inst.objects(size, ambient):
            if inst.dim(X) > n_max:
                continue
            for a in inst.homs(X, ambient):
                key = inst.cell_key(X, a)
                if key not in cells:
                    cells[key] = GtCell(X, a, key)
                    found += 1
        if bound is None and found == 0 and size > 0:
            break
        size += 1
    return OmegaCategory(inst, ambient, list(cells.values()), n_max)

