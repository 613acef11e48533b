"""Hypergraphs and ordered face structures.

Faces are opaque string names, unique across the whole structure. Empty
faces are never stored: a face whose domain is an empty face ``1_u``
records ``u`` in :attr:`OrderedFaceStructure.empty` instead of a domain
set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple


class OfsError(ValueError):
    """Base class for structural errors."""


class DanglingName(OfsError):
    pass


class EmptyDelta(OfsError):
    pass


class DeltaMixedEmptyAndReal(OfsError):
    pass


class DuplicateName(OfsError):
    pass


class UnknownFace(OfsError):
    pass


class UnknownOperationAtDim0(OfsError):
    pass


class MixedDimensions(OfsError):
    pass


class EmptyFace(NamedTuple):
    """The empty face ``1_u`` sitting on the face ``u``."""

    base: str

    def __repr__(self) -> str:
        return f"1_{self.base}"


def transitive_closure(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> frozenset:
    """Transitive closure by depth-first search from every node."""
    succ: dict[str, set[str]] = {n: set() for n in nodes}
    for a, b in edges:
        succ.setdefault(a, set()).add(b)
        succ.setdefault(b, set())
    out = set()
    for start in succ:
        seen: set[str] = set()
        stack = list(succ[start])
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(succ[v])
        out.update((start, v) for v in seen)
    return frozenset(out)


def transitive_closure_matrix(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> frozenset:
    """Transitive closure by repeated boolean matrix squaring."""
    import numpy as np

    order = sorted(set(nodes) | {x for e in edges for x in e})
    if not order:
        return frozenset()
    index = {n: i for i, n in enumerate(order)}
    m = np.zeros((len(order), len(order)), dtype=bool)
    for a, b in edges:
        m[index[a], index[b]] = True
    while True:
        nxt = m | ((m.astype(np.int64) @ m.astype(np.int64)) > 0)
        if (nxt == m).all():
            break
        m = nxt
    return frozenset((order[i], order[j]) for i, j in zip(*np.nonzero(m)))


@dataclass(frozen=True)
class DerivedRelations:
    lower_minus: frozenset
    lower_plus: frozenset
    loops: frozenset

    def minus(self, a: str, b: str) -> bool:
        return (a, b) in self.lower_minus

    def plus(self, a: str, b: str) -> bool:
        return (a, b) in self.lower_plus

    def perp_minus(self, a: str, b: str) -> bool:
        return (a, b) in self.lower_minus or (b, a) in self.lower_minus

    def perp_plus(self, a: str, b: str) -> bool:
        return (a, b) in self.lower_plus or (b, a) in self.lower_plus


@dataclass(frozen=True, eq=False)
class OrderedFaceStructure:
    """A finite ordered face structure.

    With ``relaxed_top`` set it is an interface structure whose
    top-dimensional loops may be unfilled; ``open_loops`` names further
    loops left unfilled because they sit on a gluing boundary (the parts
    produced by a split).
    """

    dims: Mapping[str, int]
    gamma: Mapping[str, str]
    delta: Mapping[str, frozenset]
    empty: Mapping[str, str]
    tilde: frozenset
    relaxed_top: bool = False
    open_loops: frozenset = frozenset()
    _by_dim: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        by_dim: dict[int, list[str]] = {}
        for name, d in self.dims.items():
            by_dim.setdefault(d, []).append(name)
        object.__setattr__(
            self, "_by_dim", {d: tuple(sorted(v)) for d, v in sorted(by_dim.items())}
        )

    # -- basic queries -------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    def faces(self, k: int | None = None) -> tuple[str, ...]:
        if k is None:
            return tuple(n for d in self._by_dim for n in self._by_dim[d])
        return self._by_dim.get(k, ())

    def __contains__(self, name: object) -> bool:
        return name in self.dims

    def __len__(self) -> int:
        return len(self.dims)

    def dim_of(self, a: str) -> int:
        try:
            return self.dims[a]
        except KeyError:
            raise UnknownFace(a) from None

    def _check_positive(self, a: str) -> None:
        if self.dim_of(a) == 0:
            raise UnknownOperationAtDim0(a)

    def gamma_of(self, a: str | EmptyFace) -> str:
        if isinstance(a, EmptyFace):
            return a.base
        self._check_positive(a)
        return self.gamma[a]

    def delta_of(self, a: str | EmptyFace) -> frozenset:
        """The domain of ``a`` as a set of faces (possibly ``{1_x}``)."""
        if isinstance(a, EmptyFace):
            return frozenset([a.base])
        self._check_positive(a)
        if a in self.empty:
            return frozenset([EmptyFace(self.empty[a])])
        return self.delta[a]

    def dot_delta(self, a: str) -> frozenset:
        self._check_positive(a)
        return frozenset() if a in self.empty else self.delta[a]

    def theta(self, a: str) -> frozenset:
        return self.delta_of(a) | {self.gamma_of(a)}

    def dot_theta(self, a: str) -> frozenset:
        return self.dot_delta(a) | {self.gamma_of(a)}

    def is_loop(self, a: str) -> bool:
        if self.dim_of(a) == 0 or a in self.empty:
            return False
        return self.delta[a] == frozenset([self.gamma[a]])

    def dot_delta_nonloop(self, a: str) -> frozenset:
        return frozenset(x for x in self.dot_delta(a) if not self.is_loop(x))

    def iota(self, a: str) -> frozenset:
        """Internal faces: gamma of the non-loop domain meets its delta."""
        dom = self.dot_delta_nonloop(a)
        gammas = {self.gamma_of(x) for x in dom}
        deltas: set = set()
        for x in dom:
            deltas |= self.delta_of(x)
        return frozenset(gammas & deltas)

    def tilde_at(self, k: int) -> frozenset:
        return frozenset(p for p in self.tilde if self.dims[p[0]] == k)

    def tilde_less(self, a: str, b: str) -> bool:
        return (a, b) in self.tilde

    def tilde_perp(self, a: str, b: str) -> bool:
        return (a, b) in self.tilde or (b, a) in self.tilde

    # -- derived relations ---------------------------------------------

    @cached_property
    def derived(self) -> DerivedRelations:
        return derive(self)

    @cached_property
    def key(self) -> tuple:
        """Exact (label-sensitive) identity of the structure."""
        return (
            tuple(sorted(self.dims.items())),
            tuple(sorted(self.gamma.items())),
            tuple(sorted((a, tuple(sorted(v))) for a, v in self.delta.items())),
            tuple(sorted(self.empty.items())),
            tuple(sorted(self.tilde)),
            self.relaxed_top,
            tuple(sorted(self.open_loops)),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedFaceStructure):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        counts = ",".join(str(len(self.faces(k))) for k in range(self.dim + 1))
        return f"<OFS dim={self.dim} faces=({counts})>"

    # -- constructions -------------------------------------------------

    def closure(self, names: Iterable[str]) -> frozenset:
        """Downward closure under gamma, dot-delta and empty-face bases."""
        out: set[str] = set()
        stack = list(names)
        while stack:
            a = stack.pop()
            if a in out:
                continue
            self.dim_of(a)
            out.add(a)
            if self.dims[a] > 0:
                stack.append(self.gamma[a])
                if a in self.empty:
                    stack.append(self.empty[a])
                else:
                    stack.extend(self.delta[a])
        return frozenset(out)

    def restrict(self, names: Iterable[str], relaxed_top: bool = False) -> "OrderedFaceStructure":
        """Substructure on ``names`` (must be closed) with inherited order."""
        keep = frozenset(names)
        return OrderedFaceStructure(
            dims={a: self.dims[a] for a in keep},
            gamma={a: g for a, g in self.gamma.items() if a in keep},
            delta={a: v for a, v in self.delta.items() if a in keep},
            empty={a: u for a, u in self.empty.items() if a in keep},
            tilde=frozenset(p for p in self.tilde if p[0] in keep and p[1] in keep),
            relaxed_top=relaxed_top,
        )

    def relabel(self, mapping: Mapping[str, str]) -> "OrderedFaceStructure":
        """Rename faces along the injective ``mapping`` (missing names kept)."""
        r = lambda a: mapping.get(a, a)  # noqa: E731
        return OrderedFaceStructure(
            dims={r(a): d for a, d in self.dims.items()},
            gamma={r(a): r(g) for a, g in self.gamma.items()},
            delta={r(a): frozenset(map(r, v)) for a, v in self.delta.items()},
            empty={r(a): r(u) for a, u in self.empty.items()},
            tilde=frozenset((r(a), r(b)) for a, b in self.tilde),
            relaxed_top=self.relaxed_top,
            open_loops=frozenset(map(r, self.open_loops)),
        )

    def _same_tables(self, new: "OrderedFaceStructure") -> "OrderedFaceStructure":
        # <-, <+ and loops only read the tables, so a cached copy stays good
        if "derived" in self.__dict__:
            new.__dict__["derived"] = self.__dict__["derived"]
        return new

    def with_tilde(self, tilde: Iterable[tuple[str, str]]) -> "OrderedFaceStructure":
        return self._same_tables(OrderedFaceStructure(
            dims=self.dims, gamma=self.gamma, delta=self.delta, empty=self.empty,
            tilde=frozenset(tilde), relaxed_top=self.relaxed_top, open_loops=self.open_loops,
        ))

    def with_relaxed(self, relaxed: bool) -> "OrderedFaceStructure":
        if relaxed == self.relaxed_top:
            return self
        return self._same_tables(OrderedFaceStructure(
            dims=self.dims, gamma=self.gamma, delta=self.delta, empty=self.empty,
            tilde=self.tilde, relaxed_top=relaxed, open_loops=self.open_loops,
        ))

    def with_open(self, loops: Iterable[str]) -> "OrderedFaceStructure":
        loops = frozenset(loops)
        if loops == self.open_loops:
            return self
        return self._same_tables(OrderedFaceStructure(
            dims=self.dims, gamma=self.gamma, delta=self.delta, empty=self.empty,
            tilde=self.tilde, relaxed_top=self.relaxed_top, open_loops=loops,
        ))

    def plain(self) -> "OrderedFaceStructure":
        """The same tables with every loop-filling exemption dropped."""
        return self.with_relaxed(False).with_open(())

    def unfilled_loops(self) -> frozenset:
        loops = self.derived.loops
        filled = {self.gamma[a] for a in self.dims if self.dims[a] > 0 and a not in loops}
        return frozenset(loops - filled)


def derive(S: OrderedFaceStructure, closure=transitive_closure) -> DerivedRelations:
    """Compute the orders ``<-`` and ``<+`` and the loop set of ``S``."""
    loops = frozenset(a for a in S.dims if S.is_loop(a))
    minus_edges = []
    plus_edges = []
    for k in range(1, S.dim + 1):
        level = S.faces(k)
        for a in level:
            g = S.gamma[a]
            for b in level:
                if g in S.dot_delta(b):
                    minus_edges.append((a, b))
    for alpha in S.dims:
        if S.dims[alpha] == 0 or alpha in loops:
            continue
        b = S.gamma[alpha]
        for a in S.dot_delta(alpha):
            if a != b:
                plus_edges.append((a, b))
    names = list(S.dims)
    return DerivedRelations(
        lower_minus=closure(names, minus_edges),
        lower_plus=closure(names, plus_edges),
        loops=loops,
    )


def one_equal(S: OrderedFaceStructure, A: Iterable, B: Iterable) -> bool:
    """``A`` and ``B`` agree after padding with empty faces on their
    real faces' boundaries."""
    A, B = frozenset(A), frozenset(B)
    dims = set()
    for x in A | B:
        if isinstance(x, EmptyFace):
            dims.add(S.dim_of(x.base) + 1)
        else:
            dims.add(S.dim_of(x))
    if len(dims) > 1:
        raise MixedDimensions(sorted(map(str, A | B)))

    def pad(X: frozenset) -> frozenset:
        extra = set()
        for x in X:
            if isinstance(x, str) and S.dims[x] > 0:
                extra.update(EmptyFace(u) for u in S.theta(x) if isinstance(u, str))
        return X | extra

    return pad(A) == pad(B)


def build(
    faces: Mapping[int, Iterable[str]],
    gamma: Mapping[str, str] | None = None,
    delta: Mapping[str, object] | None = None,
    tilde: Iterable[tuple[str, str]] = (),
    relaxed_top: bool = False,
) -> OrderedFaceStructure:
    """Build a well-formed structure from raw tables.

    ``delta`` values are iterables of face names, a single name (for
    1-faces), or ``{"empty": u}`` / :class:`EmptyFace` for ``{1_u}``.
    Axiom validity is not checked here.
    """
    gamma = dict(gamma or {})
    delta = dict(delta or {})
    dims: dict[str, int] = {}
    for k, names in faces.items():
        k = int(k)
        for n in names:
            if n in dims:
                raise DuplicateName(n)
            dims[str(n)] = k

    def known(n: str, where: str) -> str:
        if n not in dims:
            raise DanglingName(f"{where}: {n!r}")
        return n

    g_out: dict[str, str] = {}
    d_out: dict[str, frozenset] = {}
    e_out: dict[str, str] = {}
    for n in list(gamma) + list(delta):
        known(n, "table key")
    for a, k in dims.items():
        if k == 0:
            if a in gamma or a in delta:
                raise UnknownOperationAtDim0(a)
            continue
        if a not in gamma:
            raise DanglingName(f"gamma missing for {a!r}")
        g = known(gamma[a], f"gamma({a})")
        if dims[g] != k - 1:
            raise MixedDimensions(f"gamma({a}) = {g}")
        g_out[a] = g
        if a not in delta:
            raise EmptyDelta(a)
        raw = delta[a]
        base = None
        if isinstance(raw, EmptyFace):
            base = raw.base
        elif isinstance(raw, Mapping):
            if set(raw) != {"empty"}:
                raise DanglingName(f"delta({a}): bad entry {raw!r}")
            base = raw["empty"]
        if base is not None:
            known(base, f"delta({a})")
            if k == 1 or dims[base] != k - 2:
                raise MixedDimensions(f"delta({a}) = 1_{base}")
            e_out[a] = base
            continue
        items = [raw] if isinstance(raw, str) else list(raw)
        if not items:
            raise EmptyDelta(a)
        real = set()
        for x in items:
            if isinstance(x, (EmptyFace, Mapping)):
                raise DeltaMixedEmptyAndReal(a)
            known(x, f"delta({a})")
            if dims[x] != k - 1:
                raise MixedDimensions(f"delta({a}) contains {x}")
            real.add(x)
        if k == 1 and len(real) != 1:
            raise OfsError(f"delta of 1-face {a!r} must be a single 0-face")
        d_out[a] = frozenset(real)
    pairs = set()
    for a, b in tilde:
        known(a, "tilde")
        known(b, "tilde")
        if dims[a] != dims[b]:
            raise MixedDimensions(f"tilde pair ({a}, {b})")
        pairs.add((a, b))
    if not any(k == 0 for k in dims.values()):
        raise EmptyDelta("no 0-faces")
    return OrderedFaceStructure(
        dims=dims, gamma=g_out, delta=d_out, empty=e_out,
        tilde=frozenset(pairs), relaxed_top=relaxed_top,
    )
