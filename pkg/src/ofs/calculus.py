"""Graded tensor calculus on ordered face structures.

Sizes and principality, k-domains and k-codomains with their inclusion
maps, k-tensors with their two coprojections, cuts and splits, and a
checker for the graded tensor laws.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .axioms import validate
from .model import OfsError, OrderedFaceStructure, transitive_closure
from .morphisms import Kind, Morphism, find_iso, inclusion


class InvalidInput(OfsError):
    pass


class InterfaceMismatch(OfsError):
    pass


class CompletionConflict(OfsError):
    pass


class InvalidCut(OfsError):
    pass


# -- size ---------------------------------------------------------------


def size(S: OrderedFaceStructure) -> tuple[int, ...]:
    """``size(S)_n`` counts the n-faces outside the domains of non-loop (n+1)-faces."""
    loops = S.derived.loops
    out = []
    for n in range(S.dim + 1):
        covered = set()
        for a in S.faces(n + 1):
            if a not in loops:
                covered |= S.dot_delta(a)
        out.append(len(set(S.faces(n)) - covered))
    return tuple(out)


def size_less(s: Sequence[int], t: Sequence[int]) -> bool:
    """Reverse-lexicographic comparison, highest dimension first."""
    n = max(len(s), len(t))
    s = list(s) + [0] * (n - len(s))
    t = list(t) + [0] * (n - len(t))
    for k in reversed(range(n)):
        if s[k] != t[k]:
            return s[k] < t[k]
    return False


def is_principal(S: OrderedFaceStructure) -> bool:
    return all(x <= 1 for x in size(S))


# -- domains and codomains ----------------------------------------------


def _has_unfilled_top_loops(S: OrderedFaceStructure) -> bool:
    loops = S.derived.loops
    filled = {S.gamma[a] for a in S.faces() if S.dims[a] > 0 and a not in loops}
    return any(S.dims[l] == S.dim and l not in filled for l in loops)


@lru_cache(maxsize=8192)
def _boundary(S: OrderedFaceStructure, k: int, side: str) -> OrderedFaceStructure:
    loops = S.derived.loops
    tops = set()
    for j in range(k + 1):
        used = set()
        for a in S.faces(j + 1):
            if a in loops:
                continue
            if side == "d":
                used.add(S.gamma[a])
            else:
                used |= S.dot_delta(a)
        tops |= set(S.faces(j)) - used
    sub = S.restrict(S.closure(tops))
    return sub.with_relaxed(_has_unfilled_top_loops(sub))


def k_domain(S: OrderedFaceStructure, k: int) -> tuple[OrderedFaceStructure, Morphism]:
    """The k-domain of ``S`` and its inclusion; the identity when ``k >= dim S``."""
    if k < 0:
        raise InvalidInput(f"negative level {k}")
    if k >= S.dim:
        return S, inclusion(S, S, Kind.ISO)
    D = _boundary(S, k, "d")
    return D, inclusion(D, S)


def k_codomain(S: OrderedFaceStructure, k: int) -> tuple[OrderedFaceStructure, Morphism]:
    """The k-codomain of ``S`` and its inclusion; the identity when ``k >= dim S``."""
    if k < 0:
        raise InvalidInput(f"negative level {k}")
    if k >= S.dim:
        return S, inclusion(S, S, Kind.ISO)
    C = _boundary(S, k, "c")
    return C, inclusion(C, S)


def is_valid_interface(S: OrderedFaceStructure) -> bool:
    return validate(S).valid


# -- tensor -------------------------------------------------------------


@dataclass(frozen=True)
class TensorSquare:
    """``left ⊗_k right`` with the legs from the shared interface."""

    level: int
    left: OrderedFaceStructure
    right: OrderedFaceStructure
    interface: OrderedFaceStructure
    left_leg: Morphism    # interface -> left, the k-codomain inclusion
    right_leg: Morphism   # interface -> right, the k-domain inclusion
    tensor: OrderedFaceStructure
    kappa1: Morphism
    kappa2: Morphism

    @property
    def object(self) -> OrderedFaceStructure:
        return self.tensor


TensorResult = TensorSquare


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def tilde_completions(hyper: OrderedFaceStructure, side: dict[str, int]) -> Iterator[frozenset]:
    """Candidate orders on the faces coming from different components.

    ``hyper`` carries the union of the component orders; ``side`` maps
    each face to 1 (left only), 2 (right only) or 0 (shared). A cross
    pair is ordered when an axiom demands it: along ``<-`` when the
    boundaries are disjoint, and for pencils not related by ``<+`` along
    the unique ``<-`` direction. When ``<-`` goes both ways (two loops on
    one face) either direction may be needed; left before right comes
    first, then the other orientations in turn.
    """
    rel = hyper.derived
    pairs = set(hyper.tilde)
    open_pairs = []
    for k in range(1, hyper.dim + 1):
        left = [a for a in hyper.faces(k) if side[a] == 1]
        right = [b for b in hyper.faces(k) if side[b] == 2]
        for a, b in product(left, right):
            ab, ba = rel.minus(a, b), rel.minus(b, a)
            if not (hyper.theta(a) & hyper.theta(b)):
                if ab:
                    pairs.add((a, b))
                if ba:
                    pairs.add((b, a))
            elif (hyper.dot_theta(a) & hyper.dot_theta(b)) and not rel.perp_plus(a, b):
                if ab and ba:
                    open_pairs.append((a, b))
                elif ab:
                    pairs.add((a, b))
                elif ba:
                    pairs.add((b, a))
    for k in range(2, hyper.dim + 1):
        for a in hyper.faces(k):
            if a not in hyper.empty:
                continue
            gg = hyper.gamma[hyper.gamma[a]]
            for b in hyper.faces(k):
                if side[a] and side[b] and side[a] != side[b] and gg in hyper.iota(b) \
                        and not rel.plus(a, b):
                    pairs.add((a, b))
    for flips in product((False, True), repeat=len(open_pairs)):
        chosen = set(pairs)
        for (a, b), flip in zip(open_pairs, flips):
            chosen.add((b, a) if flip else (a, b))
        out = set()
        for k in range(hyper.dim + 1):
            level = [p for p in chosen if hyper.dims[p[0]] == k]
            out |= transitive_closure(hyper.faces(k), level)
        yield frozenset(out)


def complete_tilde(hyper: OrderedFaceStructure, side: dict[str, int]) -> frozenset:
    """The first candidate of :func:`tilde_completions`."""
    return next(tilde_completions(hyper, side))


def tensor(S: OrderedFaceStructure, S2: OrderedFaceStructure, k: int,
           check: bool = True) -> TensorSquare:
    """The k-tensor of ``S`` and ``S2`` glued along ``c^(k)S ≅ d^(k)S2``.

    Faces of ``S`` keep their names; faces of ``S2`` are renamed onto the
    interface and primed where they would clash.
    """
    C, c_inc = k_codomain(S, k)
    D, d_inc = k_domain(S2, k)
    iso = find_iso(D.plain(), C.plain())
    if iso is None:
        raise InterfaceMismatch(f"c^({k}) of the first and d^({k}) of the second differ")
    taken = set(S.dims)
    rename = {}
    for a in sorted(S2.dims, key=lambda x: (S2.dims[x], x)):
        if a in iso:
            rename[a] = iso[a]
        else:
            rename[a] = _fresh(a, taken)
            taken.add(rename[a])
    R = S2.relabel(rename)
    side = {a: 1 for a in S.dims}
    for a in R.dims:
        side[a] = 0 if a in S.dims else 2
    hyper = OrderedFaceStructure(
        dims={**S.dims, **R.dims},
        gamma={**S.gamma, **R.gamma},
        delta={**S.delta, **R.delta},
        empty={**S.empty, **R.empty},
        tilde=S.tilde | R.tilde,
    )
    hyper = hyper.with_relaxed(_has_unfilled_top_loops(hyper) and (S.relaxed_top or S2.relaxed_top))
    hyper = hyper.with_open(hyper.unfilled_loops() & (S.open_loops | R.open_loops))
    T = None
    for order in tilde_completions(hyper, side):
        cand = hyper.with_tilde(order)
        if T is None:
            T = cand
        if validate(cand).valid:
            T = cand
            break
    else:
        if check:
            raise CompletionConflict(f"tensor fails {validate(T).failed()}")
    kappa1 = Morphism(S, T, {a: a for a in S.dims}, Kind.MONOTONE)
    kappa2 = Morphism(S2, T, rename, Kind.MONOTONE)
    right_leg = Morphism(C, S2, {iso[a]: a for a in D.dims}, Kind.MONOTONE)
    return TensorSquare(k, S, S2, C, c_inc, right_leg, T, kappa1, kappa2)


def tensor_object(S, S2, k) -> OrderedFaceStructure:
    return tensor(S, S2, k).tensor


# -- cuts ---------------------------------------------------------------


@dataclass(frozen=True)
class Cut:
    level: int
    lower: frozenset
    witness: str

    def as_dict(self) -> dict:
        return {"level": self.level, "lower": sorted(self.lower), "witness": self.witness}


def split_parts(S: OrderedFaceStructure, k: int, lower: Iterable[str]):
    """The lower and upper parts for a partition of the faces above ``k``."""
    lower = frozenset(lower)
    upper = frozenset(a for a in S.dims if S.dims[a] > k) - lower
    D, _ = k_domain(S, k)
    C, _ = k_codomain(S, k)
    down = S.restrict(S.closure(lower) | set(D.dims))
    up = S.restrict(S.closure(upper) | set(C.dims))
    # loops on the gluing boundary are filled by the other part
    down = down.with_open(down.unfilled_loops() & (set(k_codomain(down, k)[0].dims) | S.open_loops))
    up = up.with_open(up.unfilled_loops() & (set(k_domain(up, k)[0].dims) | S.open_loops))
    return down, up


def _closed_above(S: OrderedFaceStructure, part: frozenset, k: int) -> bool:
    return all(S.dims[a] <= k or a in part for a in S.closure(part))


def _try_cut(S: OrderedFaceStructure, k: int, lower: frozenset) -> bool:
    down, up = split_parts(S, k, lower)
    if not (validate(down).valid and validate(up).valid):
        return False
    s = size(S)
    if not (size_less(size(down), s) and size_less(size(up), s)):
        return False
    try:
        T = tensor(down, up, k, check=False).tensor
    except OfsError:
        return False
    return T.plain() == S.plain()


def enumerate_cuts(S: OrderedFaceStructure) -> list[Cut]:
    """Every (level, partition) whose split tensors back to ``S`` exactly,
    with both parts valid and strictly smaller."""
    cuts = []
    for k in range(S.dim):
        above = sorted(a for a in S.dims if S.dims[a] > k)
        for r in range(1, len(above)):
            for chosen in combinations(above, r):
                lower = frozenset(chosen)
                upper = frozenset(above) - lower
                if not (_closed_above(S, lower, k) and _closed_above(S, upper, k)):
                    continue
                if _try_cut(S, k, lower):
                    witness = min(lower, key=lambda a: (S.dims[a], a))
                    cuts.append(Cut(k, lower, witness))
    return cuts


def split(S: OrderedFaceStructure, cut: Cut) -> tuple[OrderedFaceStructure, OrderedFaceStructure]:
    if not _closed_above(S, cut.lower, cut.level) or not _try_cut(S, cut.level, cut.lower):
        raise InvalidCut(f"level {cut.level}, lower {sorted(cut.lower)}")
    return split_parts(S, cut.level, cut.lower)


# -- graded tensor laws ---------------------------------------------------


def _same(X: OrderedFaceStructure, Y: OrderedFaceStructure) -> bool:
    return find_iso(X.plain(), Y.plain()) is not None


@lru_cache(maxsize=1 << 16)
def _t(S: OrderedFaceStructure, S2: OrderedFaceStructure, k: int) -> OrderedFaceStructure:
    # the law suite rebuilds the same tensors many times over
    return tensor(S, S2, k).tensor


@lru_cache(maxsize=1 << 16)
def _composable(S, S2, k) -> bool:
    if k >= max(S.dim, S2.dim):
        return False
    return _same(k_codomain(S, k)[0], k_domain(S2, k)[0])


def law_boundaries(S: OrderedFaceStructure) -> list[tuple]:
    """Domain/codomain composition laws for all ``k < l <= dim S``."""
    fails = []
    n = S.dim
    for l in range(1, n + 1):
        Dl, Cl = k_domain(S, l)[0], k_codomain(S, l)[0]
        for k in range(l):
            ck = set(k_codomain(S, k)[0].dims)
            dk = set(k_domain(S, k)[0].dims)
            if set(k_codomain(Dl, k)[0].dims) != ck or set(k_codomain(Cl, k)[0].dims) != ck:
                fails.append(("codomain_law", k, l))
            if set(k_domain(Dl, k)[0].dims) != dk or set(k_domain(Cl, k)[0].dims) != dk:
                fails.append(("domain_law", k, l))
    return fails


def law_units(S: OrderedFaceStructure) -> list[tuple]:
    fails = []
    for k in range(S.dim):
        D = k_domain(S, k)[0]
        C = k_codomain(S, k)[0]
        try:
            if not _same(_t(D, S, k), S):
                fails.append(("left_unit", k))
        except OfsError as e:
            fails.append(("left_unit", k, str(e)))
        try:
            if not _same(_t(S, C, k), S):
                fails.append(("right_unit", k))
        except OfsError as e:
            fails.append(("right_unit", k, str(e)))
    return fails


def law_associativity(S, S2, S3, k: int) -> list[tuple]:
    try:
        left = _t(_t(S, S2, k), S3, k)
        right = _t(S, _t(S2, S3, k), k)
    except OfsError as e:
        return [("associativity", k, str(e))]
    return [] if _same(left, right) else [("associativity", k)]


def law_middle_exchange(R, R2, S, S2, k: int, l: int) -> list[tuple]:
    try:
        left = _t(_t(R, R2, l), _t(S, S2, l), k)
        right = _t(_t(R, S, k), _t(R2, S2, k), l)
    except OfsError as e:
        return [("middle_exchange", k, l, str(e))]
    return [] if _same(left, right) else [("middle_exchange", k, l)]


def law_composite_boundaries(S, S2, l: int) -> list[tuple]:
    """Domains and codomains of ``S ⊗_l S2`` in every dimension."""
    fails = []
    try:
        T = _t(S, S2, l)
    except OfsError as e:
        return [("composite", l, str(e))]
    for k in range(T.dim + 1):
        dT, cT = k_domain(T, k)[0], k_codomain(T, k)[0]
        try:
            if k > l:
                d_exp = _t(k_domain(S, k)[0], k_domain(S2, k)[0], l)
                c_exp = _t(k_codomain(S, k)[0], k_codomain(S2, k)[0], l)
            else:
                d_exp = k_domain(S, k)[0]
                c_exp = k_codomain(S2, k)[0]
        except OfsError as e:
            fails.append(("composite_boundary", k, l, str(e)))
            continue
        if not _same(dT, d_exp):
            fails.append(("composite_domain", k, l))
        if not _same(cT, c_exp):
            fails.append(("composite_codomain", k, l))
    return fails


LAW_FAMILIES = (
    "codomain_law", "domain_law", "left_unit", "right_unit",
    "associativity", "middle_exchange", "composite_domain", "composite_codomain",
)


def check_gt_laws(structures: Sequence[OrderedFaceStructure], max_pairs: int | None = None) -> list[tuple]:
    """Run every law family over ``structures`` and all composable pairs,
    triples and middle-exchange quadruples formed from them."""
    fails: list[tuple] = []
    for S in structures:
        fails += law_boundaries(S)
        fails += law_units(S)
    top = max((S.dim for S in structures), default=0)
    comp = {}
    for k in range(top):
        comp[k] = [(i, j) for i, S in enumerate(structures) for j, S2 in enumerate(structures)
                   if _composable(S, S2, k)]
        for i, j in comp[k][:max_pairs]:
            fails += law_composite_boundaries(structures[i], structures[j], k)
        for i, j in comp[k][:max_pairs]:
            for j2, m in comp[k]:
                if j2 == j:
                    fails += law_associativity(structures[i], structures[j], structures[m], k)
    for l in range(1, top):
        for k in range(l):
            for i, i2 in comp[l][:max_pairs]:
                for j, j2 in comp[l][:max_pairs]:
                    R, R2, S, S2 = (structures[x] for x in (i, i2, j, j2))
                    if _exchange_ok(R, R2, S, S2, k, l):
                        fails += law_middle_exchange(R, R2, S, S2, k, l)
    return fails


def _exchange_ok(R, R2, S, S2, k, l) -> bool:
    try:
        A = _t(R, R2, l)
        B = _t(S, S2, l)
    except OfsError:
        return False
    return _composable(A, B, k) and _composable(R, S, k) and _composable(R2, S2, k)
