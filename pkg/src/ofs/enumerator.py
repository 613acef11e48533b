"""Canonical forms and exhaustive catalogs of small ordered face structures.

Structures are built level by level: the 0-faces come labelled in their
``<+`` order, each higher level is a multiset of (codomain, domain)
descriptors that already pass the globularity clause, and the ``<~``
orders are chosen last, between the pairs forced by the axioms and the
pairs they allow. Every survivor is validated and deduplicated by its
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Iterable, Iterator, Sequence

from .axioms import (
    _globularity_clauses, check_globularity, check_local_discreteness,
    check_loop_filling, validate,
)
from .calculus import is_principal
from .model import OrderedFaceStructure, transitive_closure


# -- canonical form -----------------------------------------------------


def _neighbours(S: OrderedFaceStructure) -> dict[str, list[tuple[str, str]]]:
    nb: dict[str, list[tuple[str, str]]] = {a: [] for a in S.dims}
    for a in S.dims:
        if S.dims[a] == 0:
            continue
        nb[a].append(("g>", S.gamma[a]))
        nb[S.gamma[a]].append(("g<", a))
        if a in S.empty:
            nb[a].append(("e>", S.empty[a]))
            nb[S.empty[a]].append(("e<", a))
        else:
            for x in S.delta[a]:
                nb[a].append(("d>", x))
                nb[x].append(("d<", a))
    for a, b in S.tilde:
        nb[a].append(("t>", b))
        nb[b].append(("t<", a))
    return nb


def _refine(colors: dict[str, int], nb) -> dict[str, int]:
    while True:
        sig = {a: (colors[a], tuple(sorted((r, colors[b]) for r, b in nb[a]))) for a in colors}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {a: ranks[sig[a]] for a in colors}
        if len(ranks) == len(set(colors.values())):
            return new
        colors = new


def _encode(S: OrderedFaceStructure, order: dict[str, int]) -> tuple:
    r = order.__getitem__
    return (
        tuple(sorted((r(a), S.dims[a]) for a in S.dims)),
        tuple(sorted((r(a), r(g)) for a, g in S.gamma.items())),
        tuple(sorted((r(a), tuple(sorted(map(r, v)))) for a, v in S.delta.items() if a not in S.empty)),
        tuple(sorted((r(a), r(u)) for a, u in S.empty.items())),
        tuple(sorted((r(a), r(b)) for a, b in S.tilde)),
    )


def _canonical_order(S: OrderedFaceStructure) -> tuple[tuple, dict[str, int]]:
    nb = _neighbours(S)
    start = {
        a: (S.dims[a], -1 if a in S.empty else len(S.delta.get(a, ())), S.is_loop(a))
        for a in S.dims
    }
    ranks = {s: i for i, s in enumerate(sorted(set(start.values())))}
    colors = _refine({a: ranks[start[a]] for a in S.dims}, nb)
    best: list = [None, None]

    def search(colors: dict[str, int]) -> None:
        cells: dict[int, list[str]] = {}
        for a, c in colors.items():
            cells.setdefault(c, []).append(a)
        split = [c for c in sorted(cells) if len(cells[c]) > 1]
        if not split:
            code = _encode(S, colors)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, dict(colors)
            return
        c = split[0]
        for a in sorted(cells[c]):
            # individualise a: it sorts just before the rest of its cell
            trial = {b: 2 * v + (1 if v == c and b != a else 0) for b, v in colors.items()}
            search(_refine(trial, nb))

    search(colors)
    return best[0], best[1]


def canonical_labelling(S: OrderedFaceStructure) -> tuple[dict[str, str], str]:
    """Canonical names for the faces of ``S`` and the iso-invariant key.

    Faces are renamed ``x<dim>_<i>`` in canonical order; two structures get
    the same key exactly when they are isomorphic (loop-filling exemptions
    included).
    """
    code, colors = _canonical_order(S)
    ordered = sorted(S.dims, key=lambda a: colors[a])
    counter: dict[int, int] = {}
    names = {}
    for a in ordered:
        d = S.dims[a]
        names[a] = f"x{d}_{counter.get(d, 0)}"
        counter[d] = counter.get(d, 0) + 1
    key = repr(code)
    if S.relaxed_top:
        key += "/relaxed"
    if S.open_loops:
        key += "/open:" + ",".join(sorted(names[a] for a in S.open_loops))
    return names, key


def canonical_form(S: OrderedFaceStructure) -> tuple[OrderedFaceStructure, str]:
    """An iso-invariant relabelling of ``S`` and its key string."""
    names, key = canonical_labelling(S)
    return S.relabel(names), key


def canonical_key(S: OrderedFaceStructure) -> str:
    return canonical_form(S)[1]


# -- catalogs -----------------------------------------------------------


def arity(S: OrderedFaceStructure) -> int:
    """Number of faces in the domain of the top face (0 for an empty domain)."""
    tops = S.faces(S.dim)
    if S.dim == 0:
        return 0
    return max(len(S.dot_delta(m)) for m in tops)


@dataclass
class Catalog:
    """Structures bucketed by (dimension, total face count), iso-free."""

    buckets: dict = field(default_factory=dict)
    _keys: set = field(default_factory=set, repr=False)

    def add(self, S: OrderedFaceStructure) -> bool:
        C, key = canonical_form(S)
        if key in self._keys:
            return False
        self._keys.add(key)
        self.buckets.setdefault((C.dim, len(C)), []).append((key, C))
        return True

    def __iter__(self) -> Iterator[OrderedFaceStructure]:
        for b in sorted(self.buckets):
            for _, C in sorted(self.buckets[b], key=lambda p: p[0]):
                yield C

    def __len__(self) -> int:
        return len(self._keys)

    def __contains__(self, S: OrderedFaceStructure) -> bool:
        return canonical_key(S) in self._keys

    def keys(self) -> frozenset:
        return frozenset(self._keys)

    def counts(self) -> dict[tuple[int, int], int]:
        return {b: len(v) for b, v in sorted(self.buckets.items())}

    def by_arity(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for S in self:
            b = (S.dim, arity(S))
            out[b] = out.get(b, 0) + 1
        return dict(sorted(out.items()))

    def filter(self, pred) -> "Catalog":
        cat = Catalog()
        for S in self:
            if pred(S):
                cat.add(S)
        return cat


# -- tilde orders between the forced and the allowed pairs -----------------


def _strict_orders(faces: tuple, allowed: set, forced: set, pencils: list) -> list[frozenset]:
    if not forced <= allowed:
        return []
    optional = sorted(allowed - forced)
    out = []
    for r in range(len(optional) + 1):
        for chosen in combinations(optional, r):
            rel = transitive_closure(faces, forced | set(chosen))
            if not rel <= allowed or (rel & set(optional)) != set(chosen):
                continue
            if all((a, b) in rel or (b, a) in rel for a, b in pencils):
                out.append(rel)
    return out


def tilde_completions(S: OrderedFaceStructure) -> Iterator[OrderedFaceStructure]:
    """Every choice of ``<~`` on the hypergraph of ``S`` meeting the
    disjointness and pencil clauses (``S.tilde`` itself is ignored)."""
    rel = S.derived
    per_level = []
    for k in range(1, S.dim + 1):
        faces = S.faces(k)
        allowed, forced, pencils = set(), set(), []
        for a in faces:
            for b in faces:
                if a == b:
                    continue
                if rel.minus(a, b) and not rel.perp_plus(a, b):
                    allowed.add((a, b))
                if rel.minus(a, b) and not (S.theta(a) & S.theta(b)):
                    forced.add((a, b))
        for a, b in combinations(faces, 2):
            if (S.dot_theta(a) & S.dot_theta(b)) and not rel.perp_plus(a, b):
                pencils.append((a, b))
        for a in faces:
            if a in S.empty and k >= 2:
                gg = S.gamma[S.gamma[a]]
                for b in faces:
                    if gg in S.iota(b) and not rel.plus(a, b):
                        forced.add((a, b))
        options = _strict_orders(faces, allowed, forced, pencils)
        if not options:
            return
        per_level.append(options)
    for choice in product(*per_level):
        yield S.with_tilde(frozenset().union(*choice))


# -- level-by-level generation --------------------------------------------


def _structure(dims, gamma, delta, empty) -> OrderedFaceStructure:
    return OrderedFaceStructure(dims=dict(dims), gamma=dict(gamma), delta=dict(delta),
                                empty=dict(empty), tilde=frozenset())


def _descriptors(dims, gamma, delta, empty, k: int, prune: bool) -> list[tuple]:
    """Candidate (gamma, domain) pairs for a new k-face."""
    lower = sorted(a for a in dims if dims[a] == k - 1)
    out = []
    if k == 1:
        for i, x in enumerate(lower):
            for j, y in enumerate(lower):
                if not prune or i <= j:
                    out.append((y, ("d", (x,))))
        return out
    domains = [("d", c) for r in range(1, len(lower) + 1) for c in combinations(lower, r)]
    domains += [("e", u) for u in sorted(a for a in dims if dims[a] == k - 2)]
    base = _structure(dims, gamma, delta, empty) if prune else None
    for g in lower:
        for dom in domains:
            if prune and _globular_failure(base, g, dom):
                continue
            out.append((g, dom))
    return out


def _globular_failure(base: OrderedFaceStructure, g: str, dom: tuple) -> bool:
    name = "__new__"
    dims = {**base.dims, name: base.dims[g] + 1}
    gamma = {**base.gamma, name: g}
    delta, empty = dict(base.delta), dict(base.empty)
    if dom[0] == "e":
        empty[name] = dom[1]
    else:
        delta[name] = frozenset(dom[1])
    T = _structure(dims, gamma, delta, empty)
    return bool(_globularity_clauses(T, name))


def _add_level(dims, gamma, delta, empty, k: int, chosen: Iterable[tuple]):
    dims, gamma, delta, empty = dict(dims), dict(gamma), dict(delta), dict(empty)
    for i, (g, dom) in enumerate(chosen):
        a = f"f{k}_{i}"
        dims[a] = k
        gamma[a] = g
        if dom[0] == "e":
            empty[a] = dom[1]
        else:
            delta[a] = frozenset(dom[1])
    return dims, gamma, delta, empty


def _zero_chain_ok(dims, gamma, delta, n0: int) -> bool:
    edges = {(next(iter(delta[a])), gamma[a]) for a in dims if dims[a] == 1}
    return all((f"f0_{i}", f"f0_{i + 1}") in edges for i in range(n0 - 1))


def _level_ok(dims, gamma, delta, empty, k: int) -> bool:
    """Clauses settled once level ``k + 1`` is in place: ``<+`` on the
    k-faces is strict and the new domains are ``<+``-discrete."""
    S = _structure(dims, gamma, delta, empty)
    rel = S.derived
    if any(rel.plus(a, a) for a in S.faces(k)):
        return False
    for a in S.faces(k + 1):
        if a not in S.empty:
            for x, y in combinations(sorted(S.delta[a]), 2):
                if rel.perp_plus(x, y):
                    return False
    return True


def _hypergraphs(max_dim: int, max_faces: int, prune: bool,
                 caps: Sequence[int] | None = None) -> Iterator[OrderedFaceStructure]:
    if caps is not None:
        max_dim = min(max_dim, len(caps) - 1)

    def extend(dims, gamma, delta, empty, k):
        yield _structure(dims, gamma, delta, empty)
        if k >= max_dim:
            return
        room = max_faces - len(dims)
        if caps is not None:
            room = min(room, caps[k + 1])
        if room <= 0:
            return
        desc = _descriptors(dims, gamma, delta, empty, k + 1, prune)
        n0 = sum(1 for a in dims if dims[a] == 0)

        def grow(chosen: list, start: int):
            # faces of one level form a multiset: descriptors in non-decreasing order
            if chosen:
                level = _add_level(dims, gamma, delta, empty, k + 1, chosen)
                if prune and not _level_ok(*level, k):
                    return
                if not prune or k > 0 or _zero_chain_ok(*level[:3], n0):
                    yield from extend(*level, k + 1)
            if len(chosen) == room:
                return
            for i in range(start, len(desc)):
                yield from grow(chosen + [desc[i]], i)

        yield from grow([], 0)

    top0 = max_faces if caps is None else min(max_faces, caps[0])
    for n0 in range(1, top0 + 1):
        dims = {f"f0_{i}": 0 for i in range(n0)}
        yield from extend(dims, {}, {}, {}, 0)


def _passes_untilded(S: OrderedFaceStructure) -> bool:
    if not check_globularity(S).passed or not check_local_discreteness(S).passed:
        return False
    if not check_loop_filling(S).passed:
        return False
    rel = S.derived
    if any(rel.plus(a, a) for a in S.dims):
        return False
    return True


def enumerate_valid(max_dim: int, max_faces: int, mode: str = "strict",
                    caps: Sequence[int] | None = None) -> Catalog:
    """Every valid structure of dimension <= ``max_dim`` with at most
    ``max_faces`` faces, one per isomorphism class.

    ``caps[k]``, when given, also bounds the number of k-faces.
    """
    cat = Catalog()
    for H in _hypergraphs(max_dim, max_faces, prune=True, caps=caps):
        if not _passes_untilded(H):
            continue
        for S in tilde_completions(H):
            if validate(S, mode).valid:
                cat.add(S)
    return cat


def _all_strict_orders(faces: tuple) -> list[frozenset]:
    pairs = [(a, b) for a in faces for b in faces if a != b]
    out = []
    for r in range(len(pairs) + 1):
        for chosen in combinations(pairs, r):
            s = set(chosen)
            if transitive_closure(faces, s) == s and not any((b, a) in s for a, b in s):
                out.append(frozenset(s))
    return out


def enumerate_valid_slow(max_dim: int, max_faces: int, mode: str = "strict") -> Catalog:
    """Filter-everything generator: all hypergraph tables, all strict orders."""
    cat = Catalog()
    for H in _hypergraphs(max_dim, max_faces, prune=False):
        levels = [_all_strict_orders(H.faces(k)) for k in range(1, H.dim + 1)]
        for choice in product(*levels):
            S = H.with_tilde(frozenset().union(*choice))
            if validate(S, mode).valid:
                cat.add(S)
    return cat


# -- principal structures ---------------------------------------------------


def _free(S: OrderedFaceStructure, k: int, side: str) -> list[str]:
    loops = S.derived.loops
    used = set()
    for a in S.faces(k + 1):
        if a in loops:
            continue
        if side == "d":
            used.add(S.gamma[a])
        else:
            used |= S.dot_delta(a)
    return sorted(set(S.faces(k)) - used)


def _cap(D: OrderedFaceStructure) -> OrderedFaceStructure | None:
    """Close the pasting diagram ``D`` with a codomain face and a top face."""
    n = D.dim + 1
    src = _free(D, n - 2, "d")
    tgt = _free(D, n - 2, "c")
    if len(tgt) != 1:
        return None
    dims, gamma, delta, empty = dict(D.dims), dict(D.gamma), dict(D.delta), dict(D.empty)
    dims["c"], gamma["c"] = n - 1, tgt[0]
    if src:
        delta["c"] = frozenset(src)
    elif n >= 3:
        base = _free(D, n - 3, "d")
        if len(base) != 1:
            return None
        empty["c"] = base[0]
    else:
        return None
    dims["m"], gamma["m"] = n, "c"
    delta["m"] = frozenset(D.faces(n - 1))
    return OrderedFaceStructure(dims, gamma, delta, empty, D.tilde)


def _bubble(Q: OrderedFaceStructure) -> OrderedFaceStructure:
    """Top face with empty domain on the top face of the principal ``Q``."""
    (u,) = Q.faces(Q.dim)
    n = Q.dim + 2
    dims = {**Q.dims, "c": n - 1, "m": n}
    gamma = {**Q.gamma, "c": u, "m": "c"}
    delta = {**Q.delta, "c": frozenset([u])}
    empty = {**Q.empty, "m": u}
    return OrderedFaceStructure(dims, gamma, delta, empty, Q.tilde)


def _principal_level(dim: int, max_faces: int) -> Iterator[OrderedFaceStructure]:
    if dim == 0:
        yield OrderedFaceStructure({"x": 0}, {}, {}, {}, frozenset())
        return
    if dim == 1:
        if max_faces >= 3:
            yield OrderedFaceStructure({"x": 0, "y": 0, "a": 1}, {"a": "y"},
                                       {"a": frozenset(["x"])}, {}, frozenset())
        return
    for D in enumerate_valid(dim - 1, max_faces - 2):
        if D.dim != dim - 1 or set(D.closure(D.faces(dim - 1))) != set(D.dims):
            continue
        P = _cap(D)
        if P is not None:
            yield P
    for Q in enumerate_principal(dim - 2, max_faces - 2):
        if Q.dim == dim - 2:
            yield _bubble(Q)


def enumerate_principal(dim: int, max_faces: int) -> Catalog:
    """Principal structures of exactly dimension ``dim`` with at most
    ``max_faces`` faces, built by capping pasting diagrams one dimension down."""
    cat = Catalog()
    for H in _principal_level(dim, max_faces):
        if len(H) > max_faces or not _passes_untilded(H):
            continue
        for S in tilde_completions(H):
            if validate(S).valid and is_principal(S):
                cat.add(S)
    return cat


def enumerate_principal_slow(dim: int, max_faces: int) -> Catalog:
    return enumerate_valid(dim, max_faces).filter(lambda S: S.dim == dim and is_principal(S))


@lru_cache(maxsize=None)
def principal_catalog(dim: int, max_faces: int) -> tuple[OrderedFaceStructure, ...]:
    """Cached, immutable view of :func:`enumerate_principal`."""
    return tuple(enumerate_principal(dim, max_faces))
