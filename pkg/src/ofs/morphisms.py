"""Morphisms of ordered face structures: checking, composing, enumerating.

A morphism stores its action on non-empty faces only; empty faces go
along, ``1_u -> 1_f(u)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping

from .model import OrderedFaceStructure


class MorphismError(ValueError):
    pass


class DimensionMismatch(MorphismError):
    pass


class NotComposable(MorphismError):
    pass


class Kind(str, Enum):
    HYPER = "hyper"
    MONOTONE = "monotone"
    LOCAL = "local"
    ISO = "iso"


_MEET = {
    frozenset([Kind.HYPER]): Kind.HYPER,
    frozenset([Kind.MONOTONE]): Kind.MONOTONE,
    frozenset([Kind.LOCAL]): Kind.LOCAL,
    frozenset([Kind.ISO]): Kind.ISO,
    frozenset([Kind.ISO, Kind.MONOTONE]): Kind.MONOTONE,
    frozenset([Kind.ISO, Kind.LOCAL]): Kind.LOCAL,
}


def meet(k1: Kind, k2: Kind) -> Kind:
    return _MEET.get(frozenset([Kind(k1), Kind(k2)]), Kind.HYPER)


@dataclass(frozen=True, eq=False)
class Morphism:
    source: OrderedFaceStructure
    target: OrderedFaceStructure
    mapping: Mapping[str, str]
    kind: Kind = Kind.HYPER

    def __call__(self, a: str) -> str:
        return self.mapping[a]

    def image(self) -> frozenset:
        return frozenset(self.mapping.values())

    @property
    def key(self) -> tuple:
        return (self.source.key, self.target.key, tuple(sorted(self.mapping.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{b}" for a, b in sorted(self.mapping.items()))
        return f"Morphism({body})"


def identity(S: OrderedFaceStructure) -> Morphism:
    return Morphism(S, S, {a: a for a in S.dims}, Kind.ISO)


def inclusion(sub: OrderedFaceStructure, S: OrderedFaceStructure, kind: Kind = Kind.MONOTONE) -> Morphism:
    return Morphism(sub, S, {a: a for a in sub.dims}, kind)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """Diagrammatic composite ``f;g`` (first ``f``, then ``g``)."""
    if f.target != g.source:
        raise NotComposable("target of the first map differs from the source of the second")
    return Morphism(f.source, g.target, {a: g.mapping[b] for a, b in f.mapping.items()},
                    meet(f.kind, g.kind))


# -- clause checks ------------------------------------------------------


def _hyper_witnesses(S, T, m) -> list[tuple]:
    out = []
    for a in S.dims:
        if a not in m:
            out.append(("unassigned", a))
            continue
        t = m[a]
        if t not in T.dims or T.dims[t] != S.dims[a]:
            out.append(("dimension", a, t))
            continue
        if S.dims[a] == 0:
            continue
        if m.get(S.gamma[a]) != T.gamma[t]:
            out.append(("gamma", a))
        if (a in S.empty) != (t in T.empty):
            out.append(("delta", a))
        elif a in S.empty:
            if m.get(S.empty[a]) != T.empty[t]:
                out.append(("delta", a))
        else:
            img = [m.get(x) for x in S.delta[a]]
            if len(set(img)) != len(img) or set(img) != set(T.delta[t]):
                out.append(("delta", a))
    return out


def _monotone_witnesses(S, T, m) -> list[tuple]:
    return [("tilde", a, b) for a, b in sorted(S.tilde) if (m[a], m[b]) not in T.tilde]


def _local_witnesses(S, T, m) -> list[tuple]:
    out = []
    for a in S.dims:
        if S.dims[a] < 2 or a in S.empty:
            continue
        dom = sorted(S.delta[a])
        for x in dom:
            for y in dom:
                if x != y and ((x, y) in S.tilde) != ((m[x], m[y]) in T.tilde):
                    out.append(("local_order", a, x, y))
    return out


def _iso_witnesses(S, T, m) -> list[tuple]:
    out = []
    if len(set(m.values())) != len(m) or len(m) != len(T.dims):
        out.append(("not_bijective",))
        return out
    inv = {b: a for a, b in m.items()}
    for a, b in sorted(T.tilde):
        if (inv[a], inv[b]) not in S.tilde:
            out.append(("tilde_reflect", a, b))
    return out


def morphism_witnesses(S: OrderedFaceStructure, T: OrderedFaceStructure,
                       mapping: Mapping[str, str], kind: Kind | str) -> list[tuple]:
    kind = Kind(kind)
    out = _hyper_witnesses(S, T, mapping)
    if out:
        return out
    if kind in (Kind.MONOTONE, Kind.ISO):
        out += _monotone_witnesses(S, T, mapping)
    if kind in (Kind.LOCAL, Kind.ISO):
        out += _local_witnesses(S, T, mapping)
    if kind == Kind.ISO:
        out += _iso_witnesses(S, T, mapping)
    return out


def check_morphism(f: Morphism, kind: Kind | str) -> list[tuple]:
    """Witnesses of every violated clause; an empty list means ``f`` is of ``kind``."""
    for a, t in f.mapping.items():
        if a in f.source.dims and t in f.target.dims and f.source.dims[a] != f.target.dims[t]:
            raise DimensionMismatch(f"{a} -> {t}")
    return morphism_witnesses(f.source, f.target, f.mapping, kind)


def is_morphism(f: Morphism, kind: Kind | str) -> bool:
    return not check_morphism(f, kind)


# -- enumeration --------------------------------------------------------


def iter_homs(S: OrderedFaceStructure, T: OrderedFaceStructure, kind: Kind | str = Kind.HYPER,
              fixed: Mapping[str, str] | None = None) -> Iterator[dict]:
    """Yield every mapping ``S -> T`` of the given kind.

    Faces are assigned top-down so that each assignment forces gamma and
    constrains the domain of the lower faces; ``fixed`` pins some images.
    """
    kind = Kind(kind)
    if kind == Kind.ISO and (len(S.dims) != len(T.dims)):
        return
    order = sorted(S.dims, key=lambda a: (-S.dims[a], a))
    parents_gamma: dict[str, list[str]] = {}
    parents_delta: dict[str, list[str]] = {}
    parents_empty: dict[str, list[str]] = {}
    for a in S.dims:
        if S.dims[a] == 0:
            continue
        parents_gamma.setdefault(S.gamma[a], []).append(a)
        if a in S.empty:
            parents_empty.setdefault(S.empty[a], []).append(a)
        else:
            for x in S.delta[a]:
                parents_delta.setdefault(x, []).append(a)
    fixed = dict(fixed or {})
    m: dict[str, str] = {}
    used: set[str] = set()
    inverse: dict[str, str] = {}

    def candidates(a: str) -> list[str]:
        cands = None
        for p in parents_gamma.get(a, ()):
            g = T.gamma[m[p]]
            cands = [g] if cands is None or g in cands else []
        for p in parents_empty.get(a, ()):
            tp = m[p]
            if tp not in T.empty:
                return []
            u = T.empty[tp]
            cands = [u] if cands is None or u in cands else []
        for p in parents_delta.get(a, ()):
            tp = m[p]
            if tp in T.empty:
                return []
            taken = {m[x] for x in S.delta[p] if x in m}
            allowed = [t for t in sorted(T.delta[tp]) if t not in taken]
            cands = allowed if cands is None else [t for t in cands if t in allowed]
        if cands is None:
            cands = list(T.faces(S.dims[a]))
        if a in fixed:
            cands = [t for t in cands if t == fixed[a]]
        return cands

    ordered = kind in (Kind.MONOTONE, Kind.ISO)
    tilde_nb: dict[str, list[str]] = {}
    for x, y in S.tilde:
        tilde_nb.setdefault(x, []).append(y)
        tilde_nb.setdefault(y, []).append(x)
    siblings: dict[str, set[str]] = {}
    for p, dom in S.delta.items():
        if S.dims[p] >= 2:
            for x in dom:
                siblings.setdefault(x, set()).update(dom - {x})
    T_level: dict[str, tuple] = {}

    def fits(a: str, t: str) -> bool:
        if S.dims[a] > 0:
            if (a in S.empty) != (t in T.empty):
                return False
            if a not in S.empty and len(S.delta[a]) != len(T.delta[t]):
                return False
        if kind == Kind.ISO and t in used:
            return False
        # order clauses between a and the faces already placed
        if ordered:
            for b in tilde_nb.get(a, ()):
                if b in m:
                    if (a, b) in S.tilde and (t, m[b]) not in T.tilde:
                        return False
                    if (b, a) in S.tilde and (m[b], t) not in T.tilde:
                        return False
        if kind == Kind.ISO:
            level = T_level.setdefault(t, T.faces(T.dims[t]))
            for u in level:
                if u in used:
                    b = inverse[u]
                    if (t, u) in T.tilde and (a, b) not in S.tilde:
                        return False
                    if (u, t) in T.tilde and (b, a) not in S.tilde:
                        return False
        if kind in (Kind.LOCAL, Kind.ISO):
            for x in siblings.get(a, ()):
                if x in m and x != a:
                    if ((a, x) in S.tilde) != ((t, m[x]) in T.tilde):
                        return False
                    if ((x, a) in S.tilde) != ((m[x], t) in T.tilde):
                        return False
        return True

    def rec(i: int) -> Iterator[dict]:
        if i == len(order):
            if kind != Kind.HYPER and morphism_witnesses(S, T, m, kind):
                return
            yield dict(m)
            return
        a = order[i]
        for t in candidates(a):
            if not fits(a, t):
                continue
            m[a] = t
            used.add(t)
            inverse[t] = a
            yield from rec(i + 1)
            used.discard(t)
            del m[a]

    yield from rec(0)


def enumerate_homs(S: OrderedFaceStructure, T: OrderedFaceStructure,
                   kind: Kind | str = Kind.HYPER) -> list[Morphism]:
    """All morphisms of ``kind``, in a deterministic order."""
    kind = Kind(kind)
    maps = sorted(iter_homs(S, T, kind), key=lambda d: tuple(d[a] for a in sorted(d)))
    return [Morphism(S, T, d, kind) for d in maps]


def count_homs(S, T, kind: Kind | str = Kind.HYPER) -> int:
    return sum(1 for _ in iter_homs(S, T, kind))


def find_iso(S: OrderedFaceStructure, T: OrderedFaceStructure) -> dict | None:
    """The (unique, by rigidity) isomorphism ``S -> T``, or None."""
    if len(S) != len(T) or [len(S.faces(k)) for k in range(S.dim + 1)] != [
        len(T.faces(k)) for k in range(T.dim + 1)
    ]:
        return None
    return next(iter_homs(S, T, Kind.ISO), None)


def isomorphic(S: OrderedFaceStructure, T: OrderedFaceStructure) -> bool:
    return find_iso(S, T) is not None


# -- principal covers and cocones ----------------------------------------


def principal_cover(S: OrderedFaceStructure, a: str, max_faces: int = 13):
    """The principal structure ``P`` with its local map ``f`` onto ``a``.

    Returns ``(P, m, f)`` with ``m`` the top face of ``P`` and ``f(m) = a``.
    The downward closure of ``a`` is used when it is itself a valid
    principal structure; otherwise (``a`` a loop, or touching loops) the
    principal catalog is searched by increasing size.
    """
    from .axioms import is_valid
    from .calculus import is_principal

    n = S.dim_of(a)
    P = S.restrict(S.closure([a]))
    if is_valid(P) and is_principal(P) and P.dim == n:
        return P, a, Morphism(P, S, {x: x for x in P.dims}, Kind.LOCAL)
    from .enumerator import principal_catalog

    seen = 0
    for bound in range(1, max_faces + 1):
        catalog = principal_catalog(n, bound)
        for P in catalog[seen:]:
            (m,) = P.faces(n)
            for d in iter_homs(P, S, Kind.LOCAL, fixed={m: a}):
                return P, m, Morphism(P, S, d, Kind.LOCAL)
        seen = len(catalog)
    raise MorphismError(f"no principal cover found for {a!r} within {max_faces} faces")


def principal_cocone(S: OrderedFaceStructure) -> list[tuple[OrderedFaceStructure, Morphism]]:
    """Every local map from a principal structure into ``S``, one per face
    (each such map is determined by where it sends its top face)."""
    out = []
    for a in S.faces():
        P, _, f = principal_cover(S, a)
        out.append((P, f))
    return out


def check_pushout(square, probes, kind: Kind | str = Kind.LOCAL) -> list[tuple]:
    """For each probe ``X``: maps ``T -> X`` correspond bijectively to pairs of
    maps from the two components agreeing on the interface.

    ``square`` is a :class:`~ofs.calculus.TensorSquare`. Returns a list of
    ``(probe_index, n_maps, n_matching_pairs)`` for the failing probes.
    """
    kind = Kind(kind)
    fails = []
    for i, X in enumerate(probes):
        left = enumerate_homs(square.left, X, kind)
        right = enumerate_homs(square.right, X, kind)
        c_in = square.left_leg.mapping
        d_in = square.right_leg.mapping
        pairs = set()
        for g in left:
            restr = {x: g.mapping[c_in[x]] for x in c_in}
            for h in right:
                if all(h.mapping[d_in[x]] == restr[x] for x in c_in):
                    pairs.add((tuple(sorted(g.mapping.items())), tuple(sorted(h.mapping.items()))))
        k1, k2 = square.kappa1.mapping, square.kappa2.mapping
        images = set()
        ok = True
        maps = enumerate_homs(square.tensor, X, kind)
        for f in maps:
            pair = (
                tuple(sorted((a, f.mapping[k1[a]]) for a in k1)),
                tuple(sorted((a, f.mapping[k2[a]]) for a in k2)),
            )
            if pair in images:
                ok = False
            images.add(pair)
        if not ok or images != pairs:
            fails.append((i, len(maps), len(pairs)))
    return fails


def check_pushout_in_local(square, probes) -> bool:
    return not check_pushout(square, probes, Kind.LOCAL)


def check_factorization(square, P: OrderedFaceStructure) -> list[tuple]:
    """Local maps ``f: P -> S ⊗_k S'`` against the two coprojections.

    Checks that each ``f`` factors through ``kappa1`` (at most once) or
    through ``kappa2``; that when both happen a factorization through the
    interface exists compatible with both; and that two different
    ``kappa2`` factorizations force a ``kappa1`` one. Returns
    ``(clause, f)`` for every violation.
    """
    k1, k2 = square.kappa1.mapping, square.kappa2.mapping
    c_in, d_in = square.left_leg.mapping, square.right_leg.mapping
    via_left = [g for g in iter_homs(P, square.left, Kind.LOCAL)]
    via_right = [h for h in iter_homs(P, square.right, Kind.LOCAL)]
    via_interface = [l for l in iter_homs(P, square.interface, Kind.LOCAL)]
    fails = []
    for f in iter_homs(P, square.tensor, Kind.LOCAL):
        gs = [g for g in via_left if all(k1[g[a]] == f[a] for a in f)]
        hs = [h for h in via_right if all(k2[h[a]] == f[a] for a in f)]
        if not gs and not hs:
            fails.append(("no_factorization", f))
        if len(gs) > 1:
            fails.append(("kappa1_not_unique", f))
        for g in gs:
            for h in hs:
                if not any(all(c_in[l[a]] == g[a] and d_in[l[a]] == h[a] for a in f)
                           for l in via_interface):
                    fails.append(("no_interface_factorization", f))
        if len(hs) > 1 and not gs:
            fails.append(("kappa2_twice_without_kappa1", f))
    return fails
