"""The free many-to-one computad generated by an ordered face structure.

An n-cell is a local map ``R -> S`` from a structure of dimension at
most n, taken up to isomorphism of ``R``. Cells are stored canonically
(shape in canonical form, map rewritten along it), so equality is a key
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .calculus import enumerate_cuts, is_principal, k_codomain, k_domain, split, tensor
from .enumerator import canonical_labelling
from .gt import BudgetExceeded
from .model import OrderedFaceStructure
from .morphisms import Kind, Morphism, NotComposable, morphism_witnesses, principal_cover


@dataclass(frozen=True, eq=False)
class Cell:
    level: int
    shape: OrderedFaceStructure
    mapping: Mapping[str, str]
    target: OrderedFaceStructure
    key: tuple

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cell):
            return NotImplemented
        return (self.level, self.key) == (other.level, other.key)

    def __hash__(self) -> int:
        return hash((self.level, self.key))

    def same_underlying(self, other: "Cell") -> bool:
        return self.key == other.key

    @property
    def morphism(self) -> Morphism:
        return Morphism(self.shape, self.target, self.mapping, Kind.LOCAL)

    @property
    def is_identity(self) -> bool:
        return self.shape.dim < self.level

    def at(self, level: int) -> "Cell":
        return Cell(level, self.shape, self.mapping, self.target, self.key)

    def __repr__(self) -> str:
        img = ",".join(f"{a}->{b}" for a, b in sorted(self.mapping.items()))
        return f"Cell(level={self.level}, dim={self.shape.dim}, {img})"


def make_cell(shape: OrderedFaceStructure, mapping: Mapping[str, str],
              target: OrderedFaceStructure, level: int | None = None) -> Cell:
    names, key = canonical_labelling(shape)
    C = shape.relabel(names)
    m = {names[a]: b for a, b in mapping.items()}
    level = shape.dim if level is None else level
    return Cell(level, C, m, target, (key, tuple(sorted(m.items()))))


def cover_cell(S: OrderedFaceStructure, a: str, level: int | None = None) -> Cell:
    """The indet (or, at higher level, its identity) classifying the face ``a``."""
    P, _, f = principal_cover(S, a)
    return make_cell(P, f.mapping, S, level)


def cell_domain(a: Cell, k: int) -> Cell:
    D, inc = k_domain(a.shape, k)
    return make_cell(D, {x: a.mapping[y] for x, y in inc.mapping.items()}, a.target, min(k, a.level))


def cell_codomain(a: Cell, k: int) -> Cell:
    C, inc = k_codomain(a.shape, k)
    return make_cell(C, {x: a.mapping[y] for x, y in inc.mapping.items()}, a.target, min(k, a.level))


def composable(a: Cell, b: Cell, k: int) -> bool:
    return cell_codomain(a, k).same_underlying(cell_domain(b, k))


def compose_cells(a: Cell, b: Cell, k: int) -> Cell:
    """``a ;_k b``: the unique local map out of the tensor of the shapes."""
    if not composable(a, b, k):
        raise NotComposable(f"k={k}: codomain of the first differs from the domain of the second")
    sq = tensor(a.shape, b.shape, k)
    m = {sq.kappa1.mapping[x]: v for x, v in a.mapping.items()}
    for y, v in b.mapping.items():
        t = sq.kappa2.mapping[y]
        if m.get(t, v) != v:
            raise NotComposable(f"the two maps disagree on {t}")
        m[t] = v
    bad = morphism_witnesses(sq.tensor, a.target, m, Kind.LOCAL)
    if bad:
        raise NotComposable(f"induced map is not local: {bad[:3]}")
    return make_cell(sq.tensor, m, a.target, max(a.level, b.level))


def is_indet(a: Cell) -> bool:
    return a.shape.dim == a.level and is_principal(a.shape)


def cells(S: OrderedFaceStructure, n: int, budget: int = 5000) -> list[Cell]:
    """All n-cells of the free computad on ``S``.

    Starts from the principal covers of the faces of dimension <= n and
    closes under composition; a lower-dimensional shape is an identity
    n-cell. Structures with loops have infinitely many cells and raise
    :class:`BudgetExceeded` once ``budget`` is passed.
    """
    found: dict = {}
    queue = []
    for a in sorted(S.dims, key=lambda x: (S.dims[x], x)):
        if S.dims[a] <= n:
            c = cover_cell(S, a, n)
            if c.key not in found:
                found[c.key] = c
                queue.append(c)
    while queue:
        new = queue.pop(0)
        for old in list(found.values()):
            for a, b in ((new, old), (old, new)):
                for k in range(min(a.shape.dim, b.shape.dim)):
                    if not composable(a, b, k):
                        continue
                    c = compose_cells(a, b, k)
                    if c.key in found:
                        continue
                    if len(found) >= budget:
                        raise BudgetExceeded(f"more than {budget} cells")
                    found[c.key] = c
                    queue.append(c)
    return sorted(found.values(), key=lambda c: (c.shape.dim, len(c.shape), repr(c.key)))


# -- evaluation along cuts -------------------------------------------------


def evaluate(shape: OrderedFaceStructure, mapping: Mapping[str, str], target: OrderedFaceStructure,
             first_cut=None) -> Cell:
    """Rebuild the cell ``shape -> target`` from indets by splitting along
    cuts (``first_cut`` at the top, the first available one below)."""
    cuts = enumerate_cuts(shape) if first_cut is None else [first_cut]
    if not cuts:
        return make_cell(shape, mapping, target)
    cut = cuts[0]
    down, up = split(shape, cut)
    a = evaluate(down, {x: mapping[x] for x in down.dims}, target)
    b = evaluate(up, {x: mapping[x] for x in up.dims}, target)
    return compose_cells(a, b, cut.level)


def check_cut_independence(a: Cell) -> list[tuple]:
    """Evaluating ``a`` along each of its cuts gives ``a`` back every time.

    Returns the failing cuts with the key obtained; vacuous for principal shapes.
    """
    fails = []
    for cut in enumerate_cuts(a.shape):
        try:
            got = evaluate(a.shape, a.mapping, a.target, cut)
        except NotComposable as e:
            fails.append((cut, str(e)))
            continue
        if not got.same_underlying(a):
            fails.append((cut, got.key))
    return fails
