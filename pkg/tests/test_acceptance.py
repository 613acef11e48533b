"""The ten acceptance criteria, each at its stated bound.

Every test carries ``@pytest.mark.acceptance(n)``; the terminal summary
prints one PASS/FAIL line per criterion.
"""

from itertools import combinations_with_replacement

import pytest

from ofs.axioms import recheck, validate
from ofs.calculus import (
    check_gt_laws,
    enumerate_cuts,
    is_principal,
    size,
    size_less,
    split,
    tensor,
)
from ofs.computads import cells, check_cut_independence, make_cell
from ofs.enumerator import (
    enumerate_principal,
    enumerate_valid,
    enumerate_valid_slow,
    principal_catalog,
)
from ofs.gt import BudgetExceeded, Graph, check_is_model, delta0_instance, hom_model, omega_category_of
from ofs.morphisms import check_factorization, check_pushout, enumerate_homs, find_iso

import mutations
import oracles

acceptance = pytest.mark.acceptance

FIXTURE_NAMES = ["O0", "I1", "Path2", "Path3", "B0", "G2(1)", "G2(2)", "G2(3)", "VComp", "Grid", "SFig", "SFig'"]


# 1 -----------------------------------------------------------------------


@acceptance(1)
@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixtures_validate(fixtures, name):
    assert validate(fixtures[name]).valid


@acceptance(1)
@pytest.mark.parametrize("entry", mutations.CATALOG, ids=mutations.catalog_id)
def test_catalogued_mutation(fixtures, entry):
    axiom, fixture, op, args = entry
    M = mutations.apply(fixtures[fixture], op, *args)
    report = validate(M)
    assert report.failed() == [axiom]
    assert all(recheck(M, w) is False for w in report.verdicts[axiom].witnesses)


@acceptance(1)
def test_mutation_catalog_size():
    assert len(mutations.CATALOG) >= 30


# 2 -----------------------------------------------------------------------


@acceptance(2)
def test_rigidity(enumerated):
    assert len(enumerated) > 0
    for S in enumerated:
        isos = [m for m in oracles.brute_homs(S, S, "hyper")
                if len(set(m.values())) == len(m)
                and {(m[a], m[b]) for a, b in S.tilde} == set(S.tilde)]
        assert len(isos) == 1, S
        assert len(enumerate_homs(S, S, "iso")) == 1


# 3 -----------------------------------------------------------------------


def _principal_shapes():
    return {0: principal_catalog(0, 1), 1: principal_catalog(1, 3),
            2: principal_catalog(2, 13), 3: principal_catalog(3, 9)}


@acceptance(3)
def test_unique_principal_cover(corpus):
    shapes = _principal_shapes()
    for S in corpus:
        hits = {a: 0 for a in S.dims}
        for n in range(S.dim + 1):
            for P in shapes[n]:
                (m,) = P.faces(n)
                for f in enumerate_homs(P, S, "local"):
                    hits[f(m)] += 1
        assert all(v == 1 for v in hits.values()), (S, hits)


# 4 -----------------------------------------------------------------------


@acceptance(4)
def test_gt_laws_on_corpus(corpus):
    assert check_gt_laws(corpus) == []


@acceptance(4)
@pytest.mark.parametrize("n", range(7))
def test_delta0_tensor_arithmetic(n):
    D0 = delta0_instance()
    for m in range(7):
        sq = D0.tensor(n, m, 0)
        assert sq.tensor == n + m
        assert sq.kappa1 == tuple(range(n + 1))
        assert sq.kappa2 == tuple(range(n, n + m + 1))


# 5 -----------------------------------------------------------------------


@acceptance(5)
def test_round_trip_and_dichotomy(corpus):
    for S in corpus:
        cuts = enumerate_cuts(S)
        assert is_principal(S) != bool(cuts), S
        for cut in cuts:
            lo, up = split(S, cut)
            assert size_less(size(lo), size(S)) and size_less(size(up), size(S))
            T = tensor(lo, up, cut.level).tensor
            assert find_iso(T.plain(), S.plain()) is not None


# 6 -----------------------------------------------------------------------


@acceptance(6)
def test_squares_are_pushouts_in_local(squares, corpus):
    assert len(squares) > 2
    for sq in squares:
        assert check_pushout(sq, corpus, "local") == []


@acceptance(6)
def test_hom_models(squares, corpus):
    for probe in corpus:
        assert check_is_model(hom_model(probe), squares) == []


@acceptance(6)
def test_sfig_breaks_the_monotone_pushout(fixtures):
    sq = tensor(fixtures["I1"], fixtures["I1"], 0)
    for probe in ("SFig", "SFig'"):
        fails = check_pushout(sq, [fixtures[probe]], "monotone")
        # one monotone map out of Path2, four compatible pairs of edges
        assert fails == [(0, 1, 4)]
        assert check_pushout(sq, [fixtures[probe]], "local") == []


# 7 -----------------------------------------------------------------------


@acceptance(7)
def test_factorization_through_coprojections(squares):
    small = [P for d in range(4) for P in enumerate_principal(d, 6)]
    assert len(small) == 6
    for sq in squares:
        for P in small:
            assert check_factorization(sq, P) == [], (sq.level, P)


# 8 -----------------------------------------------------------------------


def _forward_graphs():
    """Acyclic graphs with at most 6 edges, every edge going from a lower to a
    higher vertex (every finite DAG has such a numbering)."""
    for nv in range(1, 5):
        pairs = [(i, j) for i in range(nv) for j in range(i + 1, nv)]
        for ne in range(7):
            for chosen in combinations_with_replacement(pairs, ne):
                edges = [(f"e{t}", f"v{i}", f"v{j}") for t, (i, j) in enumerate(chosen)]
                yield Graph.from_edges(edges, [f"v{i}" for i in range(nv)])


@acceptance(8)
def test_delta0_cells_count_paths():
    D0 = delta0_instance()
    n = 0
    for G in _forward_graphs():
        cat = omega_category_of(D0, G, 1, budget=8)
        assert cat.count() == oracles.count_paths(G.edges, G.vertices), G
        n += 1
    assert n == 1 + 7 + 84 + 924


@acceptance(8)
def test_ofs_cell_counts(fixtures):
    assert len(cells(fixtures["Path2"], 1)) == 6
    assert len(cells(fixtures["G2(1)"], 2)) == 5


# 9 -----------------------------------------------------------------------


@acceptance(9)
def test_cut_independence(corpus, fixtures):
    # corpus cells: the enumerated cells of each target (when finite) and
    # every local map from a corpus shape into it
    shapes = [R for R in corpus if not is_principal(R) and len(enumerate_cuts(R)) >= 2]
    checked = 0
    for S in corpus:
        try:
            pool = {c.key: c for c in cells(S, S.dim, budget=300)}
        except BudgetExceeded:
            pool = {}
        for R in shapes:
            for f in enumerate_homs(R, S, "local"):
                c = make_cell(R, f.mapping, S)
                pool.setdefault(c.key, c)
        for c in pool.values():
            if is_principal(c.shape) or len(enumerate_cuts(c.shape)) < 2:
                continue
            assert check_cut_independence(c) == [], c
            checked += 1
    G = fixtures["Grid"]
    grid = make_cell(G, {a: a for a in G.dims}, G)
    assert len(enumerate_cuts(grid.shape)) == 8
    assert check_cut_independence(grid) == []
    assert checked > len(shapes)


# 10 ----------------------------------------------------------------------


@acceptance(10)
def test_principal_arity_buckets():
    assert len(enumerate_principal(0, 13)) == 1
    assert len(enumerate_principal(1, 13)) == 1
    assert enumerate_principal(2, 13).by_arity() == {(2, a): 1 for a in range(6)}


@acceptance(10)
def test_principal_dim3_matches_tree_oracle():
    got = {f: n for (_, f), n in enumerate_principal(3, 8).counts().items()}
    assert got == oracles.principal_dim3_buckets(8)


@acceptance(10)
@pytest.mark.parametrize("dim, faces", [(0, 3), (1, 5), (2, 6), (3, 5)])
def test_generators_agree_with_slow(dim, faces):
    slow = enumerate_valid_slow(dim, faces)
    assert enumerate_valid(dim, faces).keys() == slow.keys()
    principal = slow.filter(lambda S: S.dim == dim and is_principal(S))
    assert enumerate_principal(dim, faces).keys() == principal.keys()
