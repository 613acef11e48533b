import pytest

from ofs.calculus import InterfaceMismatch, tensor
from ofs.computads import cells
from ofs.fixtures import named
from ofs.gt import (
    BudgetExceeded,
    FiniteModel,
    Graph,
    check_is_model,
    check_laws,
    delta0_instance,
    hom_model,
    ofs_instance,
    omega_category_of,
)

from oracles import count_paths

N = named()
D0 = delta0_instance()


def test_delta0_boundaries():
    assert D0.c(3, 0) == (0, (3,))
    assert D0.d(3, 0) == (0, (0,))
    assert D0.d(3, 1) == (3, (0, 1, 2, 3))
    assert D0.dim(0) == 0 and D0.dim(4) == 1


def test_delta0_tensor_unit_and_mismatch():
    assert D0.tensor(0, 5, 0).tensor == 5
    assert D0.tensor(5, 0, 0).tensor == 5
    with pytest.raises(InterfaceMismatch):
        D0.tensor(2, 3, 1)


def test_delta0_laws():
    assert check_laws(D0, [0, 1, 2, 3, 4]) == []


def test_delta0_omega_category_on_path():
    G = Graph.from_edges([("e", "p", "q"), ("f", "q", "r")])
    cat = omega_category_of(D0, G, 1, budget=10)
    assert cat.count() == 6 == count_paths(G.edges, G.vertices)
    assert cat.check_laws() == []


def test_delta0_cycle_is_infinite():
    G = Graph.from_edges([("e", "p", "q"), ("f", "q", "r"), ("g", "r", "p")])
    with pytest.raises(BudgetExceeded):
        omega_category_of(D0, G, 1, budget=12)


def test_ofs_instance_laws_on_fixtures():
    inst = ofs_instance()
    objs = [N[n] for n in ("O0", "I1", "Path2", "G2(1)", "G2(2)", "VComp", "B0")]
    assert check_laws(inst, objs) == []


@pytest.mark.parametrize("name, n, expected", [
    ("O0", 0, 1), ("Path2", 1, 6), ("G2(1)", 2, 5), ("VComp", 2, 8), ("Path3", 1, 10), ("G2(3)", 2, 12),
])
def test_ofs_omega_category_counts(name, n, expected):
    cat = omega_category_of(ofs_instance(), N[name], n)
    assert cat.count() == expected
    assert {c.key for c in cat.cells()} == {c.key for c in cells(N[name], n)}


def test_ofs_omega_category_laws():
    cat = omega_category_of(ofs_instance(), N["VComp"], 2)
    assert cat.check_laws() == []


def test_hom_model_sends_squares_to_pullbacks():
    squares = [tensor(N["I1"], N["I1"], 0), tensor(N["G2(1)"], N["G2(1)"], 1)]
    for probe in ("Path2", "VComp", "Grid", "SFig"):
        assert check_is_model(hom_model(N[probe]), squares) == []


def test_non_model_is_caught():
    # two elements everywhere, every restriction collapsing to 0
    collapse = FiniteModel(lambda X: [0, 1], lambda f, y: 0)
    assert check_is_model(collapse, [tensor(N["I1"], N["I1"], 0)]) == [(0, 2, 4)]
