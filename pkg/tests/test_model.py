import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofs import EmptyFace, build, derive, one_equal
from ofs.fixtures import named
from ofs.model import (
    DanglingName,
    DuplicateName,
    EmptyDelta,
    MixedDimensions,
    UnknownOperationAtDim0,
    transitive_closure,
    transitive_closure_matrix,
)

from oracles import warshall

NODES = [f"n{i}" for i in range(7)]
edge_lists = st.lists(st.tuples(st.sampled_from(NODES), st.sampled_from(NODES)), max_size=20)


@given(edge_lists)
@settings(max_examples=200, deadline=None)
def test_closures_agree_with_warshall(edges):
    want = warshall(NODES, edges)
    assert transitive_closure(NODES, edges) == want
    assert transitive_closure_matrix(NODES, edges) == want


def test_derived_orders_on_path3():
    S = named()["Path3"]
    D = S.derived
    assert D.minus("a1", "a2") and D.minus("a1", "a3") and not D.minus("a2", "a1")
    assert D.plus("x0", "x3") and D.plus("x1", "x2") and not D.plus("x2", "x0")
    assert not D.loops


def test_derive_with_matrix_closure_matches():
    for S in named().values():
        assert derive(S, transitive_closure_matrix) == S.derived


def test_bubble_loop_and_boundaries():
    B = named()["B0"]
    assert B.is_loop("b")
    assert B.derived.loops == {"b"}
    assert B.delta_of("alpha") == {EmptyFace("x0")}
    assert B.dot_delta("alpha") == frozenset()
    assert B.unfilled_loops() == frozenset()
    assert B.restrict(["x0", "b"]).unfilled_loops() == {"b"}


def test_theta_iota_on_globe():
    G = named()["G2(2)"]
    assert G.theta("alpha") == {"a1", "a2", "b"}
    assert G.dot_delta("alpha") == {"a1", "a2"}
    assert "x1" in G.iota("alpha")
    assert "x0" not in G.iota("alpha") and "x2" not in G.iota("alpha")


def test_one_equal_pads_empty_faces():
    B = named()["B0"]
    assert one_equal(B, {"b"}, {"b", EmptyFace("x0")})
    assert not one_equal(B, {"b"}, {EmptyFace("x0")})
    with pytest.raises(MixedDimensions):
        one_equal(B, {"b"}, {"x0"})


def test_closure_and_restrict():
    V = named()["VComp"]
    down = V.closure(["alpha"])
    assert down == {"alpha", "a", "b", "x", "y"}
    R = V.restrict(down)
    assert R.faces(2) == ("alpha",)
    assert R.tilde_at(2) == frozenset()


def test_relabel_round_trip():
    S = named()["Grid"]
    m = {a: a.upper() + "_" for a in S.dims}
    back = {v: k for k, v in m.items()}
    assert S.relabel(m).relabel(back) == S


@pytest.mark.parametrize("kwargs, err", [
    (dict(faces={0: ["x", "x"]}), DuplicateName),
    (dict(faces={0: ["x"], 1: ["a"]}, gamma={"a": "y"}, delta={"a": "x"}), DanglingName),
    (dict(faces={0: ["x"], 1: ["a"]}, gamma={"a": "x"}), EmptyDelta),
    (dict(faces={0: ["x"], 1: ["a"]}, gamma={"a": "x"}, delta={"a": []}), EmptyDelta),
    (dict(faces={0: ["x"]}, gamma={"x": "x"}), UnknownOperationAtDim0),
    (dict(faces={0: ["x"], 1: ["a"]}, gamma={"a": "x"}, delta={"a": EmptyFace("x")}), MixedDimensions),
    (dict(faces={0: ["x", "y"], 1: ["a"], 2: ["m"]}, gamma={"a": "y", "m": "x"},
          delta={"a": "x", "m": ["a"]}), MixedDimensions),
])
def test_build_rejects_malformed(kwargs, err):
    with pytest.raises(err):
        build(**kwargs)


def test_equality_and_hash_are_structural():
    a, b = named()["Path2"], named()["Path2"]
    assert a == b and hash(a) == hash(b)
    assert a != a.with_tilde(())
    assert a.with_relaxed(True).plain() == a
