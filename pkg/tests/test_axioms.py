import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofs.axioms import AXIOMS, recheck, validate
from ofs.fixtures import named
from ofs.model import OfsError

import mutations
from mutations import CATALOG, catalog_id

FIXTURES = named()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_is_valid(name):
    report = validate(FIXTURES[name])
    assert report.valid, report.as_dict()


@pytest.mark.parametrize("entry", CATALOG, ids=catalog_id)
def test_mutation_flips_one_axiom(entry):
    axiom, fixture, op, args = entry
    M = mutations.apply(FIXTURES[fixture], op, *args)
    report = validate(M)
    assert report.failed() == [axiom]
    witnesses = report.verdicts[axiom].witnesses
    assert witnesses
    for w in witnesses:
        assert recheck(M, w) is False


def test_catalog_covers_every_axiom():
    counts = {a: sum(1 for e in CATALOG if e[0] == a) for a in AXIOMS}
    assert all(n >= 5 for n in counts.values()), counts


def test_reports_serialize():
    d = validate(FIXTURES["SFig"]).as_dict()
    assert d["valid"] and set(d["axioms"]) == set(AXIOMS)


def test_open_loops_exempt_from_filling():
    B = FIXTURES["B0"]
    bare = B.restrict(["x0", "b"])
    assert validate(bare).failed() == ["loop_filling"]
    assert validate(bare.with_open(["b"])).valid


def test_combined_mode_accepts_fixtures():
    for S in FIXTURES.values():
        assert validate(S, "combined").valid


@st.composite
def random_edit(draw):
    name = draw(st.sampled_from(sorted(FIXTURES)))
    S = FIXTURES[name]
    positive = [a for a in sorted(S.dims) if S.dims[a] > 0]
    kind = draw(st.sampled_from(["gamma", "delta", "add_tilde", "drop_tilde"]))
    if kind == "gamma" and positive:
        a = draw(st.sampled_from(positive))
        return mutations.set_gamma(S, a, draw(st.sampled_from(S.faces(S.dims[a] - 1))))
    if kind == "delta" and positive:
        a = draw(st.sampled_from(positive))
        lower = S.faces(S.dims[a] - 1)
        d = draw(st.lists(st.sampled_from(lower), min_size=1, max_size=3, unique=True))
        return mutations.set_delta(S, a, d[:1] if S.dims[a] == 1 else d)
    if kind == "drop_tilde" and S.tilde:
        return mutations.drop_tilde(S, *draw(st.sampled_from(sorted(S.tilde))))
    if positive:
        k = S.dims[draw(st.sampled_from(positive))]
        level = S.faces(k)
        return mutations.add_tilde(S, draw(st.sampled_from(level)), draw(st.sampled_from(level)))
    return S


@given(random_edit())
@settings(max_examples=300, deadline=None)
def test_every_witness_rechecks_false(M):
    try:
        report = validate(M)
    except OfsError:
        return
    for axiom in report.failed():
        for w in report.verdicts[axiom].witnesses:
            assert recheck(M, w) is False, (axiom, w)
