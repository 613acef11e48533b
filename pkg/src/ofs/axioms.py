"""Validity checks for ordered face structures, one per axiom.

Every check returns a :class:`Verdict` carrying minimal witnesses; each
witness is a tuple whose first entry names the violated clause, so that
:func:`recheck` can re-evaluate exactly that clause.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .model import EmptyFace, MixedDimensions, OrderedFaceStructure, one_equal, transitive_closure

AXIOMS = (
    "globularity",
    "local_discreteness",
    "strictness",
    "disjointness",
    "pencil_linearity",
    "loop_filling",
)

# How linearity on 0-faces is read: "strict" uses <+ alone, "combined"
# uses the closure of <+ together with <~ (and then allows <~ on 0-faces).
LINEARITY_MODES = ("strict", "combined")


@dataclass(frozen=True)
class Verdict:
    axiom: str
    witnesses: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.witnesses


@dataclass(frozen=True)
class AxiomReport:
    verdicts: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def failed(self) -> list[str]:
        return [name for name, v in self.verdicts.items() if not v.passed]

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "axioms": {
                name: {"pass": v.passed, "witnesses": [[str(x) for x in w] for w in v.witnesses]}
                for name, v in self.verdicts.items()
            },
        }


def _globularity_clauses(S: OrderedFaceStructure, a: str) -> list[str]:
    bad = []
    dom = S.delta_of(a)
    dom_nl = S.dot_delta_nonloop(a)
    gd = {S.gamma_of(c) for c in dom}
    dd_nl: set = set()
    for c in dom_nl:
        dd_nl |= S.delta_of(c)
    if {S.gamma_of(S.gamma[a])} != gd - dd_nl:
        bad.append("gamma")
    dd: set = set()
    for c in dom:
        dd |= S.delta_of(c)
    rhs = dd - {S.gamma_of(c) for c in dom_nl}
    try:
        ok = one_equal(S, S.delta_of(S.gamma[a]), rhs)
    except MixedDimensions:
        ok = False
    if not ok:
        bad.append("delta")
    return bad


def check_globularity(S: OrderedFaceStructure) -> Verdict:
    out = []
    for k in range(2, S.dim + 1):
        for a in S.faces(k):
            out.extend((clause, a) for clause in _globularity_clauses(S, a))
    return Verdict("globularity", tuple(out))


def check_local_discreteness(S: OrderedFaceStructure) -> Verdict:
    rel = S.derived
    out = []
    for k in range(2, S.dim + 1):
        for a in S.faces(k):
            for x, y in combinations(sorted(S.dot_delta(a)), 2):
                if rel.perp_plus(x, y):
                    out.append(("perp_plus_in_delta", a, x, y))
    return Verdict("local_discreteness", tuple(out))


def _zero_order(S: OrderedFaceStructure, mode: str) -> frozenset:
    plus0 = {p for p in S.derived.lower_plus if S.dims[p[0]] == 0}
    if mode == "combined":
        return transitive_closure(S.faces(0), plus0 | set(S.tilde_at(0)))
    return frozenset(plus0)


def check_strictness(S: OrderedFaceStructure, mode: str = "strict") -> Verdict:
    rel = S.derived
    out = []
    for a in S.faces():
        if rel.plus(a, a):
            out.append(("plus_reflexive", a))
        if S.tilde_less(a, a):
            out.append(("tilde_reflexive", a))
    for a, b in sorted(S.tilde):
        for c in S.faces(S.dims[a]):
            if S.tilde_less(b, c) and not S.tilde_less(a, c):
                out.append(("tilde_transitive", a, b, c))
    order = _zero_order(S, mode)
    for x, y in combinations(S.faces(0), 2):
        if (x, y) not in order and (y, x) not in order:
            out.append(("zero_linear", x, y))
    return Verdict("strictness", tuple(out))


def _disjoint_theta(S: OrderedFaceStructure, a: str, b: str) -> bool:
    return not (S.theta(a) & S.theta(b))


def check_disjointness(S: OrderedFaceStructure, mode: str = "strict") -> Verdict:
    rel = S.derived
    out = []
    for a, b in sorted(S.tilde):
        if rel.perp_plus(a, b):
            out.append(("tilde_and_plus", a, b))
        if S.dims[a] >= 1 or mode == "strict":
            if not rel.minus(a, b):
                out.append(("tilde_not_minus", a, b))
    for k in range(1, S.dim + 1):
        for a in S.faces(k):
            for b in S.faces(k):
                if a != b and rel.minus(a, b) and not S.tilde_less(a, b) and _disjoint_theta(S, a, b):
                    out.append(("minus_not_tilde", a, b))
    return Verdict("disjointness", tuple(out))


def check_pencil_linearity(S: OrderedFaceStructure) -> Verdict:
    rel = S.derived
    out = []
    for k in range(1, S.dim + 1):
        for a, b in combinations(S.faces(k), 2):
            if S.dot_theta(a) & S.dot_theta(b):
                if not (S.tilde_perp(a, b) or rel.perp_plus(a, b)):
                    out.append(("pencil", a, b))
    for k in range(2, S.dim + 1):
        for a in S.faces(k):
            if a not in S.empty:
                continue
            gg = S.gamma[S.gamma[a]]
            for b in S.faces(k):
                if gg in S.iota(b) and not (S.tilde_less(a, b) or rel.plus(a, b)):
                    out.append(("empty_pencil", a, b))
    return Verdict("pencil_linearity", tuple(out))


def check_loop_filling(S: OrderedFaceStructure) -> Verdict:
    loops = S.derived.loops
    filled = {S.gamma[a] for a in S.faces() if S.dims[a] > 0 and a not in loops}
    top = S.dim
    out = tuple(
        ("unfilled_loop", l)
        for l in sorted(loops - filled)
        if not (S.relaxed_top and S.dims[l] == top) and l not in S.open_loops
    )
    return Verdict("loop_filling", out)


def validate(S: OrderedFaceStructure, mode: str = "strict") -> AxiomReport:
    """Run all six checks. ``mode`` selects the reading of 0-face linearity."""
    if mode not in LINEARITY_MODES:
        raise ValueError(f"unknown mode {mode!r}")
    return AxiomReport({
        "globularity": check_globularity(S),
        "local_discreteness": check_local_discreteness(S),
        "strictness": check_strictness(S, mode),
        "disjointness": check_disjointness(S, mode),
        "pencil_linearity": check_pencil_linearity(S),
        "loop_filling": check_loop_filling(S),
    })


def is_valid(S: OrderedFaceStructure, mode: str = "strict") -> bool:
    return validate(S, mode).valid


def recheck(S: OrderedFaceStructure, witness: tuple, mode: str = "strict") -> bool:
    """Re-evaluate the clause named by ``witness``; True means it holds."""
    clause, *args = witness
    rel = S.derived
    if clause in ("gamma", "delta"):
        return clause not in _globularity_clauses(S, args[0])
    if clause == "perp_plus_in_delta":
        a, x, y = args
        return not ({x, y} <= S.dot_delta(a) and rel.perp_plus(x, y))
    if clause == "plus_reflexive":
        return not rel.plus(args[0], args[0])
    if clause == "tilde_reflexive":
        return not S.tilde_less(args[0], args[0])
    if clause == "tilde_transitive":
        a, b, c = args
        return not (S.tilde_less(a, b) and S.tilde_less(b, c)) or S.tilde_less(a, c)
    if clause == "zero_linear":
        x, y = args
        order = _zero_order(S, mode)
        return (x, y) in order or (y, x) in order
    if clause == "tilde_and_plus":
        a, b = args
        return not (S.tilde_less(a, b) and rel.perp_plus(a, b))
    if clause == "tilde_not_minus":
        a, b = args
        return not S.tilde_less(a, b) or rel.minus(a, b)
    if clause == "minus_not_tilde":
        a, b = args
        return not (rel.minus(a, b) and _disjoint_theta(S, a, b)) or S.tilde_less(a, b)
    if clause == "pencil":
        a, b = args
        return not (S.dot_theta(a) & S.dot_theta(b)) or S.tilde_perp(a, b) or rel.perp_plus(a, b)
    if clause == "empty_pencil":
        a, b = args
        gg = S.gamma[S.gamma[a]]
        return gg not in S.iota(b) or S.tilde_less(a, b) or rel.plus(a, b)
    if clause == "unfilled_loop":
        l = args[0]
        return l not in S.derived.loops or l in S.open_loops or any(
            S.gamma.get(a) == l and a not in S.derived.loops for a in S.faces()
        )
    raise ValueError(f"unknown clause {clause!r}")


__all__ = [
    "AXIOMS", "AxiomReport", "Verdict", "check_disjointness", "check_globularity",
    "check_local_discreteness", "check_loop_filling", "check_pencil_linearity",
    "check_strictness", "is_valid", "recheck", "validate", "EmptyFace",
]
