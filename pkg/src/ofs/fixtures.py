"""Named small structures used throughout the tests, docs and CLI."""

from __future__ import annotations

from .model import EmptyFace, OrderedFaceStructure, build


def point(name: str = "x") -> OrderedFaceStructure:
    """O0: a single 0-face."""
    return build({0: [name]})


def path(n: int) -> OrderedFaceStructure:
    """x0 -a1-> x1 -a2-> ... -an-> xn, edges ordered left to right."""
    if n == 0:
        return build({0: ["x0"]})
    edges = [f"a{i}" for i in range(1, n + 1)]
    return build(
        {0: [f"x{i}" for i in range(n + 1)], 1: edges},
        gamma={f"a{i}": f"x{i}" for i in range(1, n + 1)},
        delta={f"a{i}": f"x{i - 1}" for i in range(1, n + 1)},
        tilde=[(edges[i], edges[j]) for i in range(n) for j in range(i + 1, n)],
    )


def interval() -> OrderedFaceStructure:
    """I1: the 1-globe x -a-> y."""
    return build({0: ["x", "y"], 1: ["a"]}, gamma={"a": "y"}, delta={"a": "x"})


def globe2(n: int) -> OrderedFaceStructure:
    """G2(n): a 2-face alpha from the path a1..an to b: x0 -> xn.

    ``globe2(0)`` is the bubble B0 (empty domain on x0, ``b`` a loop).
    """
    if n == 0:
        return build(
            {0: ["x0"], 1: ["b"], 2: ["alpha"]},
            gamma={"b": "x0", "alpha": "b"},
            delta={"b": "x0", "alpha": EmptyFace("x0")},
        )
    p = path(n)
    return build(
        {0: p.faces(0), 1: list(p.faces(1)) + ["b"], 2: ["alpha"]},
        gamma={**p.gamma, "b": f"x{n}", "alpha": "b"},
        delta={**{a: next(iter(v)) for a, v in p.delta.items()}, "b": "x0",
               "alpha": list(p.faces(1))},
        tilde=p.tilde,
    )


def bubble() -> OrderedFaceStructure:
    return globe2(0)


def globe(n: int) -> OrderedFaceStructure:
    """The n-globe: two parallel faces in every dimension below n."""
    if n == 0:
        return build({0: ["x0"]})
    faces = {0: ["x0", "y0"]}
    gamma, delta = {}, {}
    for k in range(1, n):
        faces[k] = [f"x{k}", f"y{k}"]
        for f in faces[k]:
            gamma[f] = f"y{k - 1}"
            delta[f] = [f"x{k - 1}"]
    faces[n] = ["m"]
    gamma["m"] = f"y{n - 1}"
    delta["m"] = [f"x{n - 1}"]
    return build(faces, gamma, delta)


def vcomp() -> OrderedFaceStructure:
    """Two 2-faces alpha: a => b, beta: b => c composed vertically."""
    return build(
        {0: ["x", "y"], 1: ["a", "b", "c"], 2: ["alpha", "beta"]},
        gamma={"a": "y", "b": "y", "c": "y", "alpha": "b", "beta": "c"},
        delta={"a": "x", "b": "x", "c": "x", "alpha": ["a"], "beta": ["b"]},
        tilde=[("alpha", "beta")],
    )


def grid() -> OrderedFaceStructure:
    """The 2x2 pasting: two vertical composites side by side."""
    left, right = ["a", "b", "c"], ["d", "e", "f"]
    gamma = {**{e: "y" for e in left}, **{e: "z" for e in right},
             "alpha": "b", "beta": "c", "gam": "e", "eps": "f"}
    delta = {**{e: "x" for e in left}, **{e: "y" for e in right},
             "alpha": ["a"], "beta": ["b"], "gam": ["d"], "eps": ["e"]}
    tilde = [(u, v) for u in left for v in right] + [("alpha", "beta"), ("gam", "eps")]
    return build({0: ["x", "y", "z"], 1: left + right, 2: ["alpha", "beta", "gam", "eps"]},
                 gamma, delta, tilde)


def sfig(first: str = "x1") -> OrderedFaceStructure:
    """Two bubbles filling loops x0, x1 on a single 0-face s.

    ``first`` names the loop that comes first in the order on 1-faces.
    """
    second = "x0" if first == "x1" else "x1"
    return build(
        {0: ["s"], 1: ["x0", "x1"], 2: ["a", "b"]},
        gamma={"x0": "s", "x1": "s", "a": "x0", "b": "x1"},
        delta={"x0": "s", "x1": "s", "a": EmptyFace("s"), "b": EmptyFace("s")},
        tilde=[(first, second)],
    )


def named() -> dict[str, OrderedFaceStructure]:
    """All named fixtures by short name."""
    return {
        "O0": point(),
        "I1": interval(),
        "Path2": path(2),
        "Path3": path(3),
        "B0": globe2(0),
        "G2(1)": globe2(1),
        "G2(2)": globe2(2),
        "G2(3)": globe2(3),
        "VComp": vcomp(),
        "Grid": grid(),
        "SFig": sfig("x1"),
        "SFig'": sfig("x0"),
        "Globe3": globe(3),
    }
