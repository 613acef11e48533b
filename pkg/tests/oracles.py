"""Independent ground truth used by the tests.

Nothing here imports the search or calculus code: closures by Warshall,
hom-sets by trying every assignment, path counts by walking graphs, and
principal 3-dimensional shapes counted as planar trees.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


def warshall(nodes, edges) -> frozenset:
    nodes = list(nodes)
    reach = {(a, b) for a, b in edges}
    for k in nodes:
        for i in nodes:
            if (i, k) in reach:
                for j in nodes:
                    if (k, j) in reach:
                        reach.add((i, j))
    return frozenset(reach)


def _is_hom(S, T, m, kind) -> bool:
    for a, k in S.dims.items():
        t = m[a]
        if k == 0:
            continue
        if m[S.gamma[a]] != T.gamma[t]:
            return False
        if (a in S.empty) != (t in T.empty):
            return False
        if a in S.empty:
            if m[S.empty[a]] != T.empty[t]:
                return False
            continue
        image = sorted(m[x] for x in S.delta[a])
        if image != sorted(T.delta[t]) or len(set(image)) != len(image):
            return False
        if kind == "local":
            for x in S.delta[a]:
                for y in S.delta[a]:
                    if ((x, y) in S.tilde) != ((m[x], m[y]) in T.tilde):
                        return False
    if kind == "monotone":
        return all((m[a], m[b]) in T.tilde for a, b in S.tilde)
    return True


def brute_homs(S, T, kind: str = "hyper") -> list[dict]:
    """Every dimension-preserving assignment, filtered by the morphism clauses."""
    faces = sorted(S.dims)
    choices = [T.faces(S.dims[a]) for a in faces]
    out = []
    for combo in product(*choices):
        m = dict(zip(faces, combo))
        if _is_hom(S, T, m, kind):
            out.append(m)
    return out


def count_paths(edges: list[tuple[str, str, str]], vertices) -> int:
    """Number of directed paths (length 0 included), by explicit walking."""
    succ: dict = {v: [] for v in vertices}
    for _, s, t in edges:
        succ[s].append(t)
    total = 0
    stack = [v for v in vertices]
    while stack:
        v = stack.pop()
        total += 1
        stack.extend(succ[v])
    return total


@lru_cache(maxsize=None)
def _sequences(n: int, l: int) -> int:
    """Ordered slot sequences holding ``n`` nodes and ``l`` leaves in total."""
    if n < 0 or l < 0:
        return 0
    if n == 0 and l == 0:
        return 1
    total = _sequences(n, l - 1)
    for a in range(1, n + 1):
        for b in range(0, l + 1):
            t = planar_trees(a, b)
            if t:
                total += t * _sequences(n - a, l - b)
    return total


@lru_cache(maxsize=None)
def planar_trees(n: int, l: int) -> int:
    """Planar rooted trees with ``n`` nodes (any arity, 0 allowed) and ``l`` leaf slots."""
    if n <= 0:
        return 0
    return _sequences(n - 1, l)


def principal_dim3_buckets(max_faces: int) -> dict[int, int]:
    """Counts of principal 3-dimensional shapes by total face count.

    Such a shape is a top face over a pasting tree of 2-faces: ``N`` nodes
    and ``L`` unfilled slots give ``L + 1`` points, ``N + L`` edges, ``N``
    2-faces, plus the codomain 2-face and the top face; the tree with no
    node (a single edge) is the bubble case.
    """
    out: dict[int, int] = {}
    faces_of = lambda n, l: 2 * l + 2 * n + 3  # noqa: E731
    if faces_of(0, 1) <= max_faces:
        out[5] = out.get(5, 0) + 1
    for n in range(1, max_faces):
        for l in range(0, max_faces):
            f = faces_of(n, l)
            if f > max_faces:
                break
            t = planar_trees(n, l)
            if t:
                out[f] = out.get(f, 0) + t
    return dict(sorted(out.items()))
