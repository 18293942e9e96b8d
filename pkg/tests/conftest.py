import itertools
import random

import pytest

from supertrees.hypergraph import build


def brute_isomorphic(G, H) -> bool:
    """Backtracking search for a vertex bijection mapping edges onto edges."""
    if (G.k, G.n, G.m) != (H.k, H.n, H.m) or G.degree_multiset() != H.degree_multiset():
        return False
    target = set(H.edges)
    dg, dh = G.degrees, H.degrees
    order = sorted(range(G.n), key=lambda v: -dg[v])
    image: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v):
        for j in G.incidence[v]:
            e = G.edges[j]
            if all(w in image for w in e) and tuple(sorted(image[w] for w in e)) not in target:
                return False
        return True

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in range(H.n):
            if w in used or dh[w] != dg[v]:
                continue
            image[v] = w
            used.add(w)
            if consistent(v) and extend(i + 1):
                return True
            del image[v]
            used.discard(w)
        return False

    return extend(0)


def random_relabel(G, rng: random.Random):
    perm = list(range(G.n))
    rng.shuffle(perm)
    return G.relabel(perm)


def labeled_tree_classes(n: int) -> int:
    """Number of unlabeled trees on n vertices via Pruefer sequences and brute isomorphism."""
    if n <= 2:
        return 1
    reps = []
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for v in seq:
            degree[v] += 1
        edges = []
        for v in seq:
            leaf = min(u for u in range(n) if degree[u] == 1)
            edges.append((leaf, v))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = [x for x in range(n) if degree[x] == 1]
        edges.append((u, w))
        T = build(2, n, edges)
        if not any(brute_isomorphic(T, R) for R in reps):
            reps.append(T)
    return len(reps)


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
