import random
from itertools import product

import pytest

from lapres import Multigraph


def cycle(n):
    return Multigraph.from_edges([(i, i % n + 1) for i in range(1, n + 1)])


def complete(n):
    return Multigraph.from_edges([(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def path(n):
    return Multigraph.from_edges([(i, i + 1) for i in range(1, n)])


def star(n):
    """Star on ``n`` vertices with the centre at 1 (the sink is the leaf ``n``)."""
    return Multigraph.from_edges([(1, j) for j in range(2, n + 1)])


C4 = cycle(4)
K4 = complete(4)
PATH3 = path(3)
STAR5 = star(5)
C4_DOUBLED = Multigraph.from_edges([(1, 2, 2), (2, 3), (3, 4), (4, 1)])


def random_multigraph(seed, max_vertices=6, max_mult=2):
    """Seeded connected multigraph on 3..max_vertices vertices."""
    rng = random.Random(seed)
    N = rng.randint(3, max_vertices)
    order = list(range(1, N + 1))
    rng.shuffle(order)
    edges = {}
    for k in range(1, N):
        a, b = order[k], order[rng.randrange(k)]
        edges[(min(a, b), max(a, b))] = rng.randint(1, max_mult)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            if (i, j) not in edges and rng.random() < 0.35:
                edges[(i, j)] = rng.randint(1, max_mult)
    return Multigraph.from_edges([(i, j, m) for (i, j), m in sorted(edges.items())], N)


RANDOM_SEEDS = list(range(10))
RANDOM_GRAPHS = [random_multigraph(1000 + s) for s in RANDOM_SEEDS]

NAMED_GRAPHS = {"C4": C4, "K4": K4, "path3": PATH3, "star5": STAR5, "C4_doubled": C4_DOUBLED}
TEST_GRAPHS = list(NAMED_GRAPHS.items()) + [(f"random{s}", G) for s, G in zip(RANDOM_SEEDS, RANDOM_GRAPHS)]

# small graphs for the expensive brute-force oracles
SMALL_GRAPHS = [(name, G) for name, G in TEST_GRAPHS if G.vertex_count <= 5]


def prufer_tree(seq, N):
    degree = [1] * (N + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, N + 1) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(1, N + 1) if degree[w] == 1]
    edges.append((u, v))
    return Multigraph.from_edges(edges, N)


def all_trees(N):
    if N == 1:
        return []
    if N == 2:
        return [Multigraph.from_edges([(1, 2)])]
    return [prufer_tree(seq, N) for seq in product(range(1, N + 1), repeat=N - 2)]


@pytest.fixture(params=[name for name, _ in TEST_GRAPHS])
def test_graph(request):
    return dict(TEST_GRAPHS)[request.param]
