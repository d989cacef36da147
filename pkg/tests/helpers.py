
from fa2layout.graph import from_edges


def random_graph(rng, n, p=0.4, weighted=True, self_loops=False):
    """Small random directed graph; nodes named by index."""
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j and not self_loops:
                continue
            if rng.random() < p / (2 if i != j else 4):
                w = float(rng.uniform(0.1, 5.0)) if weighted else 1.0
                edges.append((str(i), str(j), w))
    return from_edges(edges, nodes=[str(i) for i in range(n)])


def edge_indices(graph):
    return [(graph.index(e.source), graph.index(e.target), e.weight) for e in graph.edges]
