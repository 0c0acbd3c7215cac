"""Plant a grid subgraph in the binary-tiling host and compare independent set sizes."""

from hypsep.approx import exact_mis_group
from hypsep.generators import embed_grid, lower_bound_reduce, smallest_feasible_delta
from hypsep.graph_core import Graph
from hypsep.hyperbolic_metric import slimness_estimate
from hypsep.oracles import oracle_mis

if __name__ == "__main__":
    n = 2
    delta = smallest_feasible_delta(n)
    emb = embed_grid(n, delta)
    print(f"host for grid_diag({n}): {emb.host.plane.n} vertices, sampled slimness "
          f"{slimness_estimate(emb.host.plane.graph).slim}")
    for vs, es in [([0, 1, 2, 3], [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3)]), ([0, 1, 3], [(0, 1), (1, 3)])]:
        inst = lower_bound_reduce(n, vs, es, delta, emb)
        index = {v: i for i, v in enumerate(vs)}
        small = oracle_mis(Graph(len(vs), [(index[u], index[v]) for u, v in es]))
        big = len(exact_mis_group(inst.graph.graph, cap=10 ** 6))
        print(f"  subgraph {vs} {es}: G' has {inst.graph.n} vertices, MIS(G') = {big}, "
              f"MIS(G_sub) + offset = {small} + {inst.offset} = {small + inst.offset}")
