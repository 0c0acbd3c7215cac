"""Separators on the three generator families, with an independent re-check."""

from hypsep import separator
from hypsep.generators import binary_tiling_patch, cylinder, random_planar_triangulation
from hypsep.oracles import oracle_components, oracle_is_geodesic_walk


def show(name, p):
    res = separator(p)
    g = p.graph
    geodesic = oracle_is_geodesic_walk(g, list(res.vertices), res.kind == "cycle")
    largest = oracle_components(g, res.vertices)[0]
    print(f"{name:<22} n={g.n:<5} {res.kind:<5} |Z|={res.size:<3} balance={float(res.balance):.3f} "
          f"largest={largest:<5} geodesic={geodesic} outcome={res.meta.get('outcome')} "
          f"degraded={res.meta['degraded']}")


if __name__ == "__main__":
    show("cylinder(5, 30)", cylinder(5, 30))
    for m in (3, 5, 7):
        show(f"binary_tiling({m})", binary_tiling_patch(m))
    for n in (200, 1000):
        show(f"triangulation({n})", random_planar_triangulation(n, 1))
