"""Independent set and tour approximations against exact optima on small instances."""

from fractions import Fraction

from hypsep import mis_approx, tsp_approx
from hypsep.generators import cylinder, grid_diag, random_planar_triangulation
from hypsep.oracles import oracle_mis, oracle_tsp

if __name__ == "__main__":
    print("independent set")
    for name, p in [("triangulation(24)", random_planar_triangulation(24, 3)), ("cylinder(4, 6)", cylinder(4, 6)),
                    ("grid_diag(4)", grid_diag(4))]:
        res = mis_approx(p, Fraction(9, 10))
        print(f"  {name:<18} got {res.size:<3} optimum {oracle_mis(p.graph):<3} "
              f"groups {res.meta['groups']:<2} eps_eff {res.meta['epsilon_effective']}")
    print("tour")
    for name, p in [("triangulation(18)", random_planar_triangulation(18, 5)), ("cylinder(3, 6)", cylinder(3, 6)),
                    ("grid_diag(4)", grid_diag(4))]:
        res = tsp_approx(p, Fraction(1, 2))
        print(f"  {name:<18} got {res.length:<3} optimum {oracle_tsp(p.graph):<3} "
              f"groups {res.meta['groups']:<2} eps_eff {res.meta['epsilon_effective']}")
    big = random_planar_triangulation(600, 2)
    res = tsp_approx(big, Fraction(1, 3))
    print(f"  triangulation(600)  got {res.length} (n = 600, so the ratio is at most {res.length / 600:.2f})")
