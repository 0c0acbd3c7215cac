"""Boundary size of weak r-divisions on cylinders, with fitted log-log slopes."""

from hypsep.cli import bench_rows, fit_exponents

if __name__ == "__main__":
    rows = bench_rows("cylinder", [200, 800, 3200], [16, 64, 256], 4)
    print(f"{'n':>5} {'r':>4} {'groups':>6} {'boundary':>8}")
    for row in rows:
        print(f"{row['n']:>5} {row['r']:>4} {row['groups']:>6} {row['boundary']:>8}")
    fit = fit_exponents(rows)
    print("slope vs n at fixed r:", {r: round(s, 2) for r, s in fit["vs_n"].items() if s})
    print("slope vs 1/sqrt(r) at fixed n:", {n: round(s, 2) for n, s in fit["vs_inv_sqrt_r"].items() if s})
