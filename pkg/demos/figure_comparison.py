"""Reproduce the two bound-comparison sweeps and print the verdicts.

Sweep one varies the coverage target m at t=6, k=20, v=4 over the top window
[v^t - 6v + 1, v^t]; sweep two varies k at the near-full target m = v^t - v.
The development bound (eq8) wins only at the very top m = v^t; one step below
full coverage the plain local-lemma bound (eq6) is already ahead, and it stays
ahead for every k.
"""

from pathlib import Path

from pcaforge import sweep
from pcaforge.artifact_io import write_sweep_csv

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

T, K, V = 6, 20, 4
VT = V**T

sweep_m = sweep(["eq6", "eq8"], "m", range(VT - 6 * V + 1, VT + 1), t=T, k=K, v=V)
write_sweep_csv(sweep_m, OUT / "compare_m_axis.csv")
print(f"wrote {OUT / 'compare_m_axis.csv'}")
print(f"{'m':>6} {'eq6':>10} {'eq8':>10}  winner")
for point in sweep_m.points:
    eq6 = point.results["eq6"].real_bound
    eq8 = point.results["eq8"].real_bound
    print(f"{point.value:>6} {eq6:>10.0f} {eq8:>10.0f}  {'eq6' if eq6 < eq8 else 'eq8'}")

sweep_k = sweep(["eq6", "eq8"], "k", range(12, 61, 4), t=T, v=V, m=VT - V)
write_sweep_csv(sweep_k, OUT / "compare_k_axis.csv")
print(f"\nwrote {OUT / 'compare_k_axis.csv'}")
wins = sum(
    p.results["eq6"].real_bound < p.results["eq8"].real_bound for p in sweep_k.points
)
print(f"at m = {VT - V}: eq6 below eq8 for {wins}/{len(sweep_k.points)} k values")
