"""Tour of the existence bounds at one desk-scale parameter point.

Evaluates every bound at (t=2, k=10, v=3) for a range of coverage targets m
and prints how the minimal row counts respond.  The union bound pays for all
C(k,t) column t-sets at once; the local-lemma bound only pays for the
neighborhood of one t-set, so it wins once k is moderately large.
"""

import pcaforge as pf

T, K, V = 2, 10, 3
VT = V**T

print(f"t={T}, k={K}, v={V}, v^t={VT}")
print(f"{'m':>4} {'union rows':>11} {'lll rows':>9} {'apca rows (eps=0.05)':>21}")
for m in range(2, VT + 1):
    union = pf.bound_pca_union(T, K, V, m)
    lll = pf.bound_pca_lll(T, K, V, m)
    apca = pf.bound_apca(T, V, m, 0.05)
    print(f"{m:>4} {union.n_rows:>11} {lll.n_rows:>9} {apca.n_rows:>21}")

print()
print("Full-coverage specials (m = v^t):")
cyc = pf.bound_apca_cyclic(T, V, 0.05)
frob = pf.bound_apca_frobenius(T, V, 0.05)
print(f"  cyclic development:  {cyc.n_rows} rows "
      f"(closed form {cyc.real_bound:.1f}, base {cyc.detail['base_rows']})")
print(f"  affine development:  {frob.n_rows} rows "
      f"(closed form {frob.real_bound:.1f}, base {frob.detail['base_rows']})")

upper, lower = pf.bound_can_reference(T, K, V)
print(f"  classical references: upper {upper:.1f}, lower {lower:.1f} (log2 scale)")

print()
print("Informational asymptotic value at m = v^t - v(t-1) + 1:")
m_star = VT - V * (T - 1) + 1
print(f"  {pf.bound_pca_asymptotic(T, K, V, m_star):.2f} "
      f"(compare lll rows {pf.bound_pca_lll(T, K, V, m_star).n_rows})")
