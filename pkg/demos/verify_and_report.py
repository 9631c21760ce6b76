"""Verify an array file and write a defect report.

Builds a deliberately defective array (a good strength-2 core plus one
constant column), saves it, reloads it, and walks the verification surface:
per-pair coverage counts, the partial and almost-coverage predicates with
their witnesses, completeness at a few thresholds, and the defect CSV.
"""

from pathlib import Path

import numpy as np

import pcaforge as pf
from pcaforge.artifact_io import defects_csv_text, read_array, write_array

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

core = np.array([[0, 0, 0, 0], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
flawed = pf.Array(np.hstack([core, np.zeros((5, 1), dtype=np.int64)]), 2)
path = OUT / "flawed.pca"
write_array(flawed, path, claims={"t": 2, "m": 4})
print(f"wrote {path}")

array, header = read_array(path)
print(f"loaded {array.rows} x {array.cols} over v={array.v}, claims {header.claims}")

profile = pf.coverage_profile(array, 2)
print(f"\nper-pair distinct counts: {profile.counts.tolist()}")
print(f"min_count = {profile.min_count}")

check = pf.is_pca(array, 2, 4)
print(f"\nfull-coverage check: {'pass' if check.ok else 'fail'}")
if not check.ok:
    print(f"  first defective pair {check.witness.tset} covers only {check.witness.count}")

apca = pf.is_apca(array, 2, 4, epsilon=0.3)
print(f"almost-coverage at epsilon=0.3: {'pass' if apca.ok else 'fail'} "
      f"({len(apca.defects)} defective, {apca.allowed} allowed)")

for q in (0.5, 0.75, 1.0):
    print(f"completeness(q={q}) = {pf.completeness(array, q, 2):.4f}")

csv_text = defects_csv_text(profile.defective(4), array.v, 2)
(OUT / "flawed_defects.csv").write_text(csv_text)
print(f"\ndefect report:\n{csv_text}")
