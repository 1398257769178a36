"""Bigeneric initial ideal and where admissible bidegrees start.

We compute the initial ideal after random coordinate changes in both
factors (over F_65521) and compare the bidegrees of its generators with a
grid of admissibility probes.  A generator sitting at (a+1, b) right next to
a column that is admissible from b upward would be a contradiction.
"""

from pathlib import Path

from biproj.bipoly import load_system
from biproj.gb import admissible_probes, bigin, cor55_report
from biproj.kernelalg import FieldSpec

HERE = Path(__file__).resolve().parent
sys = load_system(HERE / "systems" / "running.json", FieldSpec.prime(65521))

res = bigin(sys, seed=0)
print("bigin generators (x-degree, y-degree):")
for g in res.to_json()["generators"]:
    print(f"   {g['monomial']:<14} {tuple(g['bidegree'])}")
print("same result for all seeds:", res.stable)

probes = admissible_probes(sys, 4, 6)
print("\nadmissible grid (rows a, columns b = 0..6):")
for a in range(5):
    print(f"  a={a}: " + " ".join("A" if probes[(a, b)] else "." for b in range(7)))

report = cor55_report(probes, res.bidegrees)
print("\nconsistent:", report.consistent, " columns checked:", len(report.checked),
      " violations:", report.violations)
