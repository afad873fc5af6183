"""One-call analysis: certificates + probe grid + rendered picture.

analyze() runs the critical-fiber pipeline, scans a probe grid, checks the two
never disagree, and packages everything with deterministic JSON/text/SVG
output.  Equivalent CLI:

    toric-fiber-lab analyze --input triangle.json --json --svg out.svg
"""

import pathlib
from fractions import Fraction as F

from toric_fiber_lab import analyze, make_polytope, report_to_text, write_svg

triangle = make_polytope(2, [((1, 0), F(0)), ((0, 1), F(0)), ((-5, -3), F(-15))])

report = analyze(triangle, seed=0)
print(report_to_text(report))

out = pathlib.Path("p135.svg")
write_svg(report, str(out))
print(f"wrote {out} ({out.stat().st_size} bytes)")
print("red dots = certified critical fibers, gray = probe-displaceable,")
print("white = unknown (no probe found, no certificate)")
