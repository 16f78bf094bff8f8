"""From an INI configuration to a JSON report and CSV series.

The same flow the ``eikhelix analyze`` command runs: parse a config, build
the frame trace, classify, write the report and one CSV per sampled
quantity into a temporary directory.
"""

import json
import tempfile

from eikhelix.reports import emit_plot_data, parse_config, run_analysis

CONFIG = """\
[curve]
x = a*cosh(s/sqrt(a^2 + b^2))
y = a*sinh(s/sqrt(a^2 + b^2))
z = b*s/sqrt(a^2 + b^2)
param.a = 1
param.b = 1
domain = -2, 2
samples = 64

[field]
f = x^2 + y^2 + z

[analysis]
checks = slant_helix, darboux_helix, darboux_slant_equivalence
"""

report = run_analysis(parse_config(CONFIG))
doc = report.document
print(f"kind {doc['kind']}, orientation {doc['orientation']}")
print("definitions:", {k: v["holds"] for k, v in report.definitions.items()})
for name, thm in report.theorems.items():
    status = "vacuous" if thm["vacuous"] else f"conclusions hold = {thm['conclusions_hold']}"
    print(f"theorem check {name}: {status}")
print("residuals:", json.dumps(doc["residuals"]))

with tempfile.TemporaryDirectory() as out:
    for path in emit_plot_data(report, out):
        print(f"  wrote {path.name}: {len(path.read_text().splitlines()) - 1} rows")
