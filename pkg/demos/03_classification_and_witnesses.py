"""Helix definitions and characterization checks.

The field x^2 + y^2 + z makes the null curve an eikonal slant helix for every
pairing, but its Hessian is not zero, so each characterization check is
vacuous.  The linear field z has a parallel gradient and makes the axis
check meaningful.  Curves integrated from prescribed curvatures then
exercise both directions of the biconditional checks.
"""

from eikhelix import classifiers as C
from eikhelix import witnesses as W
from eikhelix.curves import CurveSpec, ScalarFieldSpec
from eikhelix.frames import frame_trace

trace = frame_trace(CurveSpec.from_text("sinh(s)", "cosh(s)", "s", domain=(-2, 2), n_samples=64))

for text in ("x^2 + y^2 + z", "z"):
    data = C.along_curve(ScalarFieldSpec.from_text(text), trace)
    print(f"field f = {text}")
    for name, fn in C.NULL_DEFINITIONS.items():
        v = fn(data)
        print(f"  {name:22s} holds={v.holds!s:5s} center={v.report.center:+.6f}")
    report = C.null_helix_axis_check(data)
    if report.vacuous:
        print("  axis check: vacuous, the Hessian of f is not zero")
    else:
        print(f"  axis check: conclusions hold = {report.conclusions_hold}")

print("\nintegrated witnesses")
for name, build in W.ALL_WITNESSES.items():
    w = build()
    table = C.NONNULL_THEOREMS if w.data.kind == "nonnull" else C.NULL_THEOREMS
    live = [k for k, fn in table.items() if not fn(w.data).vacuous]
    ok = all(table[k](w.data).conclusions_hold for k in live)
    print(f"  {name:32s} residual {w.residual:.1e}  non-vacuous checks {len(live)}  all hold {ok}")
