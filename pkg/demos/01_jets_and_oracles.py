"""Taylor jets against finite differences, and adaptive quadrature.

Every derivative in the package comes from jet arithmetic.  This script
shows a jet for a composite expression, compares each derivative with a
finite-difference estimate, then integrates the same expression.
"""

from eikhelix.expr import parse
from eikhelix.numerics import eval_jet, finite_diff_oracle, integrate

e = parse("exp(sin(s)) / (2 + s^2)")
at = 0.4
jet = eval_jet(e, at, 4)
print(f"f(s) = {e.source}  at s = {at}")
for k in range(1, 5):
    exact = jet.d[..., k]
    fd = finite_diff_oracle(e, at, k)
    print(f"  d^{k}f: jet {exact:+.12f}   finite difference {fd:+.12f}   diff {abs(exact - fd):.1e}")

print(f"integral over [-1, 1]: {integrate(e, -1.0, 1.0):.12f}")
