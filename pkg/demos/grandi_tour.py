"""A tour of 1 - 1 + 1 - ... through every summation method in the package.

Run with ``python demos/grandi_tour.py``.  Takes a few seconds.
"""
import numpy as np

from summakit import Method, corpus_get, summate, trace
from summakit.conditions import check_T1

s = corpus_get("grandi")

# The partial sums never settle: 1, 0, 1, 0, ...
_, c = s.head(8)
print("partial sums:", np.cumsum(c.real))

# Abel means sum (-1)^n e^{-n y} = 1/(1 + e^{-y}) creep up on 1/2 as y -> 0.
tr = trace(Method("abel"), s, [0.5, 0.1, 0.01, 0.001])
for smp in tr.samples:
    print(f"abel  y={smp.param:<6g} mean={smp.value.real:.9f}  route={smp.route}")

# Every method in the panel agrees on 1/2.
print()
for m in [Method("abel"), Method("cesaro", 1), Method("riesz", 1), Method("riesz", 2),
          Method("gamma", 1), Method("gamma", 2), Method("gamma", 2.5), Method("lebesgue")]:
    est = summate(s, m)
    print(f"{m.label:<10} {est.value.real:.10f}  err={est.error_estimate:.1e}  "
          f"converged={est.converged}  accel={est.accelerator}")

# The growth hypothesis behind the equivalence is not met here: sum_{n<=x} n
# grows like x^2/2, so agreement above is a property of this series, not a
# consequence of the equivalence result.
rep = check_T1(s)
print(f"\nT1 check: verdict={rep.verdict}, fitted exponent {rep.fitted_exponent:.3f}")
