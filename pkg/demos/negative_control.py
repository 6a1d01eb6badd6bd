"""Why the growth hypothesis matters: 0 - 1 + 2 - 3 + ...

Abel means converge to -1/4, while the Cesaro means of order 1 keep
oscillating.  The T1 check flags the failure with exponent near 2.
"""
from summakit import Method, corpus_get, summate
from summakit.conditions import check_T1

s = corpus_get("abel_only")

abel = summate(s, Method("abel"))
print(f"abel:      {abel.value.real:+.8f}  converged={abel.converged}")

for beta in (1, 2):
    est = summate(s, Method("cesaro", beta))
    print(f"cesaro[{beta}]: {est.value.real:+.8f}  converged={est.converged}  err={est.error_estimate:.2e}")

rep = check_T1(s)
print(f"T1: verdict={rep.verdict}  exponent={rep.fitted_exponent:.3f}  probed x in {rep.probe_range}")
