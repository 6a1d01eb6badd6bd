"""Growth and Tauberian conditions on the reference corpus, then a full equivalence report."""
import json

from summakit import corpus_get, corpus_names, run_theorem4
from summakit.conditions import check_all

for name in corpus_names():
    print(f"== {name}")
    for rep in check_all(corpus_get(name)):
        print(f"   {rep.condition_id:<11} {rep.verdict:<12} const={rep.measured_constant:<12.6g} "
              f"exponent={rep.fitted_exponent:.3f}")

# One equivalence report in the same JSON layout the CLI emits.
rep = run_theorem4(corpus_get("log2"))
print(json.dumps({"verdict": rep.verdict, "max_disagreement": rep.max_disagreement}, indent=2))
