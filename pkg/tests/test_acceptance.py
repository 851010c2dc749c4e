"""Acceptance criteria, each at its stated instance count and tolerance.

Every test prints one PASS/FAIL line (visible with ``pytest -s`` or in the
captured output of a failure) and then asserts the result.
"""

import numpy as np
import pytest

from grodiag import verification as v

SEED = 20261017

CRITERIA = [
    ("1 Mobius = classical", v.check_mobius_matches_classical, dict(n=200), 120),
    ("2 positivity", v.check_positivity, dict(n=1000), 60),
    ("3 order reversing", v.check_order_reversing, dict(n=1000), 60),
    ("4 corner sums", v.check_corner_sums, dict(n=1000), 60),
    ("5 box lemma", v.check_box_lemma, dict(n=200), 120),
    ("6 bottleneck vs oracle", v.check_bottleneck_oracle, dict(n=500), 120),
    ("7 stability", v.check_stability, dict(n=200), 120),
    ("8 interpolation", v.check_interpolation, dict(n=50, slack=1e-9), 180),
    ("9 finab golden", v.check_finab_golden, dict(), 1),
]


@pytest.mark.parametrize("label,check,kwargs,budget", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, check, kwargs, budget, capsys):
    rng = np.random.default_rng([SEED, int(label.split()[0])])
    result = check(rng, **kwargs)
    within = result.seconds <= budget
    with capsys.disabled():
        print(f"\n[criterion {label}] {result.line()}"
              + ("" if within else f"  (over the {budget}s budget)"))
    assert result.passed, result.failures
    assert within, f"took {result.seconds:.1f}s, budget {budget}s"
