"""Acceptance criteria, one test each, at the stated tolerances.

Every test prints a single PASS/FAIL line with the measured numbers.  Run
directly (`python3 tests/test_acceptance.py`) for the lines alone.
"""

import os

import pytest

from ffbias.checks import CHECKS

os.environ.setdefault("FFBIAS_THREADS", "1")

NAMES = {
    1: "oracle_equivalence",
    2: "riemann_hypothesis",
    3: "constants_beta_gamma",
    4: "bias_function_sign",
    5: "hankel_decay_ratio",
    6: "saddle_point_extraction",
    7: "explicit_formula_decay",
    8: "fixed_k_residual",
    9: "real_character_parity",
    10: "large_k_bias_dominance",
    11: "exactness",
}


@pytest.mark.parametrize("number", sorted(CHECKS), ids=[f"{i:02d}_{NAMES[i]}" for i in sorted(CHECKS)])
def test_criterion(number, capsys):
    res = CHECKS[number](False)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail


if __name__ == "__main__":
    for i in sorted(CHECKS):
        print(CHECKS[i](False).line(), flush=True)
