"""The twelve acceptance criteria at their stated tolerances and time budgets.

Each test prints one PASS/FAIL line (visible with ``pytest -s`` or in the
captured output of a failure).
"""

import pytest

from l2tor.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, capsys):
    c = run_criterion(number)
    with capsys.disabled():
        print(f"\n{c.summary()}")
    failing = [str(r) for r in c.rows if not r.passed]
    assert c.passed, "\n".join(failing) or f"over budget: {c.seconds:.2f}s"
