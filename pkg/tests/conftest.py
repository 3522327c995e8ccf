import random

import pytest

from gausscert.multipoly import FAMILIES, Poly, VarRef


def random_poly(rng: random.Random, max_terms=20, max_exp=3, max_coeff=100, max_index=2) -> Poly:
    pairs = []
    for _ in range(rng.randint(0, max_terms)):
        exps = {}
        for _ in range(rng.randint(0, 4)):
            v = VarRef(rng.choice(FAMILIES), rng.randint(0, max_index))
            exps[v] = rng.randint(1, max_exp)
        pairs.append((exps, rng.randint(-max_coeff, max_coeff)))
    return Poly.from_terms(pairs)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        ok, detail = results[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
