"""Shared acceptance-criterion bookkeeping.

test_acceptance.py registers one verdict per criterion; after the run a
summary section prints one PASS/FAIL line for each so the whole gate is
readable at a glance.
"""

ACCEPTANCE_LABELS = {
    1: "round trips: four forms reconstruct 50 random tensors at 1e-10",
    2: "gauge: identical spectra across forms; mixed D = direct SVD",
    3: "normalization: per-site residuals and boundary scalar",
    4: "canonical-form check passes fresh, fails 1% weight perturbations",
    5: "truncation: discarded weight matches dense differencing; GHZ chi=1",
    6: "overlap integrals: closed form vs 64-node quadrature",
    7: "oscillator: alpha/gamma sums, symmetry, norm, wavefunctions, spectra",
    8: "figure properties: element decay and parity zeros",
    9: "coefficient() vs to_dense() exhaustive on small instances",
}

ACCEPTANCE_RESULTS: dict[int, bool] = {}


def record_criterion(num: int, passed: bool) -> None:
    ACCEPTANCE_RESULTS[num] = bool(passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LABELS):
        if num in ACCEPTANCE_RESULTS:
            status = "PASS" if ACCEPTANCE_RESULTS[num] else "FAIL"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(f"criterion {num}: {ACCEPTANCE_LABELS[num]} ... {status}")
