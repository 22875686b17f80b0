from __future__ import annotations

import pytest

from lieder.liecore import LieAlgebra

# criterion number -> list of (label, passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, label: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, []).append((label, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[crit]
        ok = all(p for _, p, _ in rows)
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({sum(p for _, p, _ in rows)}/{len(rows)})")
        for label, passed, detail in rows:
            if not passed:
                tr.write_line(f"    FAIL {label}: {detail}")


def algebra(dim, entries, labels=None) -> LieAlgebra:
    """Entries use 1-based indices, like the files: ``{(1, 2): {3: 1}}``."""
    return LieAlgebra.from_table(
        dim,
        {(i - 1, j - 1): {k - 1: c for k, c in terms.items()} for (i, j), terms in entries.items()},
        labels,
    )


@pytest.fixture
def h3():
    return algebra(3, {(1, 2): {3: 1}})


@pytest.fixture
def r2():
    return algebra(2, {(1, 2): {1: 1}})


@pytest.fixture
def so3():
    # [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
    return algebra(3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}})


@pytest.fixture
def f4():
    return algebra(4, {(1, 2): {3: 1}, (1, 3): {4: 1}})


@pytest.fixture
def r3():
    # H3 extended by x acting as diag(1, 0, 1)
    return algebra(4, {(1, 2): {3: 1}, (1, 4): {1: 1}, (3, 4): {3: 1}})


@pytest.fixture
def r3_prime():
    # R3 with [e1, x] = e1 + e3
    return algebra(4, {(1, 2): {3: 1}, (1, 4): {1: 1, 3: 1}, (3, 4): {3: 1}})


@pytest.fixture
def abelian_ext():
    # N = Q^2, [e1, x] = e1, e2 central
    return algebra(3, {(1, 3): {1: 1}})


@pytest.fixture
def early_exit_alg():
    # N = Q^2 with x acting as e1 -> e1 + e2, e2 -> e2; its nilpotent part is not inner in N
    return algebra(3, {(1, 3): {1: 1, 2: 1}, (2, 3): {2: 1}})


@pytest.fixture
def gap_alg():
    # F4 with x acting as diag(1, 1, 2, 3) plus the outer derivation e2 -> e4.
    # N is the nilradical, but diag(1, 1, 2, 3) does not commute with ad(x).
    return algebra(
        5,
        {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 5): {1: 1}, (2, 5): {2: 1, 4: 1}, (3, 5): {3: 2}, (4, 5): {4: 3}},
    )
