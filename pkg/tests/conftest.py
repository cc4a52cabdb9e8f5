"""Shared helpers and the acceptance-report collector.

test_acceptance.py records one verdict line per criterion; the terminal
summary hook prints them after the run and writes acceptance_report.txt
so the per-criterion outcomes survive a quiet invocation.
"""

from __future__ import annotations

import pathlib

import numpy as np

ACCEPTANCE_LINES: list[tuple[int, str]] = []


def record_criterion(num: int, verdict: str, detail: str) -> None:
    ACCEPTANCE_LINES.append((num, f"criterion {num:2d} [{verdict}] {detail}"))


def multiset_gap(a, b, window: int = 12) -> float:
    """Greedy nearest-match distance between two equal-size complex multisets.

    Elementwise comparison after lexicographic sorting misreports pairs
    whose real parts tie only to roundoff, so each element is matched
    against the nearest unused partner within a sort-index window.
    """
    a = sorted(a, key=lambda z: (z.real, z.imag))
    b = sorted(b, key=lambda z: (z.real, z.imag))
    assert len(a) == len(b)
    used = [False] * len(b)
    worst = 0.0
    for i, x in enumerate(a):
        lo, hi = max(0, i - window), min(len(b), i + window + 1)
        best = float("inf")
        best_j = None
        for j in range(lo, hi):
            if not used[j]:
                d = abs(x - b[j])
                if d < best:
                    best, best_j = d, j
        assert best_j is not None, "window too small for multiset match"
        used[best_j] = True
        worst = max(worst, best)
    return worst


def schrodinger_residual(psi_fn, v_fn, E: complex, window: float, centers: int = 41,
                         h: float = 1e-3) -> float:
    """max |-psi'' + V psi - E psi| / max |psi| with fourth-order FD psi''."""
    xs = np.linspace(-window, window, centers)
    offsets = np.array([-2.0, -1.0, 0.0, 1.0, 2.0]) * h
    weights = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / (12.0 * h * h)
    worst = 0.0
    amp = 0.0
    for x in xs:
        stencil = np.array([psi_fn(x + d) for d in offsets])
        d2 = np.dot(weights, stencil)
        val = stencil[2]
        res = abs(-d2 + (v_fn(x) - E) * val)
        worst = max(worst, res)
        amp = max(amp, abs(val))
    return worst / amp


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    lines = [line for _, line in sorted(ACCEPTANCE_LINES)]
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
    report = pathlib.Path(__file__).resolve().parent.parent / "acceptance_report.txt"
    report.write_text("\n".join(lines) + "\n")
