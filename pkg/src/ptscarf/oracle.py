"""Independent numerical route: finite-difference Schroedinger oracle.

Second-order central differences on a uniform grid with Dirichlet walls
give a complex symmetric tridiagonal matrix.  All eigenvalues come from
an implicit-shift QL sweep adapted to complex symmetric tridiagonals
(complex rotations with c^2 + s^2 = 1, no conjugation), compiled with
numba.  Individual eigenvalues are polished by shifted inverse
iteration, and grid error is removed by Richardson extrapolation over a
grid doubling.

The oracle never imports the closed-form spectra, so agreement between
the two routes is evidence, not circularity.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.linalg import solve_banded

from .core import ScarfParams
from .errors import GridTooSmall, NoConvergence

# decay thresholds for the potential at the grid walls
DECAY_WARN = 1e-10
DECAY_FAIL = 1e-6

DEFAULT_N = 2000

# test hook: overrides the 30*N sweep cap when set
_cap: int | None = None


def default_box(p: ScarfParams) -> float:
    """Half-width that keeps the sech tails negligible at the walls."""
    return max(20.0 / p.alpha, 20.0)


@dataclass(frozen=True)
class Grid:
    L: float
    N: int

    def __post_init__(self):
        if not (self.L > 0):
            raise ValueError(f"L must be > 0, got {self.L!r}")
        if self.N < 3:
            raise ValueError(f"N must be >= 3, got {self.N!r}")

    @property
    def h(self) -> float:
        return 2.0 * self.L / (self.N + 1)

    @property
    def xs(self) -> np.ndarray:
        return -self.L + self.h * np.arange(1, self.N + 1)


@dataclass(frozen=True)
class TriDiag:
    diag: np.ndarray
    off: complex

    def __post_init__(self):
        object.__setattr__(self, "diag", np.asarray(self.diag, dtype=np.complex128))

    @property
    def size(self) -> int:
        return self.diag.shape[0]

    def matvec(self, v: np.ndarray) -> np.ndarray:
        w = self.diag * v
        w[:-1] += self.off * v[1:]
        w[1:] += self.off * v[:-1]
        return w


def build_hamiltonian(p: ScarfParams, selector, g: Grid) -> TriDiag:
    """-psi'' + V psi discretized on the interior points of [-L, L].

    selector(p, xs) -> complex potential samples.  The potential must
    have decayed at the walls: above 1e-10 a warning is issued, above
    1e-6 the box is rejected outright.
    """
    wall = np.max(np.abs(np.asarray(selector(p, np.array([-g.L, g.L])), dtype=complex)))
    if wall > DECAY_FAIL:
        raise GridTooSmall(
            f"|V| = {wall:.3e} at the walls x = +-{g.L}; enlarge the box"
        )
    if wall > DECAY_WARN:
        warnings.warn(
            f"potential only decayed to {wall:.3e} at the walls x = +-{g.L}",
            stacklevel=2,
        )
    v = np.asarray(selector(p, g.xs), dtype=np.complex128)
    if v.shape != (g.N,):
        raise ValueError(f"selector returned shape {v.shape}, expected ({g.N},)")
    h2 = g.h * g.h
    return TriDiag(2.0 / h2 + v, -1.0 / h2)


@njit(cache=True)
def _ql_implicit(d, e, maxit):  # pragma: no cover - exercised via eig_all
    """Implicit-shift QL for complex symmetric tridiagonals, in place.

    Complex-orthogonal rotations (c^2 + s^2 = 1).  Returns -1 on
    success, else the index where the sweep cap was hit.
    """
    n = d.shape[0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= 1e-15 * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if it >= maxit:
                return l
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.sqrt(g * g + 1.0)
            gpr = g + r
            gmr = g - r
            if abs(gmr) > abs(gpr):
                gpr = gmr
            g = d[m] - d[l] + e[l] / gpr
            s = 1.0 + 0.0j
            c = 1.0 + 0.0j
            p = 0.0 + 0.0j
            completed = True
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = np.sqrt(f * f + g * g)
                e[i + 1] = r
                if abs(r) < 1e-300:
                    # rotation annihilated; drop the shift and retry
                    d[i + 1] = d[i + 1] - p
                    e[m] = 0.0
                    completed = False
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if completed:
                d[l] = d[l] - p
                e[l] = g
                e[m] = 0.0
    return -1


def eig_all(m: TriDiag) -> np.ndarray:
    """All eigenvalues, sorted by (Re, Im).

    Raises NoConvergence if any eigenvalue fails to deflate within
    30 * N implicit sweeps.
    """
    n = m.size
    d = m.diag.copy()
    e = np.full(n, m.off, dtype=np.complex128)
    e[n - 1] = 0.0
    maxit = _cap if _cap is not None else 30 * n
    bad = _ql_implicit(d, e, maxit)
    if bad >= 0:
        raise NoConvergence(f"QL sweep cap reached at index {bad}", index=int(bad))
    if not np.all(np.isfinite(d)):
        raise NoConvergence("non-finite eigenvalue produced", index=-1)
    order = np.lexsort((d.imag, d.real))
    return d[order]


@dataclass(frozen=True)
class EigRefineResult:
    value: complex
    vector: np.ndarray
    iterations: int


def eig_refine(m: TriDiag, shift: complex, tol: float = 1e-12, maxit: int = 200) -> EigRefineResult:
    """Polish one eigenvalue by fixed-shift inverse iteration.

    The shift stays fixed so the iterate contracts onto the eigenvector
    nearest the shift (quotient-updating variants can settle on a
    distant eigenpair when started between levels); convergence is
    declared when successive Rayleigh quotients differ by < tol.  An
    exactly singular solve is broken by perturbing the shift by a
    relative 1e-12.
    """
    n = m.size
    ab = np.zeros((3, n), dtype=np.complex128)
    ab[0, 1:] = m.off
    ab[2, :-1] = m.off
    v = np.full(n, 1.0 / np.sqrt(n), dtype=np.complex128)
    sh = complex(shift)
    theta = sh
    for it in range(1, maxit + 1):
        ab[1, :] = m.diag - sh
        try:
            with np.errstate(all="ignore"):
                w = solve_banded((1, 1), ab, v)
            if not np.all(np.isfinite(w)):
                raise np.linalg.LinAlgError("singular solve")
        except np.linalg.LinAlgError:
            sh = sh + 1e-12 * (1.0 + abs(sh))
            continue
        nw = np.linalg.norm(w)
        if nw == 0 or not np.isfinite(nw):
            sh = sh + 1e-12 * (1.0 + abs(sh))
            continue
        v = w / nw
        av = m.matvec(v)
        bil = np.dot(v, v)  # complex bilinear form, natural for complex symmetric
        theta_new = np.dot(v, av) / bil if abs(bil) > 1e-8 else np.vdot(v, av)
        if it > 1 and abs(theta_new - theta) <= tol * max(1.0, abs(theta_new)):
            return EigRefineResult(complex(theta_new), v, it)
        theta = theta_new
    raise NoConvergence(f"inverse iteration did not settle in {maxit} steps")


def bound_candidates(eigs: np.ndarray, h: float) -> np.ndarray:
    """Eigenvalues safely below the discretized continuum edge."""
    eigs = np.asarray(eigs)
    return eigs[eigs.real < -10.0 * h * h]


@dataclass(frozen=True)
class MatchPair:
    analytic: complex
    numeric: complex
    abs_err: float
    rel_err: float
    ok: bool


@dataclass(frozen=True)
class MatchReport:
    pairs: tuple[MatchPair, ...]
    unmatched_analytic: tuple[complex, ...]
    unmatched_numeric: tuple[complex, ...]

    @property
    def all_matched(self) -> bool:
        return not self.unmatched_analytic and all(p.ok for p in self.pairs)

    @property
    def max_abs_err(self) -> float:
        return max((p.abs_err for p in self.pairs), default=0.0)


def _energy_list(values) -> list[complex]:
    entries = getattr(values, "entries", None)
    if entries is not None:
        return [e.E for e in entries if not e.beyond_cutoff]
    return [complex(v) for v in values]


def match_spectrum(analytic, numeric, tol_abs: float = 1e-6, tol_rel: float = 0.0) -> MatchReport:
    """Greedy nearest-neighbour pairing of predicted against computed levels.

    analytic may be a SpectrumResult (flagged entries are not
    predictions and are skipped) or a plain sequence.
    """
    pred = sorted(_energy_list(analytic), key=lambda z: (z.real, z.imag))
    pool = sorted((complex(v) for v in np.asarray(numeric).ravel()),
                  key=lambda z: (z.real, z.imag))
    pairs: list[MatchPair] = []
    unmatched: list[complex] = []
    for a in pred:
        if not pool:
            unmatched.append(a)
            continue
        j = min(range(len(pool)), key=lambda i: abs(pool[i] - a))
        b = pool.pop(j)
        err = abs(b - a)
        rel = err / abs(a) if a != 0 else float("inf") if err else 0.0
        pairs.append(MatchPair(a, b, err, rel, err <= max(tol_abs, tol_rel * abs(a))))
    return MatchReport(tuple(pairs), tuple(unmatched), tuple(pool))


def richardson_pair(
    p: ScarfParams,
    selector,
    L: float | None = None,
    N: int | None = None,
) -> list[complex]:
    """Bound levels with the leading O(h^2) grid error removed.

    Diagonalizes at N and 2N points, pairs the bound candidates
    greedily, and extrapolates E* = (4 E_{2N} - E_N) / 3.  Candidates
    present at only one resolution are dropped with a warning.
    """
    L = default_box(p) if L is None else float(L)
    N = DEFAULT_N if N is None else int(N)
    g1 = Grid(L, N)
    g2 = Grid(L, 2 * N)
    c1 = bound_candidates(eig_all(build_hamiltonian(p, selector, g1)), g1.h)
    c2 = list(bound_candidates(eig_all(build_hamiltonian(p, selector, g2)), g2.h))
    out: list[complex] = []
    for e1 in c1:
        if not c2:
            warnings.warn(f"bound candidate {e1} unmatched at the finer grid", stacklevel=2)
            continue
        j = min(range(len(c2)), key=lambda i: abs(c2[i] - e1))
        e2 = c2.pop(j)
        out.append((4.0 * e2 - e1) / 3.0)
    for e2 in c2:
        warnings.warn(f"bound candidate {e2} appears only at the finer grid", stacklevel=2)
    return sorted(out, key=lambda z: (z.real, z.imag))
