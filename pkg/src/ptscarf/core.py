"""Parameter records, potentials, superpotentials, and the optics mapping.

The potential family is the complexified Scarf II well

    V(x) = -[A(A+alpha) + B^2] sech^2(alpha x) + i B(2A+alpha) sech(alpha x) tanh(alpha x)

together with its one-parameter extension in C.  All evaluators accept a
scalar or an ndarray for x and broadcast elementwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isfinite

import numpy as np

from .errors import BranchUnavailable

# Absolute tolerance for the codimension-1 constraints A = B - alpha/2
# and A = n*alpha.  Exact-input workflows dominate, so this is tight.
TOL_LINE = 1e-9


class Branch(Enum):
    """Superpotential selector.

    One and Two are the two real-eigenvalue families; PlusPT and MinusPT
    are the conjugate pair that exists only on the line A = B - alpha/2
    with C != 0.
    """

    One = "one"
    Two = "two"
    PlusPT = "plus_pt"
    MinusPT = "minus_pt"


@dataclass(frozen=True)
class ScarfParams:
    """Parameter tuple (A, B, C, alpha) of the potential family.

    A: depth parameter, B: strength of the imaginary part, C: strength of
    the extension that breaks the real-spectrum phase, alpha: inverse width.
    """

    A: float
    B: float
    C: float = 0.0
    alpha: float = 1.0

    def __post_init__(self):
        for name in ("A", "B", "C", "alpha"):
            v = getattr(self, name)
            if not isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha!r}")

    @property
    def nu(self) -> float:
        """Shifted second parameter B - alpha/2; the natural ordinate."""
        return self.B - self.alpha / 2

    def on_pt_line(self, tol: float = TOL_LINE) -> bool:
        return abs(self.A - self.nu) <= tol

    def on_isospectral_line(self, tol: float = TOL_LINE) -> bool:
        return abs(self.A + self.nu) <= tol


@dataclass(frozen=True)
class OpticsMap:
    """Vacuum wavenumber, background permittivity, and incidence angle."""

    k0: float
    eps_b: float
    theta: float = 0.0

    def __post_init__(self):
        if not (isfinite(self.k0) and self.k0 > 0):
            raise ValueError(f"k0 must be positive, got {self.k0!r}")
        if not (isfinite(self.eps_b) and self.eps_b > 0):
            raise ValueError(f"eps_b must be positive, got {self.eps_b!r}")
        if not (0 <= self.theta < np.pi / 2):
            raise ValueError(f"theta must lie in [0, pi/2), got {self.theta!r}")


@dataclass(frozen=True)
class FieldSample:
    """A uniform grid of positions with complex amplitudes."""

    xs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", vals)
        if xs.ndim != 1 or xs.size < 2:
            raise ValueError("xs must be a 1-d array of at least two positions")
        if vals.shape != xs.shape:
            raise ValueError("values must have the same shape as xs")
        d = np.diff(xs)
        if np.any(d <= 0):
            raise ValueError("xs must be strictly increasing")
        # uniform spacing within 1e-12 relative
        if (d.max() - d.min()) > 1e-12 * d.mean():
            raise ValueError("xs must be uniformly spaced")

    @property
    def spacing(self) -> float:
        return float((self.xs[-1] - self.xs[0]) / (self.xs.size - 1))


def sech(y):
    return 1.0 / np.cosh(y)


def _w_coefficients(p: ScarfParams, branch: Branch) -> tuple[complex, complex]:
    """Return (P, Q) with W(x) = P tanh(alpha x) + Q sech(alpha x)."""
    if branch is Branch.One:
        return complex(p.A), 1j * p.B
    if branch is Branch.Two:
        return complex(p.nu), 1j * (p.A + p.alpha / 2)
    # conjugate pair: defined only on the line with a nonzero C
    if p.C == 0:
        raise BranchUnavailable(f"{branch.name} requires C != 0")
    if not p.on_pt_line():
        raise BranchUnavailable(
            f"{branch.name} requires A = B - alpha/2; got A={p.A}, B-alpha/2={p.nu}"
        )
    if branch is Branch.PlusPT:
        return p.A + 1j * p.C, p.C + 1j * p.B
    return p.A - 1j * p.C, -p.C + 1j * p.B


def superpotential(p: ScarfParams, branch: Branch, x):
    """Evaluate the chosen superpotential W(x)."""
    tc, sc = _w_coefficients(p, branch)
    ax = p.alpha * np.asarray(x, dtype=float)
    w = tc * np.tanh(ax) + sc * sech(ax)
    return complex(w) if np.isscalar(x) else w


def superpotential_derivative(p: ScarfParams, branch: Branch, x):
    """Closed-form dW/dx for the chosen branch."""
    tc, sc = _w_coefficients(p, branch)
    ax = p.alpha * np.asarray(x, dtype=float)
    s = sech(ax)
    dw = p.alpha * (tc * s * s - sc * s * np.tanh(ax))
    return complex(dw) if np.isscalar(x) else dw


def potential_pt(p: ScarfParams, x):
    """The PT-symmetric potential of the family (C plays no role here)."""
    A, B, al = p.A, p.B, p.alpha
    ax = al * np.asarray(x, dtype=float)
    s = sech(ax)
    v = -(A * (A + al) + B * B) * s * s + 1j * B * (2 * A + al) * s * np.tanh(ax)
    return complex(v) if np.isscalar(x) else v


def potential_general(p: ScarfParams, sign: int, x):
    """Full two-term potential for the chosen +/- value of sign.

    Reduces to potential_pt at C = 0 and is PT-symmetric exactly when
    A = B - alpha/2.  The even/odd coefficients are kept as written, with
    the odd-term prefactor -i(sign*iC - B) expanded to sign*C + iB.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    al = p.alpha
    aa = p.A + sign * 1j * p.C
    bb = sign * p.C + 1j * p.B
    ax = al * np.asarray(x, dtype=float)
    s = sech(ax)
    v = -(aa * (aa + al) - bb * bb) * s * s + bb * (2 * aa + al) * s * np.tanh(ax)
    return complex(v) if np.isscalar(x) else v


def potential_minus_from_w(p: ScarfParams, branch: Branch, x, h: float | None = None):
    """W^2 - W' shifted to vanish at infinity (the constant W(inf)^2 is removed).

    The closed-form derivative is used by default; pass h for a central
    finite-difference cross-check.
    """
    w = superpotential(p, branch, x)
    if h is None:
        dw = superpotential_derivative(p, branch, x)
    else:
        if h <= 0:
            raise ValueError(f"h must be > 0, got {h!r}")
        xx = np.asarray(x, dtype=float)
        dw = (superpotential(p, branch, xx + h) - superpotential(p, branch, xx - h)) / (2 * h)
    tc, _ = _w_coefficients(p, branch)
    v = w * w - dw - tc * tc
    return complex(v) if np.isscalar(x) else v


def potential_plus_from_w(p: ScarfParams, branch: Branch, x, h: float | None = None):
    """Partner potential W^2 + W', shifted to vanish at infinity."""
    w = superpotential(p, branch, x)
    if h is None:
        dw = superpotential_derivative(p, branch, x)
    else:
        if h <= 0:
            raise ValueError(f"h must be > 0, got {h!r}")
        xx = np.asarray(x, dtype=float)
        dw = (superpotential(p, branch, xx + h) - superpotential(p, branch, xx - h)) / (2 * h)
    tc, _ = _w_coefficients(p, branch)
    v = w * w + dw - tc * tc
    return complex(v) if np.isscalar(x) else v


def energy_from_incidence(o: OpticsMap) -> float:
    """Scattering energy seen by the 1-d reduction: E = k0^2 eps_b cos^2(theta)."""
    c = np.cos(o.theta)
    return float(o.k0 * o.k0 * o.eps_b * c * c)


def permittivity(p: ScarfParams, o: OpticsMap, x):
    """Permittivity profile eps(x) = eps_b - V(x)/k0^2 realizing the potential."""
    v = potential_pt(p, x)
    eps = o.eps_b - np.asarray(v) / (o.k0 * o.k0)
    return complex(eps) if np.isscalar(x) else eps


def refractive_index(p: ScarfParams, o: OpticsMap, x):
    """Pointwise refractive index n(x) = sqrt(eps(x)), principal branch."""
    eps = permittivity(p, o, x)
    n = np.sqrt(np.asarray(eps, dtype=complex))
    return complex(n) if np.isscalar(x) else n


def refractive_index_profile(p: ScarfParams, o: OpticsMap, xs) -> FieldSample:
    """Sampled n(x) with branch continuity enforced along the profile.

    The principal square root can jump branches when eps(x) crosses the
    negative real axis; consecutive samples whose phase jumps by more than
    pi/2 are sign-flipped to keep the profile continuous.
    """
    xs = np.asarray(xs, dtype=float)
    n = np.sqrt(permittivity(p, o, xs).astype(complex))
    n = enforce_root_continuity(n)
    return FieldSample(xs, n)


def enforce_root_continuity(vals: np.ndarray) -> np.ndarray:
    """Sign-flip samples so consecutive phases never jump by more than pi/2."""
    out = np.array(vals, dtype=complex, copy=True)
    for j in range(1, out.size):
        if out[j - 1] != 0 and abs(np.angle(out[j] / out[j - 1])) > np.pi / 2:
            out[j] = -out[j]
    return out
