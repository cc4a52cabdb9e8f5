"""Closed-form spectra and eigenfunctions for the complex Scarf II family.

Eigenvalue ladders for the real-spectrum quadrants, conjugate-pair
eigenvalues on the line A = B - alpha/2 with C != 0, Jacobi polynomials
with arbitrary complex parameters, and the bound/resonance wavefunctions
built from them.

The Jacobi evaluator computes the terminating double-binomial sum in
exact rational-complex arithmetic (float inputs embed exactly), so the
returned value is the correctly rounded sum even when the terms cancel
catastrophically.  An independent three-term recurrence in n, also
carried exactly, serves as the cross-check route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import domains
from .core import TOL_LINE, Branch, FieldSample, ScarfParams
from .errors import (
    NotOnPTLine,
    NotRealPhase,
    NotSpectralSingularity,
    RecurrenceDegenerate,
)


# ---------------------------------------------------------------------------
# exact rational-complex arithmetic
# ---------------------------------------------------------------------------

class _FC:
    """Exact complex number with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @classmethod
    def from_complex(cls, z: complex) -> "_FC":
        z = complex(z)
        return cls(Fraction(z.real), Fraction(z.imag))

    def __add__(self, o):
        return _FC(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return _FC(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return _FC(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, o):
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return _FC((self.re * o.re + self.im * o.im) / d,
                   (self.im * o.re - self.re * o.im) / d)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


def _binom_fc(w: _FC, k: int) -> _FC:
    """Generalized binomial coefficient C(w, k) as a product, exactly."""
    r = _FC(1)
    for j in range(1, k + 1):
        r = r * _FC(w.re - k + j, w.im)
        r = _FC(r.re / j, r.im / j)
    return r


# ---------------------------------------------------------------------------
# Jacobi polynomials with complex parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JacobiArgs:
    n: int
    a: complex
    b: complex
    z: complex

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n!r}")


@lru_cache(maxsize=256)
def _sum_coefficients(n: int, a: complex, b: complex) -> tuple[_FC, ...]:
    """Coefficients C(n+a, n-s) C(n+b, s) of the double-binomial sum."""
    af = _FC.from_complex(a)
    bf = _FC.from_complex(b)
    out = []
    for s in range(n + 1):
        c1 = _binom_fc(_FC(af.re + n, af.im), n - s)
        c2 = _binom_fc(_FC(bf.re + n, bf.im), s)
        out.append(c1 * c2)
    return tuple(out)


def _jacobi_sum(n: int, a: complex, b: complex, z: complex) -> complex:
    coeffs = _sum_coefficients(n, complex(a), complex(b))
    zf = _FC.from_complex(z)
    half = Fraction(1, 2)
    zm = _FC((zf.re - 1) * half, zf.im * half)
    zp = _FC((zf.re + 1) * half, zf.im * half)
    pm = [_FC(1)]
    pp = [_FC(1)]
    for _ in range(n):
        pm.append(pm[-1] * zm)
        pp.append(pp[-1] * zp)
    total = _FC(0)
    for s in range(n + 1):
        total = total + coeffs[s] * pm[s] * pp[n - s]
    return total.to_complex()


def jacobi(args: JacobiArgs) -> complex:
    """P_n^{(a,b)}(z) by the terminating double-binomial sum.

    Gamma-free by construction, so negative-integer parameters (the
    resonance case b = -2n-1 in particular) stay finite.
    """
    return _jacobi_sum(args.n, args.a, args.b, args.z)


def jacobi_recurrence(args: JacobiArgs) -> complex:
    """P_n^{(a,b)}(z) by the three-term recurrence in n, carried exactly.

    Independent of the sum form; raises RecurrenceDegenerate when an
    intermediate leading coefficient vanishes exactly (the sum form is
    authoritative there).
    """
    n = args.n
    a = _FC.from_complex(args.a)
    b = _FC.from_complex(args.b)
    z = _FC.from_complex(args.z)
    one = _FC(1)
    half = _FC(Fraction(1, 2))
    if n == 0:
        return 1.0 + 0.0j
    p_prev = one
    p_cur = (a + one) + (a + b + _FC(2)) * (z - one) * half
    for k in range(2, n + 1):
        ab = a + b
        s = _FC(2 * k) + ab          # 2k + a + b
        lead = _FC(2 * k) * (_FC(k) + ab) * (s - _FC(2))
        if lead.is_zero():
            raise RecurrenceDegenerate(
                f"leading coefficient vanishes at intermediate order {k}"
            )
        t1 = (s - one) * ((s * (s - _FC(2))) * z + (a * a - b * b))
        t2 = _FC(2) * (_FC(k - 1) + a) * (_FC(k - 1) + b) * s
        p_next = (t1 * p_cur - t2 * p_prev) / lead
        p_prev, p_cur = p_cur, p_next
    return p_cur.to_complex()


# ---------------------------------------------------------------------------
# eigenvalue ladders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    E: complex
    beyond_cutoff: bool = False


@dataclass(frozen=True)
class SpectrumResult:
    branch: Branch
    entries: tuple[SpectrumEntry, ...]
    domain: domains.DomainClass

    def energies(self) -> list[complex]:
        return [e.E for e in self.entries]

    def bound_energies(self) -> list[complex]:
        return [e.E for e in self.entries if not e.beyond_cutoff]

    def pairs(self) -> list[tuple[int, complex]]:
        return [(e.n, e.E) for e in self.entries]


def _ladder_parameter(p: ScarfParams, branch: Branch) -> float:
    if branch is Branch.One:
        return p.A
    if branch is Branch.Two:
        return p.nu
    raise ValueError(f"real-spectrum ladders exist for branches One/Two, got {branch}")


def eigenvalues_real(p: ScarfParams, branch: Branch, n_max: int | str | None = "auto") -> SpectrumResult:
    """Real eigenvalue ladder of the chosen family.

    With mu the branch parameter (A for One, B - alpha/2 for Two):

      mu > 0:  E_n = -(mu - n alpha)^2 for n = 0, 1, ... while mu - n alpha > 0.
      mu < 0:  E_n = -(mu + n alpha)^2 for n = 1, 2, ... while mu + n alpha < 0.

    On the mu < 0 side the ladder descends from the partner family, and
    its n = 0 formula value is the partner's ground state, not an
    eigenvalue of this potential; Auto therefore starts at n = 1 there.
    Explicit n_max emits every index from 0 with non-bound entries
    flagged beyond_cutoff.
    """
    if p.C != 0:
        raise NotRealPhase(f"real ladders require C = 0, got C={p.C}")
    mu = _ladder_parameter(p, branch)
    al = p.alpha
    dom = domains.classify(p).domain

    def level(n: int) -> tuple[complex, bool]:
        if mu > 0:
            return complex(-(mu - n * al) ** 2, 0.0), not (mu - n * al > 0)
        if mu < 0:
            return complex(-(mu + n * al) ** 2, 0.0), not (n >= 1 and mu + n * al < 0)
        return complex(-(n * al) ** 2, 0.0), True

    entries: list[SpectrumEntry] = []
    if n_max in ("auto", None):
        n = 0
        while True:
            e, beyond = level(n)
            if not beyond:
                entries.append(SpectrumEntry(n, e))
            elif mu <= 0 and n == 0:
                pass  # the corrected ladder starts at n = 1
            else:
                break
            n += 1
    else:
        n_max = int(n_max)
        if n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {n_max}")
        for n in range(n_max + 1):
            e, beyond = level(n)
            entries.append(SpectrumEntry(n, e, beyond_cutoff=beyond))
    return SpectrumResult(branch, tuple(entries), dom)


def eigenvalues_complex(p: ScarfParams, n_max: int) -> tuple[SpectrumResult, SpectrumResult]:
    """Conjugate-pair ladders E_n^+- = -(n alpha - A +- iC)^2 on the line.

    The minus result is constructed as the elementwise conjugate of the
    plus result, so the pairing is exact by construction.
    """
    if p.C == 0 or not p.on_pt_line():
        raise NotOnPTLine(
            f"conjugate-pair ladder requires C != 0 and A = B - alpha/2; "
            f"got A={p.A}, B-alpha/2={p.nu}, C={p.C}"
        )
    n_max = int(n_max)
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    dom = domains.classify(p).domain
    plus = []
    minus = []
    for n in range(n_max + 1):
        e = -((n * p.alpha - p.A + 1j * p.C) ** 2)
        plus.append(SpectrumEntry(n, e))
        minus.append(SpectrumEntry(n, e.conjugate()))
    return (
        SpectrumResult(Branch.PlusPT, tuple(plus), dom),
        SpectrumResult(Branch.MinusPT, tuple(minus), dom),
    )


def normalizable_broken_levels(p: ScarfParams) -> int:
    """Number of square-integrable conjugate-pair levels: the n with n*alpha < A."""
    count = 0
    while count * p.alpha < p.A:
        count += 1
    return count


# ---------------------------------------------------------------------------
# eigenfunctions
# ---------------------------------------------------------------------------

def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return sign


def _psi(pw: complex, q: complex, a: complex, b: complex, n: int, alpha: float, x):
    """sech^pw * exp(q * gd) * P_n^{(a,b)}(i sinh), gd = arctan(sinh(alpha x))."""
    ax = alpha * np.asarray(x, dtype=float)
    sh = np.sinh(ax)
    log_sech = -np.log(np.cosh(ax))
    pref = np.exp(pw * log_sech + q * np.arctan(sh))
    flat = np.atleast_1d(sh).ravel()
    poly = np.array([_jacobi_sum(n, a, b, 1j * s) for s in flat])
    vals = pref * poly.reshape(np.shape(sh))
    return complex(vals) if np.isscalar(x) else vals


def eigenfunction_broken(p: ScarfParams, n: int, sign: int, x):
    """Unnormalized conjugate-pair wavefunction on the line A = B - alpha/2.

    The sign label follows the superpotential pair, and the wavefunction
    with a given sign carries the eigenvalue -(n alpha - A - sign*iC)^2,
    i.e. the opposite member of the eigenvalue pair (see
    eigenfunction_energy, which is the arbiter).
    """
    _check_sign(sign)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if p.C == 0 or not p.on_pt_line():
        raise NotOnPTLine(
            f"conjugate-pair wavefunctions require C != 0 and A = B - alpha/2; "
            f"got A={p.A}, B-alpha/2={p.nu}, C={p.C}"
        )
    al = p.alpha
    pw = (p.A + sign * 1j * p.C) / al
    q = -1j * (p.A + al / 2) / al - sign * p.C / al
    a = -sign * 2j * p.C / al
    b = -2 * p.A / al - 1
    return _psi(pw, q, a, b, n, al, x)


def eigenfunction_energy(p: ScarfParams, n: int, sign: int) -> complex:
    """Eigenvalue carried by eigenfunction_broken(p, n, sign)."""
    _check_sign(sign)
    return -((n * p.alpha - p.A - sign * 1j * p.C) ** 2)


def eigenfunction_ss(p: ScarfParams, n: int, sign: int, x):
    """Degenerate wavefunction at the spectral singularity A = n*alpha.

    Asymptotically a pure plane wave on both sides (a zero-width
    resonance), so it is oscillatory and non-normalizable; the modulus
    saturates to different plateaus on the two sides.
    """
    _check_sign(sign)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if abs(p.A - n * p.alpha) > TOL_LINE:
        raise NotSpectralSingularity(
            f"requires A = n*alpha; got A={p.A}, n*alpha={n * p.alpha}"
        )
    al = p.alpha
    pw = n + sign * 1j * p.C / al
    q = -1j * (n + 0.5) - sign * p.C / al
    a = -sign * 2j * p.C / al
    b = complex(-2 * n - 1)
    return _psi(pw, q, a, b, n, al, x)


def eigenfunction_sample(
    p: ScarfParams,
    n: int,
    sign: int,
    xs,
    normalize: str = "none",
    form: str = "auto",
) -> FieldSample:
    """Sample a closed-form wavefunction on a grid.

    form selects the conjugate-pair expression ("broken"), the
    singularity expression ("ss"), or picks whichever applies ("auto":
    the pair form when the point is on the line with C != 0, otherwise
    the singularity form).
    """
    xs = np.asarray(xs, dtype=float)
    if form == "auto":
        form = "broken" if (p.C != 0 and p.on_pt_line()) else "ss"
    if form == "broken":
        vals = eigenfunction_broken(p, n, sign, xs)
    elif form == "ss":
        vals = eigenfunction_ss(p, n, sign, xs)
    else:
        raise ValueError(f"form must be auto|broken|ss, got {form!r}")
    if normalize == "sup":
        m = np.max(np.abs(vals))
        if m > 0:
            vals = vals / m
    elif normalize != "none":
        raise ValueError(f"normalize must be none|sup, got {normalize!r}")
    return FieldSample(xs, vals)


# ---------------------------------------------------------------------------
# partner-spectrum ladder check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LadderReport:
    minus_levels: tuple[complex, ...]
    plus_levels: tuple[complex, ...]
    compared: int
    max_abs_err: float
    passed: bool


def susy_ladder_check(
    p: ScarfParams,
    branch: Branch,
    k: int,
    L: float | None = None,
    N: int | None = None,
    tol: float = 1e-6,
) -> LadderReport:
    """Check numerically that W^2 + W' and W^2 - W' share all levels
    except the ground state of the minus partner.

    Both partners are diagonalized by the oracle with Richardson
    extrapolation; the lowest k common levels are compared.
    """
    from . import oracle
    from .core import potential_minus_from_w, potential_plus_from_w

    if p.C != 0:
        raise NotRealPhase(f"ladder check requires C = 0, got C={p.C}")
    # parameter 0 is the free W == 0 edge: both partners empty, trivially paired
    if _ladder_parameter(p, branch) < 0:
        raise ValueError("ladder check requires a non-negative branch parameter")

    sel_minus = lambda q, xs: potential_minus_from_w(q, branch, xs)
    sel_plus = lambda q, xs: potential_plus_from_w(q, branch, xs)
    minus = oracle.richardson_pair(p, sel_minus, L=L, N=N)
    plus = oracle.richardson_pair(p, sel_plus, L=L, N=N)
    minus = sorted(minus, key=lambda z: (z.real, z.imag))
    plus = sorted(plus, key=lambda z: (z.real, z.imag))

    shifted = minus[1:]
    m = min(k, len(shifted), len(plus)) if shifted or plus else 0
    errs = [abs(shifted[i] - plus[i]) for i in range(m)]
    max_err = max(errs) if errs else 0.0
    # level counts must agree after removing the ground state
    passed = len(plus) == len(shifted) and all(e <= tol for e in errs)
    return LadderReport(tuple(minus), tuple(plus), m, max_err, passed)
