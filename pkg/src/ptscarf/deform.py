"""Isospectral deformation of the first superpotential and its soliton
interpretation.

On the line B - alpha/2 = -A the Riccati correction
v = (nu - A)(tanh - i sech) solves the linearized Bernoulli equation
v' = 2 W v + v^2 exactly, so W + v generates the same minus-partner
potential.  The squared combinations v^2 +- v' reproduce the partner
potentials of v itself up to a constant (a Miura-type map), and on a
one-parameter sublocus they assemble into stationary KdV / mKdV
profiles.  Residual checks here are pointwise and exact-form based; no
fitting beyond a single scalar wave speed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Branch, ScarfParams, superpotential
from .errors import NotOnIsospectralLine

DEFAULT_XS = np.linspace(-5.0, 5.0, 21)
SOLITON_XS = np.linspace(-8.0, 8.0, 201)


@dataclass(frozen=True)
class DeformationCheck:
    max_residual: float
    sampled_at: np.ndarray
    passed: bool
    fitted_c: complex | None = None
    degenerate: bool = False
    detail: dict = field(default_factory=dict)


def _sech_tanh(p: ScarfParams, x):
    u = p.alpha * np.asarray(x, dtype=float)
    return 1.0 / np.cosh(u), np.tanh(u)


def deformation_v(p: ScarfParams, x):
    """v = (nu - A)(tanh(alpha x) - i sech(alpha x))."""
    s, t = _sech_tanh(p, x)
    g = p.nu - p.A
    out = g * (t - 1j * s)
    return complex(out) if np.isscalar(x) else out


def _v_derivatives(p: ScarfParams, x):
    """v and its first four derivatives, closed form."""
    s, t = _sech_tanh(p, x)
    g = p.nu - p.A
    al = p.alpha
    s2 = s * s
    v0 = g * (t - 1j * s)
    v1 = g * al * (s2 + 1j * s * t)
    v2 = g * al ** 2 * (-2.0 * s2 * t + 1j * s * (2.0 * s2 - 1.0))
    v3 = g * al ** 3 * ((4.0 * s2 - 6.0 * s2 * s2) + 1j * (s * t - 6.0 * s2 * s * t))
    v4 = g * al ** 4 * ((-8.0 * s2 + 24.0 * s2 * s2) * t
                        + 1j * (20.0 * s2 * s - s - 24.0 * s2 * s2 * s))
    return v0, v1, v2, v3, v4


def tilde_superpotential(p: ScarfParams, x):
    """The deformed generator W + v (same minus-partner potential on the line)."""
    return superpotential(p, Branch.One, x) + deformation_v(p, x)


def bernoulli_residual(p: ScarfParams, xs=None, tol: float = 1e-10) -> DeformationCheck:
    """Pointwise residual of v' - 2 W v - v^2, which vanishes exactly on
    the line nu = -A and nowhere else."""
    xs = DEFAULT_XS if xs is None else np.asarray(xs, dtype=float)
    v0, v1, _, _, _ = _v_derivatives(p, xs)
    w = superpotential(p, Branch.One, xs)
    res = v1 - 2.0 * w * v0 - v0 * v0
    m = float(np.max(np.abs(res)))
    return DeformationCheck(max_residual=m, sampled_at=xs, passed=m < tol)


# ---------------------------------------------------------------------------
# Miura-type identification of v^2 +- v'
# ---------------------------------------------------------------------------

def _require_iso(p: ScarfParams) -> None:
    if not p.on_isospectral_line():
        raise NotOnIsospectralLine(
            f"requires B - alpha/2 = -A; got A={p.A}, B-alpha/2={p.nu}"
        )


def _best_constant_offset(u, candidates: dict):
    """Pick the candidate whose difference from u is most nearly constant.

    Returns (name, offset, max residual after removing the offset)."""
    best = None
    for name, cand in candidates.items():
        diff = u - cand
        offset = complex(np.mean(diff))
        res = float(np.max(np.abs(diff - offset)))
        if best is None or res < best[2]:
            best = (name, offset, res)
    return best


def miura_check(p: ScarfParams, sign: int, xs=None, tol: float = 1e-10) -> DeformationCheck:
    """u = v^2 + sign*v' is again a family potential, at mapped parameters.

    v = g(tanh - i sech) with g = nu - A is itself a generator of the
    family, so its squared combinations land on closed-form members:
    with the vanishing-at-infinity normalization of potential_pt,

        v^2 - v'  =  potential_pt(A=g, B=-g)          + g^2
        v^2 + v'  =  potential_pt(A=g-alpha, B=-g)    + g^2

    and the rotated variant -v^2 + sign*i*v' (built from i*v) lands on
    C-extended members at (A=0, B=0, C=g) and (A=-alpha, B=0, C=g) with
    offset -g^2.  Both family members are offered and the identification
    is chosen by the most nearly constant difference; the evaluation
    goes through the independent coefficient formulas in core, so the
    agreement is a real identity, not a tautology.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    _require_iso(p)
    from .core import potential_general, potential_pt

    xs = DEFAULT_XS if xs is None else np.asarray(xs, dtype=float)
    v0, v1, _, _, _ = _v_derivatives(p, xs)
    g = p.nu - p.A
    al = p.alpha

    u = v0 * v0 + sign * v1
    members = {
        "minus": potential_pt(ScarfParams(A=g, B=-g, alpha=al), xs),
        "plus": potential_pt(ScarfParams(A=g - al, B=-g, alpha=al), xs),
    }
    name, offset, res = _best_constant_offset(u, members)

    u_rot = -v0 * v0 + sign * 1j * v1
    members_rot = {
        "minus": potential_general(ScarfParams(A=0.0, B=0.0, C=g, alpha=al), 1, xs),
        "plus": potential_general(ScarfParams(A=-al, B=0.0, C=g, alpha=al), 1, xs),
    }
    name_rot, offset_rot, res_rot = _best_constant_offset(u_rot, members_rot)

    expected = complex(g * g)
    scale = max(1.0, abs(expected))
    ok = (
        res < tol * scale
        and res_rot < tol * scale
        and abs(offset - expected) < tol * scale
        and abs(offset_rot + expected) < tol * scale
    )
    return DeformationCheck(
        max_residual=max(res, res_rot),
        sampled_at=xs,
        passed=ok,
        detail={
            "member": name,
            "offset": offset,
            "rotated_member": name_rot,
            "rotated_offset": offset_rot,
            "expected_offset": expected,
        },
    )


# ---------------------------------------------------------------------------
# profiles: callables xs -> (f, f', f''')
# ---------------------------------------------------------------------------

def deformation_profile(p: ScarfParams):
    """(v, v', v''') on a grid."""
    def prof(xs):
        v0, v1, _, v3, _ = _v_derivatives(p, np.asarray(xs, dtype=float))
        return v0, v1, v3
    return prof


def miura_profile(p: ScarfParams, sign: int):
    """(u, u', u''') for u = v^2 + sign*v'."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")

    def prof(xs):
        v0, v1, v2, v3, v4 = _v_derivatives(p, np.asarray(xs, dtype=float))
        u0 = v0 * v0 + sign * v1
        u1 = 2.0 * v0 * v1 + sign * v2
        u3 = 6.0 * v1 * v2 + 2.0 * v0 * v3 + sign * v4
        return u0, u1, u3
    return prof


def sech2_profile(a: complex, k: float, d: complex = 0.0):
    """(u, u', u''') for u = d + a sech^2(k x)."""
    def prof(xs):
        u = k * np.asarray(xs, dtype=float)
        s = 1.0 / np.cosh(u)
        t = np.tanh(u)
        s2 = s * s
        u0 = d + a * s2
        u1 = -2.0 * a * k * s2 * t
        u3 = a * k ** 3 * (-8.0 * s2 + 24.0 * s2 * s2) * t
        return u0, u1, u3
    return prof


def tanh_kink_profile(m: complex, k: float):
    """(v, v', v''') for v = m tanh(k x)."""
    def prof(xs):
        u = k * np.asarray(xs, dtype=float)
        s = 1.0 / np.cosh(u)
        s2 = s * s
        v0 = m * np.tanh(u)
        v1 = m * k * s2
        v3 = m * k ** 3 * (4.0 * s2 - 6.0 * s2 * s2)
        return v0, v1, v3
    return prof


def profile_sum(pa, pb):
    def prof(xs):
        a0, a1, a3 = pa(xs)
        b0, b1, b3 = pb(xs)
        return a0 + b0, a1 + b1, a3 + b3
    return prof


def profile_difference(pa, pb):
    def prof(xs):
        a0, a1, a3 = pa(xs)
        b0, b1, b3 = pb(xs)
        return a0 - b0, a1 - b1, a3 - b3
    return prof


def profile_scale(pa, scale: complex):
    def prof(xs):
        a0, a1, a3 = pa(xs)
        return scale * a0, scale * a1, scale * a3
    return prof


# ---------------------------------------------------------------------------
# stationary KdV / mKdV residuals
# ---------------------------------------------------------------------------

def _fit_speed(drive, f1) -> complex:
    """Least-squares c over samples of -c f' + drive = 0."""
    denom = float(np.sum(np.abs(f1) ** 2))
    if denom == 0.0:
        return 0.0 + 0.0j
    return complex(np.sum(np.conj(f1) * drive) / denom)


def _is_flat(f0, f1) -> bool:
    """Constant profile up to roundoff: derivative negligible against the value."""
    return float(np.max(np.abs(f1))) <= 1e-12 * max(1.0, float(np.max(np.abs(f0))))


def stationary_kdv_residual(
    u_fn,
    c: complex | str = "fit",
    xs=None,
    convention: float = -6.0,
    rel_tol: float = 1e-8,
) -> DeformationCheck:
    """Residual of -c u' + convention * u u' + u''' on a grid.

    convention is the coefficient of the nonlinear term (+6 or -6; the
    default -6 is the sign under which the classical bright soliton
    -(c/2) sech^2(sqrt(c) x / 2) is stationary).  c = "fit" solves the
    scalar least-squares problem first.  A constant profile satisfies
    the equation trivially and is flagged degenerate.
    """
    if float(convention) not in (6.0, -6.0):
        raise ValueError(f"convention must be +6 or -6, got {convention!r}")
    xs = SOLITON_XS if xs is None else np.asarray(xs, dtype=float)
    u0, u1, u3 = u_fn(xs)
    drive = float(convention) * u0 * u1 + u3
    degenerate = _is_flat(u0, u1)
    if isinstance(c, str):
        if c != "fit":
            raise ValueError(f"c must be a number or 'fit', got {c!r}")
        c_val = 0.0 + 0.0j if degenerate else _fit_speed(drive, u1)
    else:
        c_val = complex(c)
    res = -c_val * u1 + drive
    m = float(np.max(np.abs(res)))
    scale = float(np.max(np.abs(u3)))
    if degenerate:
        # a constant profile solves the equation exactly; require the
        # sampled derivatives to sit at roundoff level
        u_mag = max(1.0, float(np.max(np.abs(u0))))
        passed = m <= 1e-10 * u_mag * u_mag
    else:
        passed = m <= rel_tol * scale if scale > 0 else m == 0.0
    return DeformationCheck(
        max_residual=m,
        sampled_at=xs,
        passed=passed,
        fitted_c=c_val,
        degenerate=degenerate,
        detail={"scale": scale},
    )


def stationary_mkdv_residual(
    v_fn,
    convention: float,
    c: complex | str = "fit",
    xs=None,
    rel_tol: float = 1e-8,
) -> DeformationCheck:
    """Residual of -c v' + convention * v^2 v' + v''' on a grid.

    Same contract as the KdV form but with the cubic nonlinearity;
    convention must be chosen explicitly (+6 or -6)."""
    if float(convention) not in (6.0, -6.0):
        raise ValueError(f"convention must be +6 or -6, got {convention!r}")
    xs = SOLITON_XS if xs is None else np.asarray(xs, dtype=float)
    v0, v1, v3 = v_fn(xs)
    drive = float(convention) * v0 * v0 * v1 + v3
    degenerate = _is_flat(v0, v1)
    if isinstance(c, str):
        if c != "fit":
            raise ValueError(f"c must be a number or 'fit', got {c!r}")
        c_val = 0.0 + 0.0j if degenerate else _fit_speed(drive, v1)
    else:
        c_val = complex(c)
    res = -c_val * v1 + drive
    m = float(np.max(np.abs(res)))
    scale = float(np.max(np.abs(v3)))
    if degenerate:
        v_mag = max(1.0, float(np.max(np.abs(v0))))
        passed = m <= 1e-10 * v_mag ** 3
    else:
        passed = m <= rel_tol * scale if scale > 0 else m == 0.0
    return DeformationCheck(
        max_residual=m,
        sampled_at=xs,
        passed=passed,
        fitted_c=c_val,
        degenerate=degenerate,
        detail={"scale": scale},
    )


def partner_consistency(p: ScarfParams, xs=None, tol: float = 1e-10) -> DeformationCheck:
    """On the line, W and W + v generate the same minus partner; check
    w^2 - w' agreement pointwise between the two generators."""
    _require_iso(p)
    xs = DEFAULT_XS if xs is None else np.asarray(xs, dtype=float)
    from .core import superpotential_derivative

    w = superpotential(p, Branch.One, xs)
    w1 = superpotential_derivative(p, Branch.One, xs)
    v0, v1, _, _, _ = _v_derivatives(p, xs)
    vm_plain = w * w - w1
    vm_tilde = (w + v0) * (w + v0) - (w1 + v1)
    m = float(np.max(np.abs(vm_tilde - vm_plain)))
    return DeformationCheck(max_residual=m, sampled_at=xs, passed=m < tol)
