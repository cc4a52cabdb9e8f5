"""Classification of the (A, B, C, alpha) parameter space.

Internally everything works in the shifted coordinates (A, nu) with
nu = B - alpha/2: there the two conjugate ground-state hyperbolas are
A^2 - nu^2 = +-K^2 and their shared asymptotes are the exactly-diagonal
lines nu = +-A.  nu = A is the exceptional line (the two real-eigenvalue
families merge, and the C != 0 extension lives there); nu = -A is the
isospectral-deformation line.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import TOL_LINE, ScarfParams
from .errors import NotOnPTLine, NotSpectralSingularity, RequiresRealPhase


class DomainClass(Enum):
    SusyUnbroken = "SusyUnbroken"
    SusyBrokenI = "SusyBrokenI"
    SusyBrokenII = "SusyBrokenII"
    SusyBrokenIII = "SusyBrokenIII"
    PTBrokenLine = "PTBrokenLine"
    ExceptionalLine = "ExceptionalLine"
    IsospectralLine = "IsospectralLine"
    SpectralSingularity = "SpectralSingularity"
    NonPT = "NonPT"


class HyperbolaRegion(Enum):
    GroundStateBranchOne = "GroundStateBranchOne"
    GroundStateBranchTwo = "GroundStateBranchTwo"
    Degenerate = "Degenerate"


class EventKind(Enum):
    BranchSwitch = "BranchSwitch"
    ExceptionalCrossing = "ExceptionalCrossing"
    IsospectralCrossing = "IsospectralCrossing"


@dataclass(frozen=True)
class Classification:
    """Full classification of one parameter point."""

    domain: DomainClass
    boundary: bool = False
    ss_orders: tuple[int, ...] = ()


@dataclass(frozen=True)
class HyperbolaClass:
    """Which family owns the ground state, and the hyperbola constant K^2."""

    region: HyperbolaRegion
    K2: float

    def __post_init__(self):
        if self.K2 < 0:
            raise ValueError("K2 must be nonnegative")
        if (self.K2 == 0) != (self.region is HyperbolaRegion.Degenerate):
            raise ValueError("Degenerate iff K2 = 0")


@dataclass(frozen=True)
class PathEvent:
    """A crossing event along a parameter-space polyline.

    index is fractional: segment number plus the position within the
    segment, so events sort in traversal order.
    """

    index: float
    kind: EventKind
    location: tuple[float, float]


def classify_susy(p: ScarfParams) -> Classification:
    """Quadrant classification of the real-spectrum phase.

    Boundary points (A = 0 or B = alpha/2 exactly) are classified to the
    closed unbroken side and flagged.
    """
    if p.C != 0:
        raise RequiresRealPhase(f"classify_susy requires C = 0, got C={p.C}")
    boundary = p.A == 0 or p.nu == 0
    a_up = p.A >= 0
    b_up = p.nu >= 0
    if a_up and b_up:
        dom = DomainClass.SusyUnbroken
    elif not a_up and b_up:
        dom = DomainClass.SusyBrokenI
    elif a_up and not b_up:
        dom = DomainClass.SusyBrokenII
    else:
        dom = DomainClass.SusyBrokenIII
    return Classification(dom, boundary=boundary)


def classify_pt(p: ScarfParams, tol: float = TOL_LINE) -> DomainClass:
    """Top-level phase classification.

    C != 0 points are PTBrokenLine on A = B - alpha/2 and NonPT elsewhere.
    C = 0 points on an asymptote report the line itself (the exceptional
    line takes precedence at the intersection); other C = 0 points fall
    through to the quadrant classification.
    """
    if p.C != 0:
        return DomainClass.PTBrokenLine if p.on_pt_line(tol) else DomainClass.NonPT
    hits = on_asymptote(p, tol)
    if DomainClass.ExceptionalLine in hits:
        return DomainClass.ExceptionalLine
    if DomainClass.IsospectralLine in hits:
        return DomainClass.IsospectralLine
    return classify_susy(p).domain


def classify(p: ScarfParams, tol: float = TOL_LINE) -> Classification:
    """classify_pt refined with boundary flags and singularity orders."""
    dom = classify_pt(p, tol)
    if dom is DomainClass.PTBrokenLine:
        orders = tuple(spectral_singularity_orders(p, tol))
        if orders:
            return Classification(DomainClass.SpectralSingularity, ss_orders=orders)
        return Classification(dom)
    if dom in (DomainClass.ExceptionalLine, DomainClass.IsospectralLine, DomainClass.NonPT):
        return Classification(dom)
    return classify_susy(p)


def ground_state_branch(p: ScarfParams) -> HyperbolaClass:
    """Compare -A^2 and -nu^2: the deeper one owns the ground state.

    K2 is the (nonnegative) hyperbola constant |A^2 - nu^2|.
    """
    if p.C != 0:
        raise RequiresRealPhase(f"ground_state_branch requires C = 0, got C={p.C}")
    a2 = p.A * p.A
    n2 = p.nu * p.nu
    if a2 > n2:
        return HyperbolaClass(HyperbolaRegion.GroundStateBranchOne, a2 - n2)
    if n2 > a2:
        return HyperbolaClass(HyperbolaRegion.GroundStateBranchTwo, n2 - a2)
    return HyperbolaClass(HyperbolaRegion.Degenerate, 0.0)


def on_asymptote(p: ScarfParams, tol: float = TOL_LINE) -> tuple[DomainClass, ...]:
    """Which of the two asymptotes (if any) the point lies on.

    Returns a tuple drawn from {ExceptionalLine, IsospectralLine}; empty
    means neither, both members means the intersection A = 0, B = alpha/2.
    """
    hits = []
    if abs(p.A - p.nu) <= tol:
        hits.append(DomainClass.ExceptionalLine)
    if abs(p.A + p.nu) <= tol:
        hits.append(DomainClass.IsospectralLine)
    return tuple(hits)


def spectral_singularity_orders(p: ScarfParams, tol: float = TOL_LINE) -> list[int]:
    """All nonnegative n with A = n*alpha, given a PT-broken-line point.

    For tol < alpha/2 there is at most one such n.  The associated
    scattering energy is E = C^2 (see ss_energy).
    """
    if classify_pt(p, tol) is not DomainClass.PTBrokenLine:
        raise NotOnPTLine(
            f"spectral singularities require C != 0 and A = B - alpha/2; "
            f"got A={p.A}, B-alpha/2={p.nu}, C={p.C}"
        )
    n = round(p.A / p.alpha)
    if n >= 0 and abs(p.A - n * p.alpha) <= tol:
        return [int(n)]
    return []


def ss_energy(p: ScarfParams) -> float:
    """Energy of the zero-width resonance on the PT-broken line."""
    if not spectral_singularity_orders(p):
        raise NotSpectralSingularity(
            f"A = {p.A} is not a nonnegative multiple of alpha = {p.alpha}"
        )
    return p.C * p.C


def _bisect_zero(f, t_lo: float, t_hi: float, tol: float = 1e-9) -> float:
    """Bisection for a sign change of f on [t_lo, t_hi]."""
    f_lo = f(t_lo)
    while t_hi - t_lo > tol:
        mid = 0.5 * (t_lo + t_hi)
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_lo < 0) != (f_mid < 0):
            t_hi = mid
        else:
            t_lo, f_lo = mid, f_mid
    return 0.5 * (t_lo + t_hi)


def trace_path(points, alpha: float, C: float = 0.0) -> list[PathEvent]:
    """Walk a polyline in (A, B) and report asymptote crossings.

    Every asymptote crossing is emitted as an ExceptionalCrossing or
    IsospectralCrossing; a BranchSwitch is emitted at the same location
    whenever the ground-state region differs on the two sides.  Crossing
    locations are bisected to 1e-9 in the path parameter.
    """
    pts = [(float(a), float(b)) for a, b in points]
    if len(pts) < 2:
        raise ValueError("trace_path needs at least two points")

    def f_exc(a, b):
        return a - (b - alpha / 2)

    def f_iso(a, b):
        return a + (b - alpha / 2)

    events: list[PathEvent] = []
    for i in range(len(pts) - 1):
        (a0, b0), (a1, b1) = pts[i], pts[i + 1]

        def at(t):
            return a0 + t * (a1 - a0), b0 + t * (b1 - b0)

        crossings = []
        for fn, kind in ((f_exc, EventKind.ExceptionalCrossing), (f_iso, EventKind.IsospectralCrossing)):
            v0, v1 = fn(a0, b0), fn(a1, b1)
            if v0 * v1 < 0:
                t = _bisect_zero(lambda s, fn=fn: fn(*at(s)), 0.0, 1.0)
                crossings.append((t, kind))
        crossings.sort()
        for t, kind in crossings:
            loc = at(t)
            events.append(PathEvent(i + t, kind, loc))
            region = lambda a, b: ground_state_branch(ScarfParams(a, b, 0.0, alpha)).region
            # sample just off the crossing on each side, inside the segment
            eps = 1e-7
            lo, hi = max(0.0, t - eps), min(1.0, t + eps)
            if region(*at(lo)) is not region(*at(hi)):
                events.append(PathEvent(i + t, EventKind.BranchSwitch, loc))
    events.sort(key=lambda e: (e.index, e.kind.value))
    return events


def kdv_points(alpha: float) -> list[tuple[float, float]]:
    """The two marked points on the isospectral line tied to the
    stationary mKdV (deformation) and KdV (potential) identities."""
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    return [(alpha / 2, 0.0), (-alpha / 2, alpha)]
