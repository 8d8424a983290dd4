"""Pseudo-planes: continuous angle fields over the plane.

A pseudo-plane carries an angle field omega with values in (0, 4*pi]; a
point is elliptic, euclidean or hyperbolic as omega is below, at or above
2*pi. The module provides several field forms (constant, radial limiting
ring, lifted from a height function, sampled grid), curve-existence
residuals in Cartesian and polar form, a fixed-step RK4 integrator for
phase-plane orbits, spiral-sequence predicates, and Jacobian classification
of singular points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .errors import (
    BadParameters,
    EmptySequence,
    NoConvergence,
    NonFinite,
    NonMonotoneRho,
    NotElliptic,
    NotSingular,
    OriginUndefined,
    OutOfDomain,
    VerticalTangent,
)
from .map_core import TOL_ANGLE, PointClass

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi

Point = tuple[float, float]


class OmegaField:
    """Base interface: omega(x, y) in (0, 4*pi] on the declared domain."""

    def omega(self, x: float, y: float) -> float:
        raise NotImplementedError

    def omega_polar(self, rho: float, theta: float) -> float:
        return self.omega(rho * math.cos(theta), rho * math.sin(theta))


@dataclass(frozen=True)
class ConstantField(OmegaField):
    eta: float

    def __post_init__(self) -> None:
        if not (0.0 < self.eta <= FOUR_PI):
            raise BadParameters(f"omega = {self.eta} outside (0, 4*pi]")

    def omega(self, x: float, y: float) -> float:
        return self.eta


@dataclass(frozen=True)
class RadialRingField(OmegaField):
    """omega(rho) = 2*(pi -/+ rho0 / (theta0 * rho)); the circle rho = rho0
    is the limiting ring of the companion orbit family. The domain is
    restricted to rho >= rho0 / (pi * |theta0|), which keeps omega inside
    (0, 4*pi]."""

    rho0: float
    theta0: float
    branch: str = "-"

    def __post_init__(self) -> None:
        if self.rho0 <= 0.0 or self.theta0 == 0.0:
            raise BadParameters("need rho0 > 0 and theta0 != 0")
        if self.branch not in ("+", "-"):
            raise BadParameters(f"branch must be '+' or '-', got {self.branch!r}")

    @property
    def rho_min(self) -> float:
        return self.rho0 / (math.pi * abs(self.theta0))

    def omega(self, x: float, y: float) -> float:
        rho = math.hypot(x, y)
        return self._omega_rho(rho)

    def omega_polar(self, rho: float, theta: float) -> float:
        return self._omega_rho(rho)

    def _omega_rho(self, rho: float) -> float:
        if rho < self.rho_min * (1.0 - 1e-12):
            raise OutOfDomain(
                f"rho = {rho} below the field's domain bound {self.rho_min}"
            )
        term = self.rho0 / (self.theta0 * rho)
        if self.branch == "-":
            return 2.0 * (math.pi - term)
        return 2.0 * (math.pi + term)

    def companion_system(
        self,
    ) -> tuple[Callable[[float, float], float], Callable[[float, float], float]]:
        """Autonomous realization of the orbit family rho = rho0 * e^(theta0
        * s) with the construction parameter decaying as s(t) = s(0) e^(-t):
        radially d(rho)/dt = -rho * ln(rho / rho0), with unit angular speed.
        Every orbit converges monotonically in radius to the ring."""
        rho0 = self.rho0

        def p(x: float, y: float) -> float:
            rho = math.hypot(x, y)
            return -x * math.log(rho / rho0) - y

        def q(x: float, y: float) -> float:
            rho = math.hypot(x, y)
            return -y * math.log(rho / rho0) + x

        return p, q


@dataclass(frozen=True)
class LiftedField(OmegaField):
    """Projection of the surface z = height(x, y): omega = 2*(pi - angle of
    (x, y, z) with the base plane). Undefined exactly at the origin unless
    the height vanishes there."""

    height: Callable[[float, float], float]

    def omega(self, x: float, y: float) -> float:
        z = self.height(x, y)
        r = math.hypot(x, y)
        if r == 0.0:
            if z == 0.0:
                return TWO_PI
            raise OriginUndefined("lifted angle undefined at the origin with z != 0")
        return 2.0 * (math.pi - math.atan(z / r))


class GridField(OmegaField):
    """Bilinear interpolation of omega samples on a rectangular lattice."""

    def __init__(
        self,
        xs: Sequence[float],
        ys: Sequence[float],
        values: Sequence[Sequence[float]],
    ) -> None:
        if len(xs) < 2 or len(ys) < 2:
            raise BadParameters("grid needs at least 2 samples per axis")
        if len(values) != len(ys) or any(len(row) != len(xs) for row in values):
            raise BadParameters("values must be shaped (len(ys), len(xs))")
        for row in values:
            for v in row:
                if not (0.0 < v <= FOUR_PI):
                    raise BadParameters(f"grid omega {v} outside (0, 4*pi]")
        self.xs = tuple(float(x) for x in xs)
        self.ys = tuple(float(y) for y in ys)
        self.values = tuple(tuple(float(v) for v in row) for row in values)

    def omega(self, x: float, y: float) -> float:
        xs, ys = self.xs, self.ys
        if not (xs[0] <= x <= xs[-1] and ys[0] <= y <= ys[-1]):
            raise OutOfDomain(f"({x}, {y}) outside the sampled rectangle")
        i = max(0, min(len(xs) - 2, _cell_index(xs, x)))
        j = max(0, min(len(ys) - 2, _cell_index(ys, y)))
        tx = (x - xs[i]) / (xs[i + 1] - xs[i])
        ty = (y - ys[j]) / (ys[j + 1] - ys[j])
        v00 = self.values[j][i]
        v10 = self.values[j][i + 1]
        v01 = self.values[j + 1][i]
        v11 = self.values[j + 1][i + 1]
        return (
            v00 * (1 - tx) * (1 - ty)
            + v10 * tx * (1 - ty)
            + v01 * (1 - tx) * ty
            + v11 * tx * ty
        )


def _cell_index(knots: tuple[float, ...], x: float) -> int:
    lo, hi = 0, len(knots) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if knots[mid] <= x:
            lo = mid
        else:
            hi = mid
    return lo


def lift_omega(height: Callable[[float, float], float]) -> LiftedField:
    return LiftedField(height)


def limiting_ring_field(rho0: float, theta0: float, branch: str = "-") -> RadialRingField:
    return RadialRingField(rho0, theta0, branch)


# --- point and field classification -----------------------------------------


def classify_point_p(field: OmegaField, point: Point) -> PointClass:
    w = field.omega(*point)
    if w < TWO_PI - TOL_ANGLE:
        return PointClass.ELLIPTIC
    if w > TWO_PI + TOL_ANGLE:
        return PointClass.HYPERBOLIC
    return PointClass.EUCLIDEAN


class FieldClass(Enum):
    CP1 = "euclidean"
    CP2 = "elliptic"
    CP3 = "hyperbolic"
    CP4 = "mixed"


def classify_field(
    field: OmegaField,
    rect: tuple[float, float, float, float],
    samples: int = 64,
) -> FieldClass:
    """Sampled classification over a rectangle: CP1-CP3 when every sample
    falls in one class, CP4 as soon as two classes are observed."""
    if samples < 4:
        raise BadParameters("need at least 4 samples")
    xmin, ymin, xmax, ymax = rect
    per_axis = max(2, math.isqrt(samples))
    seen: set[PointClass] = set()
    for i in range(per_axis):
        for j in range(per_axis):
            x = xmin + (xmax - xmin) * i / (per_axis - 1)
            y = ymin + (ymax - ymin) * j / (per_axis - 1)
            try:
                seen.add(classify_point_p(field, (x, y)))
            except (OutOfDomain, OriginUndefined):
                continue
            if len(seen) > 1:
                return FieldClass.CP4
    if seen == {PointClass.EUCLIDEAN}:
        return FieldClass.CP1
    if seen == {PointClass.ELLIPTIC}:
        return FieldClass.CP2
    if seen == {PointClass.HYPERBOLIC}:
        return FieldClass.CP3
    return FieldClass.CP4


def straightness_check(
    field: OmegaField, segment: tuple[Point, Point], samples: int = 64
) -> bool:
    """A straight segment can exist only where omega is 2*pi throughout."""
    (x0, y0), (x1, y1) = segment
    for k in range(samples):
        t = k / (samples - 1) if samples > 1 else 0.5
        w = field.omega(x0 + t * (x1 - x0), y0 + t * (y1 - y0))
        if abs(w - TWO_PI) >= TOL_ANGLE:
            return False
    return True


def intermediate_euclidean(
    field: OmegaField,
    elliptic_point: Point,
    hyperbolic_point: Point,
    samples: int = 200,
) -> Point:
    """Bisect the segment between an elliptic and a hyperbolic point down to
    a euclidean witness; continuity of the field guarantees one exists."""
    if classify_point_p(field, elliptic_point) is not PointClass.ELLIPTIC:
        raise ValueError("first endpoint must classify elliptic")
    if classify_point_p(field, hyperbolic_point) is not PointClass.HYPERBOLIC:
        raise ValueError("second endpoint must classify hyperbolic")
    lo, hi = elliptic_point, hyperbolic_point
    for _ in range(samples):
        mid = ((lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0)
        cls = classify_point_p(field, mid)
        if cls is PointClass.EUCLIDEAN:
            return mid
        if cls is PointClass.ELLIPTIC:
            lo = mid
        else:
            hi = mid
        if math.hypot(hi[0] - lo[0], hi[1] - lo[1]) < 1e-15:
            w = field.omega(*mid)
            if abs(w - TWO_PI) < 1e-6:
                return mid
            raise NoConvergence(
                "no euclidean point found; the field is discontinuous here"
            )
    return ((lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0)


# --- curve residuals ----------------------------------------------------------


def _omega_values(
    omega_source: OmegaField | Sequence[float], samples: Sequence[Point]
) -> list[float]:
    if isinstance(omega_source, OmegaField):
        return [omega_source.omega(x, y) for x, y in samples]
    values = list(omega_source)
    if len(values) != len(samples):
        raise ValueError("omega sample count must match curve samples")
    return values


def _signs(sign: int | Sequence[int], n: int) -> list[int]:
    if isinstance(sign, (int, float)):
        return [int(sign)] * n
    out = list(int(s) for s in sign)
    if len(out) != n:
        raise ValueError("sign count must match curve samples")
    return out


def curve_residual(
    omega_source: OmegaField | Sequence[float],
    samples: Sequence[Point],
    sign: int | Sequence[int],
) -> float:
    """Max |(pi - omega/2) * (1 + (dy/dx)^2) - sign| over interior samples.

    A curve can exist in the field only where this residual vanishes.
    Slopes come from central differences; near-vertical steps are refused.
    """
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    omegas = _omega_values(omega_source, samples)
    signs = _signs(sign, len(samples))
    worst = 0.0
    for i in range(1, len(samples) - 1):
        dx = samples[i + 1][0] - samples[i - 1][0]
        if abs(dx) < 1e-14:
            raise VerticalTangent(f"vertical tangent near sample {i}")
        slope = (samples[i + 1][1] - samples[i - 1][1]) / dx
        lhs = (math.pi - omegas[i] / 2.0) * (1.0 + slope * slope)
        worst = max(worst, abs(lhs - signs[i]))
    return worst


def polar_curve_residual(
    omega_source: OmegaField | Sequence[float],
    samples: Sequence[tuple[float, float]],
    sign: int | Sequence[int],
) -> float:
    """Max |(pi - omega/2) - sign * dtheta/drho| over interior samples of a
    polar curve (rho strictly monotone)."""
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    rhos = [s[0] for s in samples]
    steps = [rhos[i + 1] - rhos[i] for i in range(len(rhos) - 1)]
    if not (all(d > 0 for d in steps) or all(d < 0 for d in steps)):
        raise NonMonotoneRho("rho must be strictly monotone across samples")
    if isinstance(omega_source, OmegaField):
        omegas = [omega_source.omega_polar(r, t) for r, t in samples]
    else:
        omegas = list(omega_source)
        if len(omegas) != len(samples):
            raise ValueError("omega sample count must match curve samples")
    signs = _signs(sign, len(samples))
    worst = 0.0
    for i in range(1, len(samples) - 1):
        drho = samples[i + 1][0] - samples[i - 1][0]
        dtheta = samples[i + 1][1] - samples[i - 1][1]
        lhs = math.pi - omegas[i] / 2.0
        worst = max(worst, abs(lhs - signs[i] * dtheta / drho))
    return worst


def omega_from_ode(
    f: Callable[[float, float], float],
    samples: Sequence[Point],
    sign: int | Sequence[int],
) -> tuple[float, ...]:
    """Angle field values making the slope field's integral curves exist:
    omega = 2*(pi - sign / (1 + f^2))."""
    signs = _signs(sign, len(samples))
    out = []
    for (x, y), s in zip(samples, signs):
        fx = f(x, y)
        out.append(2.0 * (math.pi - s / (1.0 + fx * fx)))
    return tuple(out)


# --- constant-omega curves -----------------------------------------------------


def closed_curve_params(eta: float) -> tuple[float, float]:
    """(perimeter, radius) of the closed constant-omega curve: the closure
    identity s*eta = 2*(s-2)*pi and the circle relation eta = 2*pi - 2/r
    give s = 4*pi/(2*pi - eta) and r = 2/(2*pi - eta), hence s = 2*pi*r."""
    if not (0.0 < eta < TWO_PI):
        raise NotElliptic(f"eta = {eta} admits no closed curve (need 0 < eta < 2*pi)")
    s = 4.0 * math.pi / (TWO_PI - eta)
    r = 2.0 / (TWO_PI - eta)
    return (s, r)


class SpiralKind(Enum):
    ELLIPTIC_IN = "elliptic-in"
    ELLIPTIC_OUT = "elliptic-out"
    HYPERBOLIC_IN = "hyperbolic-in"
    HYPERBOLIC_OUT = "hyperbolic-out"


def check_spiral_condition(
    eta: float, s_sequence: Sequence[float], kind: SpiralKind
) -> bool:
    """Literal spiral-sequence predicates: for each 1-indexed i the arc
    value s_i must satisfy s_i*eta < 2*(s_i - 2i)*pi (elliptic in-spiral,
    hyperbolic out-spiral) or the reversed strict inequality (elliptic out,
    hyperbolic in). The source quantifies over a decreasing sequence; the
    ordering is the caller's business and is not enforced here."""
    if len(s_sequence) == 0:
        raise EmptySequence("need at least one arc value")
    if any(s <= 0 for s in s_sequence):
        raise ValueError("arc values must be positive")
    less = kind in (SpiralKind.ELLIPTIC_IN, SpiralKind.HYPERBOLIC_OUT)
    for i, s in enumerate(s_sequence, start=1):
        rhs = 2.0 * (s - 2 * i) * math.pi
        if less and not (s * eta < rhs):
            return False
        if not less and not (s * eta > rhs):
            return False
    return True


# --- orbits ---------------------------------------------------------------------


class OrbitStatus(Enum):
    HORIZON = "horizon"
    STAGNATED = "stagnated"
    DOMAIN_EXIT = "domain-exit"


@dataclass(frozen=True)
class Orbit:
    times: tuple[float, ...]
    points: tuple[Point, ...]
    step: float
    status: OrbitStatus

    def radii(self) -> tuple[float, ...]:
        return tuple(math.hypot(x, y) for x, y in self.points)


def integrate_ode(
    p: Callable[[float, float], float],
    q: Callable[[float, float], float],
    start: Point,
    step: float,
    horizon: float,
) -> Orbit:
    """Classical fixed-step RK4 for dx/dt = p, dy/dt = q.

    Stops at the horizon, on leaving a field's domain, or on stagnation
    (speed below 1e-12). NaN or infinite field values raise NonFinite.
    """
    if step <= 0.0:
        raise BadParameters("step must be positive")
    x, y = float(start[0]), float(start[1])
    times = [0.0]
    points: list[Point] = [(x, y)]
    n_steps = int(round(horizon / step))
    status = OrbitStatus.HORIZON

    def rhs(xx: float, yy: float) -> tuple[float, float]:
        vx, vy = p(xx, yy), q(xx, yy)
        if not (math.isfinite(vx) and math.isfinite(vy)):
            raise NonFinite(f"field returned non-finite velocity at ({xx}, {yy})")
        return vx, vy

    t = 0.0
    for _ in range(n_steps):
        try:
            v0 = rhs(x, y)
            if math.hypot(*v0) < 1e-12:
                status = OrbitStatus.STAGNATED
                break
            h = step
            k1 = v0
            k2 = rhs(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1])
            k3 = rhs(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1])
            k4 = rhs(x + h * k3[0], y + h * k3[1])
        except OutOfDomain:
            status = OrbitStatus.DOMAIN_EXIT
            break
        x += h * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]) / 6.0
        y += h * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]) / 6.0
        t += h
        times.append(t)
        points.append((x, y))
    return Orbit(tuple(times), tuple(points), step, status)


def integrate_slope(
    f: Callable[[float, float], float],
    start: Point,
    step: float,
    horizon: float,
) -> Orbit:
    """Integral curve of dy/dx = f(x, y), marched in x."""
    return integrate_ode(lambda x, y: 1.0, f, start, step, horizon)


# --- singular points --------------------------------------------------------------


class SingularClass(Enum):
    KNOT = "knot"
    CRITICAL_KNOT = "critical-knot"
    DEGENERATE_KNOT = "degenerate-knot"
    SADDLE = "saddle"
    FOCAL = "focal"
    CENTRAL = "central"


class Stability(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    NEUTRAL = "neutral"


def classify_singular(
    jacobian: Sequence[Sequence[float]],
    velocity: Point = (0.0, 0.0),
    tol: float = 1e-9,
) -> tuple[SingularClass, Stability]:
    """Eigenvalue classification of an equilibrium of a planar system.

    Real distinct same-sign eigenvalues give a knot; repeated real ones a
    critical knot (full eigenspace) or degenerate knot (defective); real
    opposite signs a saddle; complex pairs a focal point, or a central
    point when purely imaginary. Zero-determinant Jacobians are reported as
    degenerate knots. Stability follows the real parts.
    """
    if math.hypot(velocity[0], velocity[1]) > tol:
        raise NotSingular(f"velocity {velocity} is not zero")
    (a, b), (c, d) = jacobian
    for v in (a, b, c, d):
        if not math.isfinite(v):
            raise NotSingular("Jacobian must be finite")
    tr = a + d
    det = a * d - b * c
    disc = tr * tr - 4.0 * det

    def stability_from_tr() -> Stability:
        if tr < -tol:
            return Stability.STABLE
        if tr > tol:
            return Stability.UNSTABLE
        return Stability.NEUTRAL

    if det < -tol:
        return (SingularClass.SADDLE, Stability.UNSTABLE)
    if abs(det) <= tol:
        return (SingularClass.DEGENERATE_KNOT, stability_from_tr())
    if disc > tol:
        return (SingularClass.KNOT, stability_from_tr())
    if disc < -tol:
        if abs(tr) <= tol:
            return (SingularClass.CENTRAL, Stability.NEUTRAL)
        return (SingularClass.FOCAL, stability_from_tr())
    # Repeated real eigenvalue: full eigenspace iff J is lambda * I.
    lam = tr / 2.0
    if abs(b) <= tol and abs(c) <= tol and abs(a - lam) <= tol and abs(d - lam) <= tol:
        return (SingularClass.CRITICAL_KNOT, stability_from_tr())
    return (SingularClass.DEGENERATE_KNOT, stability_from_tr())


def detect_omega_discontinuity(
    field: OmegaField,
    rect: tuple[float, float, float, float],
    grid: tuple[int, int] = (16, 16),
    jump: float = math.pi / 2.0,
) -> list[Point]:
    """Cells whose corner omega values oscillate by more than ``jump``.

    Continuity of omega is the structural obstruction ruling out saddles
    and stable knots; this flags where a sampled field violates it.
    """
    nx, ny = grid
    if nx < 2 or ny < 2:
        raise BadParameters("grid must be at least 2x2")
    xmin, ymin, xmax, ymax = rect
    xs = [xmin + (xmax - xmin) * i / nx for i in range(nx + 1)]
    ys = [ymin + (ymax - ymin) * j / ny for j in range(ny + 1)]
    corner: dict[tuple[int, int], float] = {}
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            try:
                corner[(i, j)] = field.omega(x, y)
            except (OutOfDomain, OriginUndefined):
                continue
    suspects = []
    for i in range(nx):
        for j in range(ny):
            vals = [
                corner[key]
                for key in ((i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1))
                if key in corner
            ]
            if len(vals) < 4:
                continue
            if max(vals) - min(vals) > jump:
                suspects.append(
                    ((xs[i] + xs[i + 1]) / 2.0, (ys[j] + ys[j + 1]) / 2.0)
                )
    return suspects


def cone_check(eta: float, points: Sequence[tuple[float, float, float]]) -> float:
    """Max deviation of each point's generatrix angle from pi - eta/2.

    The constant-omega locus of the lifted field is the infinite circular
    cone with that generatrix-to-plane angle; planar points realize it
    exactly when eta = 2*pi.
    """
    target = math.pi - eta / 2.0
    worst = 0.0
    for x, y, z in points:
        r = math.hypot(x, y)
        if r == 0.0 and z == 0.0:
            continue  # the cone vertex belongs to every cone
        angle = math.atan2(z, r)
        worst = max(worst, abs(angle - target))
    return worst
