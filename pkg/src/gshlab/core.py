"""Members of the sinh-subordination class and the three membership tests.

A normalized function ``f(z) = z + a_2 z^2 + ...`` belongs to the class when
``z f'(z)/f(z) - 1`` is subordinate to ``sinh z``.  Members are constructed
from Schwarz-map witnesses via

    f(z) = z * exp( integral_0^z (q(t) - 1)/t dt ),   q = 1 + sinh(w),

and membership of an arbitrary candidate is probed three independent ways:

* a sufficient coefficient condition (a weighted coefficient sum staying
  below 1 for every boundary angle),
* nonvanishing of a convolution kernel on a polar grid for every angle,
* geometric containment of the values of ``z f'/f - 1`` in the sinh image
  of the disk.

Grid evaluations use exact pointwise rational arithmetic on the stored
coefficients (never term-by-term division of truncated series), so the only
truncation effect is the tail of ``f`` itself.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from . import series as ts
from .caratheodory import SchwarzSample
from .refine import golden_max, polish_coordinatewise
from .regions import BOUNDARY_TOL, sinh_region


class PreconditionNotMet(ValueError):
    """An operation was invoked on inputs that fail its stated precondition."""


#: Kernel values with modulus at or below this count as vanishing.
ZERO_TOL = 1e-6

#: Margin subtracted from 1 in the sufficient-condition comparison.
SUFFICIENT_MARGIN = 0.0


@dataclass(frozen=True)
class PolarGrid:
    """Sampling grid: radii up to max_radius times a uniform angle grid."""

    theta_samples: int = 512
    radial_samples: int = 64
    max_radius: float = 0.995

    def __post_init__(self):
        if not 0.0 < self.max_radius < 1.0:
            raise ValueError("max_radius must lie in (0, 1)")
        if self.theta_samples < 4 or self.radial_samples < 1:
            raise ValueError("grid too small")

    def points(self) -> np.ndarray:
        radii = np.linspace(self.max_radius / self.radial_samples,
                            self.max_radius, self.radial_samples)
        angles = np.exp(2j * np.pi * np.arange(self.theta_samples) / self.theta_samples)
        return np.outer(radii, angles).ravel()


DEFAULT_GRID = PolarGrid()


@dataclass(frozen=True)
class NormalizedFunction:
    """Candidate function with a_0 = 0 and a_1 = 1 exactly."""

    series: ts.TruncatedSeries

    def __post_init__(self):
        c = self.series.coeffs
        if c.size < 2 or c[0] != 0 or c[1] != 1:
            raise ValueError("normalized function needs a_0 = 0 and a_1 = 1 exactly")

    @property
    def order(self) -> int:
        return self.series.order

    def coeff(self, n: int) -> complex:
        return self.series[n]

    def coeffs(self) -> np.ndarray:
        return self.series.coeffs

    @classmethod
    def from_tail(cls, tail, order: int | None = None) -> "NormalizedFunction":
        """Build from the coefficients a_2, a_3, ... (a_0, a_1 implied)."""
        tail = list(tail)
        if order is None:
            order = len(tail) + 1
        coeffs = np.zeros(order + 1, dtype=np.complex128)
        coeffs[1] = 1.0
        coeffs[2 : 2 + len(tail)] = tail[: max(order - 1, 0)]
        return cls(ts.TruncatedSeries(coeffs))

    @classmethod
    def identity(cls, order: int = ts.DEFAULT_ORDER) -> "NormalizedFunction":
        return cls(ts.identity(order))

    @classmethod
    def koebe(cls, order: int = ts.DEFAULT_ORDER) -> "NormalizedFunction":
        """z/(1-z)^2, with coefficients a_n = n."""
        return cls(ts.TruncatedSeries(np.arange(order + 1, dtype=float)))

    def to_json(self) -> dict:
        return {"coeffs": ts.to_pairs(self.series)}

    @classmethod
    def from_json(cls, obj: dict) -> "NormalizedFunction":
        return cls(ts.from_pairs(obj["coeffs"]))

    # pointwise helpers (exact in the stored coefficients)

    def over_z_values(self, z) -> np.ndarray:
        """Values of f(z)/z."""
        return np.polyval(self.series.coeffs[:0:-1], z)

    def derivative_values(self, z) -> np.ndarray:
        """Values of f'(z)."""
        c = self.series.coeffs
        n = np.arange(c.size)
        return np.polyval((c * n)[:0:-1], z)

    def values(self, z) -> np.ndarray:
        return np.polyval(self.series.coeffs[::-1], z)

    def ratio_values(self, z) -> np.ndarray:
        """Values of z f'(z)/f(z), computed as f'(z) / (f(z)/z)."""
        g = self.over_z_values(z)
        return self.derivative_values(z) / g


@dataclass(frozen=True)
class KernelParams:
    """Angle and the induced kernel coefficient (1 + sinh(e^(i theta)))/sinh(e^(i theta))."""

    theta: float
    beta: complex

    def __post_init__(self):
        expected = kernel_beta(self.theta)
        if abs(self.beta - expected) > 1e-12:
            raise ValueError("beta inconsistent with theta")

    @classmethod
    def from_theta(cls, theta: float) -> "KernelParams":
        return cls(theta=float(theta), beta=kernel_beta(theta))


def kernel_beta(theta: float) -> complex:
    """(1 + sinh(e^(i theta)))/sinh(e^(i theta)); well defined for every angle."""
    s = cmath.sinh(cmath.exp(1j * theta))
    return (1.0 + s) / s


# -- construction ----------------------------------------------------------


def member_from_witness(omega: SchwarzSample | ts.TruncatedSeries,
                        order: int = ts.DEFAULT_ORDER) -> NormalizedFunction:
    """Class member with z f'/f = 1 + sinh(w) for the witness map w.

    The witness may be a structured Schwarz sample or any truncated series
    with zero constant term (for instance the zero series, which yields the
    identity member).
    """
    w = omega.series(order) if isinstance(omega, SchwarzSample) else omega.truncate(order)
    q = ts.constant(1.0, order) + ts.sinh(w)
    inner = ts.integrate_ratio(q)
    return NormalizedFunction(ts.shift_up(ts.exp(inner)).truncate(order))


def extremal_fn(n: int, order: int = ts.DEFAULT_ORDER) -> NormalizedFunction:
    """Sharpness witness for the n-th coefficient: the member built from w = z^(n-1).

    Its coefficient a_n equals 1/(n-1) and a_2 .. a_(n-1) vanish.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if order < n:
        raise ValueError(f"order {order} too small to expose coefficient {n}")
    return member_from_witness(SchwarzSample.monomial(n - 1), order)


def ratio_series(f: NormalizedFunction) -> ts.TruncatedSeries:
    """Truncated series of z f'(z)/f(z); constant term 1."""
    g = ts.shift_down(f.series)
    num = g + ts.shift_up(ts.derivative(g)).truncate(g.order)
    return ts.div(num, g)


def coeffs_from_caratheodory(c) -> tuple[complex, complex, complex, complex]:
    """(a_2, a_3, a_4, a_5) of the member induced by coefficients c_1..c_4."""
    c1, c2, c3, c4 = (complex(v) for v in c)
    a2 = c1 / 2.0
    a3 = c2 / 4.0
    a4 = c1 ** 3 / 144.0 - c1 * c2 / 24.0 + c3 / 6.0
    a5 = (-5.0 * c1 ** 4 / 1152.0 + 5.0 * c1 ** 2 * c2 / 192.0
          - c1 * c3 / 24.0 - c2 ** 2 / 32.0 + c4 / 8.0)
    return a2, a3, a4, a5


# -- membership test 1: sufficient coefficient condition -------------------


@dataclass(frozen=True)
class SufficientVerdict:
    holds: bool
    statistic: float
    argmax_theta: float

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "inconclusive"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "statistic": self.statistic,
                "argmax_theta": self.argmax_theta}


def _sufficient_statistic(f: NormalizedFunction, thetas: np.ndarray) -> np.ndarray:
    mods = np.abs(f.series.coeffs[2:])
    if mods.size == 0:
        return np.zeros(np.shape(thetas))
    n = np.arange(2, f.order + 1, dtype=float)
    s = np.sinh(np.exp(1j * np.atleast_1d(thetas).astype(float)))
    weights = np.abs((n[None, :] - 1.0 - s[:, None]) / s[:, None])
    return weights @ mods


def sufficient_membership(f: NormalizedFunction, theta_samples: int = 512) -> SufficientVerdict:
    """Sufficient test: sup over angles of the weighted coefficient sum below 1.

    The weighted sum uses the coefficients up to the truncation order; the
    condition is sufficient only, so a failure reads "inconclusive".
    """
    if theta_samples < 64:
        raise PreconditionNotMet("theta_samples must be >= 64")
    thetas = np.linspace(0.0, 2.0 * np.pi, theta_samples, endpoint=False)
    vals = _sufficient_statistic(f, thetas)
    i = int(np.argmax(vals))
    step = 2.0 * np.pi / theta_samples
    theta_star, s_star = golden_max(
        lambda t: float(_sufficient_statistic(f, np.array([t]))[0]),
        thetas[i] - step, thetas[i] + step)
    if vals[i] > s_star:
        theta_star, s_star = float(thetas[i]), float(vals[i])
    return SufficientVerdict(holds=bool(s_star < 1.0 - SUFFICIENT_MARGIN),
                             statistic=float(s_star),
                             argmax_theta=float(theta_star) % (2.0 * math.pi))


# -- membership test 2: kernel nonvanishing --------------------------------


@dataclass(frozen=True)
class KernelVerdict:
    nonvanishing: bool
    min_modulus: float
    argmin_theta: float
    argmin_z: complex
    ratio_floor: float

    @property
    def verdict(self) -> str:
        return "nonvanishing" if self.nonvanishing else "zero-found"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "min_modulus": self.min_modulus,
                "argmin_theta": self.argmin_theta,
                "argmin_z": [self.argmin_z.real, self.argmin_z.imag],
                "ratio_floor": self.ratio_floor}


def _kernel_modulus(f: NormalizedFunction, theta: float, z: complex) -> float:
    fp = complex(f.derivative_values(np.array([z]))[0])
    g = complex(f.over_z_values(np.array([z]))[0])
    return abs(fp - kernel_beta(theta) * (fp - g))


def kernel_nonvanishing(f: NormalizedFunction, theta_samples: int = 512,
                        grid: PolarGrid = DEFAULT_GRID,
                        zero_tol: float = ZERO_TOL) -> KernelVerdict:
    """Scan (1/z)(z f' - beta (z f' - f)) over the polar grid for every angle.

    The value equals f'(z) - beta (f'(z) - f(z)/z), so no division is
    involved.  The coarse grid minimum is polished by coordinatewise
    golden-section descent in (theta, radius, angle) so that an actual
    kernel zero pulls the minimum below the tolerance even when it falls
    between grid points.  The verdict also requires f(z)/z to stay away
    from zero, which covers the degenerate beta = 1 variant of the test.
    """
    z = grid.points()
    fp = f.derivative_values(z)
    g = f.over_z_values(z)
    v = fp - g
    thetas = np.linspace(0.0, 2.0 * np.pi, theta_samples, endpoint=False)
    betas = np.array([kernel_beta(t) for t in thetas])
    best = math.inf
    best_theta = 0.0
    best_z = 0j
    chunk = max(1, int(2_000_000 / max(z.size, 1)))
    for lo in range(0, thetas.size, chunk):
        e = np.abs(fp[None, :] - betas[lo : lo + chunk, None] * v[None, :])
        i, j = np.unravel_index(np.argmin(e), e.shape)
        if e[i, j] < best:
            best = float(e[i, j])
            best_theta = float(thetas[lo + i])
            best_z = complex(z[j])
    if best <= math.inf and z.size:
        dtheta = 2.0 * math.pi / theta_samples
        dr = grid.max_radius / grid.radial_samples
        dphi = 2.0 * math.pi / grid.theta_samples
        r0, phi0 = abs(best_z), cmath.phase(best_z)

        def objective(p):
            r = min(max(p[1], 1e-9), grid.max_radius)
            return -_kernel_modulus(f, p[0], r * cmath.exp(1j * p[2]))

        p, neg = polish_coordinatewise(
            objective, np.array([best_theta, r0, phi0]),
            [(best_theta - dtheta, best_theta + dtheta),
             (max(r0 - dr, 1e-9), min(r0 + dr, grid.max_radius)),
             (phi0 - dphi, phi0 + dphi)],
            rounds=3, iters=40)
        if -neg < best:
            best = -neg
            best_theta = float(p[0]) % (2.0 * math.pi)
            best_z = min(max(p[1], 1e-9), grid.max_radius) * cmath.exp(1j * p[2])
    ratio_floor = float(np.min(np.abs(g)))
    return KernelVerdict(nonvanishing=bool(best > zero_tol and ratio_floor > zero_tol),
                         min_modulus=best, argmin_theta=best_theta,
                         argmin_z=best_z, ratio_floor=ratio_floor)


# -- membership test 3: geometric containment ------------------------------


@dataclass(frozen=True)
class GeometricVerdict:
    member: bool
    max_excursion: float
    boundary_margin: float
    outside_count: int
    ambiguous_count: int

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non-member"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "max_excursion": self.max_excursion,
                "boundary_margin": self.boundary_margin,
                "outside_count": self.outside_count,
                "ambiguous_count": self.ambiguous_count}


def geometric_membership(f: NormalizedFunction, grid: PolarGrid = DEFAULT_GRID,
                         curve_samples: int = 4096,
                         boundary_tol: float = BOUNDARY_TOL) -> GeometricVerdict:
    """Geometric test: all sampled values of z f'/f - 1 inside the sinh image.

    Containment is decided by winding number against a dense polygonal
    discretization of the boundary curve.  Samples within ``boundary_tol``
    of the curve are ambiguous and conservatively force a non-member
    verdict (counted in the result).
    """
    region = sinh_region(curve_samples)
    z = grid.points()
    g = f.over_z_values(z)
    fp = f.derivative_values(z)
    safe = np.abs(g) > 1e-12
    g_safe = np.where(safe, g, 1.0)
    far_outside = region.anchor + 2.0 * region.outer_radius
    values = np.where(safe, (fp - g_safe) / g_safe, far_outside)
    inside, ambiguous = region.classify(values, boundary_tol)
    outside = ~inside & ~ambiguous
    member = bool(np.all(inside))
    excursion = float(np.max(region.boundary_distance(values[outside]))) if np.any(outside) else 0.0
    # conservative lower bound on the samples' distance to the curve
    margin = max(0.0, region.inner_radius - float(np.max(np.abs(values - region.anchor))))
    return GeometricVerdict(member=member,
                            max_excursion=excursion,
                            boundary_margin=margin,
                            outside_count=int(np.count_nonzero(outside)),
                            ambiguous_count=int(np.count_nonzero(ambiguous)))


# -- combined report --------------------------------------------------------


@dataclass(frozen=True)
class MembershipReport:
    sufficient: SufficientVerdict
    kernel: KernelVerdict
    geometric: GeometricVerdict

    @property
    def verdict(self) -> str:
        return self.geometric.verdict

    def to_json(self) -> dict:
        return {"sufficient": self.sufficient.to_json(),
                "kernel": self.kernel.to_json(),
                "geometric": self.geometric.to_json(),
                "verdict": self.verdict}


def membership_report(f: NormalizedFunction, theta_samples: int = 512,
                      grid: PolarGrid = DEFAULT_GRID) -> MembershipReport:
    """Run all three membership tests; the combined verdict is the geometric one."""
    return MembershipReport(
        sufficient=sufficient_membership(f, theta_samples),
        kernel=kernel_nonvanishing(f, theta_samples, grid),
        geometric=geometric_membership(f, grid),
    )


# -- coefficient functionals -----------------------------------------------


@dataclass(frozen=True)
class HankelReport:
    """Initial-coefficient functionals of a candidate function."""

    fs: complex        # a3 - lam a2^2
    t: complex         # a4 - a2 a3
    h22: complex       # a2 a4 - a3^2
    h31: complex       # third-order determinant from a2..a5

    def to_json(self) -> dict:
        return {k: [getattr(self, k).real, getattr(self, k).imag]
                for k in ("fs", "t", "h22", "h31")}


def hankel_report(f: NormalizedFunction, lam: complex = 1.0) -> HankelReport:
    if f.order < 5:
        raise PreconditionNotMet("need coefficients up to a_5 (order >= 5)")
    a2, a3, a4, a5 = (f.coeff(k) for k in (2, 3, 4, 5))
    h22 = a2 * a4 - a3 * a3
    return HankelReport(
        fs=a3 - complex(lam) * a2 * a2,
        t=a4 - a2 * a3,
        h22=h22,
        h31=a3 * h22 - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2),
    )


# -- growth, distortion and covering ----------------------------------------


def shi_series(x: float, tol: float = 1e-18) -> float:
    """Hyperbolic sine integral by termwise integration of the sinh expansion."""
    x = float(x)
    total = 0.0
    term = x
    k = 0
    while True:
        contrib = term / (2 * k + 1)
        total += contrib
        if abs(contrib) < tol * max(1.0, abs(total)):
            return total
        k += 1
        term *= x * x / ((2 * k) * (2 * k + 1))


def shi_quadrature(x: float) -> float:
    """Hyperbolic sine integral by adaptive quadrature (independent route)."""
    val, _ = quad(lambda t: math.sinh(t) / t if t != 0.0 else 1.0, 0.0, float(x),
                  epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


@lru_cache(maxsize=256)
def _shi_checked(x: float) -> float:
    a = shi_series(x)
    b = shi_quadrature(x)
    if abs(a - b) > 1e-10:
        raise ArithmeticError(f"sine-integral routes disagree at {x}: {a} vs {b}")
    return a


def extremal_value(r: float) -> float:
    """Value of the extremal member at a real point r in (-1, 1)."""
    return r * math.exp(_shi_checked(abs(r)) * (1.0 if r >= 0 else -1.0))


@dataclass(frozen=True)
class GrowthRecord:
    r: float
    lower: float        # -f0(-r)
    upper: float        # f0(r)
    deriv_bound: float  # (1 + sinh r) f0(r) / r
    covering: float     # exp(-Shi(1)), radius of the covered disk

    def to_json(self) -> dict:
        return {"r": self.r, "lower": self.lower, "upper": self.upper,
                "deriv_bound": self.deriv_bound, "covering": self.covering}


def covering_radius() -> float:
    """Radius exp(-Shi(1)) of the disk covered by every member's image."""
    return math.exp(-_shi_checked(1.0))


def growth_distortion(r: float) -> GrowthRecord:
    """Growth envelope, derivative bound and covering radius at |z| = r."""
    if not 0.0 < r < 1.0:
        raise PreconditionNotMet("r must lie in (0, 1)")
    upper = extremal_value(r)
    return GrowthRecord(
        r=float(r),
        lower=-extremal_value(-r),
        upper=upper,
        deriv_bound=(1.0 + math.sinh(r)) * upper / r,
        covering=covering_radius(),
    )


# -- convexity ---------------------------------------------------------------


@dataclass(frozen=True)
class ComboSpec:
    """Convex combination mu f1 + (1 - mu) f2 of two candidates."""

    mu: float
    f1: NormalizedFunction
    f2: NormalizedFunction

    def __post_init__(self):
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError("mu must lie in [0, 1]")

    def combined(self) -> NormalizedFunction:
        n = min(self.f1.order, self.f2.order)
        coeffs = (self.mu * self.f1.series.coeffs[: n + 1]
                  + (1.0 - self.mu) * self.f2.series.coeffs[: n + 1])
        return NormalizedFunction(ts.TruncatedSeries(coeffs))


def convex_combination_check(combo: ComboSpec, theta_samples: int = 512) -> SufficientVerdict:
    """Check the sufficient condition for a convex combination of two members.

    Both inputs must pass the sufficient test themselves; the combination
    inherits it by subadditivity of the weighted coefficient sum.
    """
    for name, f in (("f1", combo.f1), ("f2", combo.f2)):
        if not sufficient_membership(f, theta_samples).holds:
            raise PreconditionNotMet(f"{name} does not pass the sufficient test")
    return sufficient_membership(combo.combined(), theta_samples)
