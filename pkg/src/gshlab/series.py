"""Arithmetic on truncated complex power series.

A :class:`TruncatedSeries` holds the coefficients ``c[0] .. c[N]`` of

    s(z) = c[0] + c[1] z + c[2] z**2 + ... + c[N] z**N

where ``N`` is the truncation order (default 32).  Coefficients beyond the
order are treated as unknown rather than zero, so every operation obeys
truncation consistency: coefficient ``k`` of a result depends only on
coefficients ``0..k`` of the operands, and binary operations return a series
truncated at the smaller of the two operand orders.

The module provides products, quotients, composition, the elementary
transcendental maps (exp, log, sinh, cosh), termwise integration of
``(q(t) - 1)/t``, Horner evaluation and differentiation.  All values are
immutable after construction and every operation is a pure function, so the
types are safe for unrestricted concurrent use.

Series serialize as a JSON array of ``[re, im]`` pairs indexed by power
(element 0 is the constant term); see :func:`to_pairs` / :func:`from_pairs`.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER = 32

#: Magnitude below which a constant term is considered too close to zero to
#: divide by (or to take a logarithm of).
CONSTANT_TERM_TOL = 1e-14


class SeriesError(ValueError):
    """Base class for series precondition failures."""


class NearZeroConstantTerm(SeriesError):
    """Division or logarithm requested for a series with |c[0]| below tolerance."""


class NonzeroInnerConstant(SeriesError):
    """Composition requested with an inner series whose constant term is not exactly 0."""


class NonUnitConstant(SeriesError):
    """Ratio integration requested for a series whose constant term is not exactly 1."""


class TruncatedSeries:
    """Immutable truncated power series with complex coefficients.

    Parameters
    ----------
    coeffs:
        Coefficients by increasing power.  Must be non-empty and finite.
    order:
        Optional target truncation order.  The coefficient list is padded
        with zeros or truncated to length ``order + 1``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[complex], order: int | None = None):
        arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                         dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must form a non-empty 1-d sequence")
        if order is not None:
            if order < 0:
                raise ValueError(f"order must be nonnegative, got {order}")
            out = np.zeros(order + 1, dtype=np.complex128)
            keep = min(arr.size, order + 1)
            out[:keep] = arr[:keep]
            arr = out
        else:
            arr = arr.copy()
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("series coefficients must be finite")
        arr.setflags(write=False)
        self._coeffs = arr

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array, length ``order + 1``."""
        return self._coeffs

    @property
    def order(self) -> int:
        return self._coeffs.size - 1

    def __getitem__(self, k: int) -> complex:
        return complex(self._coeffs[k])

    def __iter__(self):
        return iter(self._coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self._coeffs, order=order)

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other) -> "TruncatedSeries | None":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            out = np.zeros(self.order + 1, dtype=np.complex128)
            out[0] = other
            return TruncatedSeries(out)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return TruncatedSeries(self._coeffs[: n + 1] + o._coeffs[: n + 1])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self._coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return TruncatedSeries(self._coeffs[: n + 1] - o._coeffs[: n + 1])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        if isinstance(other, (int, float, complex, np.number)):
            return TruncatedSeries(self._coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        if isinstance(other, (int, float, complex, np.number)):
            return TruncatedSeries(self._coeffs / other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return div(o, self)

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self._coeffs[:4])
        tail = ", ..." if self.order >= 4 else ""
        return f"TruncatedSeries([{head}{tail}], order={self.order})"


# -- constructors ---------------------------------------------------------


def constant(value: complex, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    out = np.zeros(order + 1, dtype=np.complex128)
    out[0] = value
    return TruncatedSeries(out)


def identity(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """The series of z itself."""
    return monomial(1, order)


def monomial(k: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    if not 0 <= k <= order:
        raise ValueError(f"monomial power {k} outside order {order}")
    out = np.zeros(order + 1, dtype=np.complex128)
    out[k] = 1.0
    return TruncatedSeries(out)


def from_pairs(pairs: Sequence[Sequence[float]]) -> TruncatedSeries:
    """Build a series from ``[[re, im], ...]`` (JSON wire format)."""
    return TruncatedSeries([complex(p[0], p[1]) for p in pairs])


def to_pairs(s: TruncatedSeries) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in s.coeffs]


# -- core operations ------------------------------------------------------


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller operand order."""
    n = min(a.order, b.order)
    out = np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])[: n + 1]
    return TruncatedSeries(out)


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Series quotient a/b; requires ``|b[0]|`` above the constant-term tolerance."""
    b0 = b.coeffs[0]
    if abs(b0) <= CONSTANT_TERM_TOL:
        raise NearZeroConstantTerm(
            f"cannot divide by series with |constant term| = {abs(b0):.3e}")
    n = min(a.order, b.order)
    ac = a.coeffs
    bc = b.coeffs
    out = np.zeros(n + 1, dtype=np.complex128)
    out[0] = ac[0] / b0
    for k in range(1, n + 1):
        out[k] = (ac[k] - np.dot(bc[1 : k + 1], out[k - 1 :: -1])) / b0
    return TruncatedSeries(out)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Coefficients of outer(inner(z)) via nested Horner multiplication.

    The inner constant term must be exactly zero, otherwise the result
    would need all (untracked) higher coefficients of the outer series.
    """
    if inner.coeffs[0] != 0:
        raise NonzeroInnerConstant(
            f"inner constant term must be exactly 0, got {inner.coeffs[0]}")
    n = min(outer.order, inner.order)
    inner_t = inner.truncate(n)
    acc = constant(outer.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        acc = mul(acc, inner_t) + outer.coeffs[k]
    return acc


def derivative(s: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; the order drops by one."""
    if s.order == 0:
        return TruncatedSeries([0.0])
    k = np.arange(1, s.order + 1)
    return TruncatedSeries(s.coeffs[1:] * k)


def integrate_ratio(q: TruncatedSeries) -> TruncatedSeries:
    """Termwise integral of (q(t) - 1)/t from 0 to z.

    Requires ``q[0] == 1`` exactly; the result has zero constant term and
    coefficient ``q[k]/k`` at power k.
    """
    if q.coeffs[0] != 1:
        raise NonUnitConstant(f"constant term must be exactly 1, got {q.coeffs[0]}")
    out = np.zeros(q.order + 1, dtype=np.complex128)
    if q.order >= 1:
        k = np.arange(1, q.order + 1)
        out[1:] = q.coeffs[1:] / k
    return TruncatedSeries(out)


def evaluate(s: TruncatedSeries, z):
    """Horner evaluation of the truncated series at a point or array.

    Truncation error grows with ``|z|``; values near ``|z| = 1`` are only as
    good as the coefficient decay allows.
    """
    result = np.polyval(s.coeffs[::-1], z)
    if np.ndim(z) == 0:
        return complex(result)
    return result


def shift_up(s: TruncatedSeries) -> TruncatedSeries:
    """Multiply by z (coefficients shift one power up; order grows by one)."""
    out = np.zeros(s.order + 2, dtype=np.complex128)
    out[1:] = s.coeffs
    return TruncatedSeries(out)


def shift_down(s: TruncatedSeries) -> TruncatedSeries:
    """Divide by z; requires an exactly zero constant term."""
    if s.coeffs[0] != 0:
        raise NonzeroInnerConstant(
            f"cannot divide by z: constant term is {s.coeffs[0]}")
    if s.order == 0:
        return TruncatedSeries([0.0])
    return TruncatedSeries(s.coeffs[1:])


# -- transcendental maps --------------------------------------------------

_TRANSCEND_KINDS = ("exp", "log", "sinh", "cosh")


def _maclaurin_about(kind: str, s0: complex, order: int) -> np.ndarray:
    """Taylor coefficients of the map about the expansion point s0."""
    out = np.zeros(order + 1, dtype=np.complex128)
    if kind == "exp":
        base = cmath.exp(s0)
        inv_fact = 1.0
        for k in range(order + 1):
            out[k] = base * inv_fact
            if k < order:
                inv_fact /= k + 1
    elif kind in ("sinh", "cosh"):
        pair = (cmath.sinh(s0), cmath.cosh(s0))
        if kind == "cosh":
            pair = (pair[1], pair[0])
        inv_fact = 1.0
        for k in range(order + 1):
            out[k] = pair[k % 2] * inv_fact
            if k < order:
                inv_fact /= k + 1
    elif kind == "log":
        out[0] = cmath.log(s0)
        power = s0
        for k in range(1, order + 1):
            out[k] = (-1.0) ** (k + 1) / (k * power)
            power *= s0
    else:
        raise ValueError(f"unknown transcendental kind {kind!r}")
    return out


def transcend(kind: str, s: TruncatedSeries) -> TruncatedSeries:
    """Apply exp, log, sinh or cosh to a series.

    The map is expanded about the constant term and composed with the
    zero-constant remainder, so nonzero constants are handled by factoring
    out the value at 0.  For ``log`` the constant term must stay above the
    tolerance; the principal branch is used.
    """
    if kind not in _TRANSCEND_KINDS:
        raise ValueError(f"kind must be one of {_TRANSCEND_KINDS}, got {kind!r}")
    s0 = complex(s.coeffs[0])
    if kind == "log" and abs(s0) <= CONSTANT_TERM_TOL:
        raise NearZeroConstantTerm(
            f"log requires |constant term| > {CONSTANT_TERM_TOL}, got {abs(s0):.3e}")
    outer = TruncatedSeries(_maclaurin_about(kind, s0, s.order))
    remainder = s - constant(s0, s.order)
    return compose(outer, remainder)


def exp(s: TruncatedSeries) -> TruncatedSeries:
    return transcend("exp", s)


def log(s: TruncatedSeries) -> TruncatedSeries:
    return transcend("log", s)


def sinh(s: TruncatedSeries) -> TruncatedSeries:
    return transcend("sinh", s)


def cosh(s: TruncatedSeries) -> TruncatedSeries:
    return transcend("cosh", s)
