"""Randomized extremal search against the claimed sharp coefficient bounds.

Each scan confronts a claimed bound with an empirical maximum over two
families of admissible inputs:

* members built from random Schwarz witnesses (plus deterministic monomial
  anchors, which realize the known sharpness cases), and
* for functionals of a_2..a_4, a direct parametrization of the coefficient
  body (c in [0, 2], a unit-disk parameter x, a unimodular parameter z).

The larger empirical maximum wins; the best candidate is polished by
coordinatewise golden-section ascent.  Estimates carry a serialized witness
sufficient to reproduce the reported value, and a violation flag raised when
the empirical maximum exceeds the claimed bound beyond tolerance.  Scans are
seed-deterministic and partition by sample index, so doubling the sample
budget never lowers a maximum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import series as ts
from ._parallel import map_index_chunks
from .caratheodory import SchwarzSample, coeffs_from_witnesses, sample_schwarz
from .core import coeffs_from_caratheodory, member_from_witness
from .refine import polish_coordinatewise, refine_grid_max, refine_grid_max_2d


@dataclass(frozen=True)
class ScanConfig:
    """Budget and witness-complexity caps for one extremal scan."""

    samples: int = 10_000
    seed: int = 0
    order: int = 16
    max_zeros: int = 4
    zero_modulus_cap: float = 0.75
    direct_c_samples: int = 41
    direct_y_samples: int = 21
    direct_phase_samples: int = 12
    tolerance: float = 1e-9
    polish_rounds: int = 2
    polish_iters: int = 40

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class BoundEstimate:
    """Empirical maximum of a functional against its claimed bound."""

    functional: str
    empirical_max: float
    witness: dict
    claimed_bound: float
    attained_ratio: float
    violation: bool

    def to_json(self) -> dict:
        return {"functional": self.functional,
                "empirical_max": self.empirical_max,
                "witness": self.witness,
                "claimed_bound": self.claimed_bound,
                "attained_ratio": self.attained_ratio,
                "violation": self.violation}


# -- functionals -------------------------------------------------------------


def functional_value(name: str, coeffs: np.ndarray, lam: complex = 1.0) -> float:
    """|functional| from the coefficient array (indexed by power, a[1] = 1)."""
    a = coeffs
    if name.startswith("a") and name[1:].isdigit():
        return float(abs(a[int(name[1:])]))
    a2, a3, a4 = a[2], a[3], a[4]
    if name == "fs":
        return float(abs(a3 - complex(lam) * a2 * a2))
    if name == "t":
        return float(abs(a4 - a2 * a3))
    if name == "h22":
        return float(abs(a2 * a4 - a3 * a3))
    if name == "h31":
        a5 = a[5]
        h22 = a2 * a4 - a3 * a3
        return float(abs(a3 * h22 - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2)))
    raise ValueError(f"unknown functional {name!r}")


def claimed_bound(name: str, lam: complex = 1.0) -> float:
    """The stated sharp bound (or conjectured value) for a functional."""
    if name.startswith("a") and name[1:].isdigit():
        n = int(name[1:])
        if n < 2:
            raise ValueError("coefficient functionals start at a2")
        return 1.0 / (n - 1)
    return {
        "fs": 0.5 * max(1.0, abs(2.0 * complex(lam) - 1.0)),
        "t": 1.0 / 3.0,
        "h22": 1.0 / 36.0,
        "h31": 0.25,
    }[name]


# -- witness family -----------------------------------------------------------


def _member_coeffs(omega: SchwarzSample, order: int) -> np.ndarray:
    return member_from_witness(omega, order).series.coeffs


_BATCH_CACHE: dict[ScanConfig, tuple[list[SchwarzSample], np.ndarray]] = {}


def witness_batch(cfg: ScanConfig) -> tuple[list[SchwarzSample], np.ndarray]:
    """Members for all sample indices of a config (cached per config).

    Sample i is drawn from the stream seeded by (seed, i), so prefixes are
    stable under budget growth and index chunks can run on any worker.
    """
    cached = _BATCH_CACHE.get(cfg)
    if cached is not None:
        return cached

    def build(indices: range):
        witnesses = []
        rows = np.empty((len(indices), cfg.order + 1), dtype=np.complex128)
        for pos, i in enumerate(indices):
            rng = np.random.default_rng((cfg.seed, i))
            omega = sample_schwarz(rng, max_zeros=cfg.max_zeros,
                                   zero_modulus_cap=cfg.zero_modulus_cap)
            witnesses.append(omega)
            rows[pos] = _member_coeffs(omega, cfg.order)
        return witnesses, rows

    parts = map_index_chunks(build, cfg.samples)
    witnesses = [w for ws, _ in parts for w in ws]
    rows = np.vstack([r for _, r in parts]) if parts else np.empty((0, cfg.order + 1))
    if len(_BATCH_CACHE) > 8:
        _BATCH_CACHE.clear()
    _BATCH_CACHE[cfg] = (witnesses, rows)
    return witnesses, rows


def _anchor_witnesses(cfg: ScanConfig, highest_power: int) -> list[SchwarzSample]:
    """Monomial witnesses z^k; these realize every known sharpness case."""
    top = min(highest_power, cfg.order - 1)
    return [SchwarzSample.monomial(k) for k in range(1, top + 1)]


def _schwarz_params(omega: SchwarzSample, cap: float):
    """Flatten a witness into (params, bounds) for coordinatewise polish."""
    params = [cmath.phase(complex(omega.rotation)) % (2.0 * math.pi)]
    bounds = [(0.0, 2.0 * math.pi)]
    for b in omega.zeros:
        b = complex(b)
        params.extend([abs(b), cmath.phase(b) % (2.0 * math.pi)])
        bounds.extend([(0.0, cap), (0.0, 2.0 * math.pi)])
    return np.array(params), bounds


def _schwarz_from_params(params: np.ndarray) -> SchwarzSample:
    rotation = cmath.exp(1j * params[0])
    zeros = tuple(params[k] * cmath.exp(1j * params[k + 1])
                  for k in range(1, len(params), 2))
    return SchwarzSample(rotation=rotation, zeros=zeros)


def witness_to_json(omega: SchwarzSample) -> dict:
    return {"family": "schwarz", **omega.to_json()}


def caratheodory_witness_to_json(c1: float, x: complex, z: complex) -> dict:
    return {"family": "caratheodory", "c1": float(c1),
            "x": [x.real, x.imag], "z": [z.real, z.imag]}


def evaluate_witness(witness: dict, functional: str, lam: complex = 1.0,
                     order: int = 16) -> float:
    """Recompute a functional value from a serialized witness alone."""
    if witness["family"] == "schwarz":
        omega = SchwarzSample.from_json(witness)
        return functional_value(functional, _member_coeffs(omega, order), lam)
    if witness["family"] == "caratheodory":
        c1 = witness["c1"]
        x = complex(*witness["x"])
        z = complex(*witness["z"])
        c2, c3 = coeffs_from_witnesses(c1, x, z)
        a2, a3, a4, _ = coeffs_from_caratheodory([c1, c2, c3, 0.0])
        coeffs = np.array([0.0, 1.0, a2, a3, a4, 0.0], dtype=np.complex128)
        return functional_value(functional, coeffs, lam)
    raise ValueError(f"unknown witness family {witness.get('family')!r}")


# -- direct coefficient-body family ------------------------------------------

_DIRECT_FUNCTIONALS = ("a2", "a3", "a4", "fs", "t", "h22")


def _direct_values(name: str, c1, x, z, lam: complex = 1.0):
    """Vectorized |functional| on the direct (c1, x, z) parametrization."""
    c1 = np.asarray(c1, dtype=float)
    x = np.asarray(x, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    gap = 4.0 - c1 * c1
    c2 = (c1 * c1 + x * gap) / 2.0
    c3 = (c1 ** 3 + 2.0 * gap * c1 * x - gap * c1 * x * x
          + 2.0 * gap * (1.0 - np.abs(x) ** 2) * z) / 4.0
    a2 = c1 / 2.0
    a3 = c2 / 4.0
    a4 = c1 ** 3 / 144.0 - c1 * c2 / 24.0 + c3 / 6.0
    if name == "a2":
        return np.abs(a2)
    if name == "a3":
        return np.abs(a3)
    if name == "a4":
        return np.abs(a4)
    if name == "fs":
        return np.abs(a3 - complex(lam) * a2 * a2)
    if name == "t":
        return np.abs(a4 - a2 * a3)
    if name == "h22":
        return np.abs(a2 * a4 - a3 * a3)
    raise ValueError(f"functional {name!r} not covered by the direct family")


def _direct_family_max(name: str, cfg: ScanConfig, lam: complex = 1.0):
    cs = np.linspace(0.0, 2.0, cfg.direct_c_samples)
    ys = np.linspace(0.0, 1.0, cfg.direct_y_samples)
    phases = np.linspace(0.0, 2.0 * np.pi, cfg.direct_phase_samples, endpoint=False)
    zs = np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 8, endpoint=False))
    cc, yy, pp, zz = np.meshgrid(cs, ys, phases, zs, indexing="ij")
    vals = _direct_values(name, cc, yy * np.exp(1j * pp), zz, lam)
    idx = np.unravel_index(np.argmax(vals), vals.shape)
    best = float(vals[idx])
    x0 = np.array([cc[idx], yy[idx], pp[idx], cmath.phase(complex(zz[idx])) % (2 * math.pi)])

    def score(p):
        return float(_direct_values(name, p[0], p[1] * cmath.exp(1j * p[2]),
                                    cmath.exp(1j * p[3]), lam))

    bounds = [(0.0, 2.0), (0.0, 1.0), (0.0, 2.0 * math.pi), (0.0, 2.0 * math.pi)]
    p, best = polish_coordinatewise(score, x0, bounds,
                                    rounds=cfg.polish_rounds, iters=cfg.polish_iters)
    witness = caratheodory_witness_to_json(p[0], p[1] * cmath.exp(1j * p[2]),
                                           cmath.exp(1j * p[3]))
    return best, witness


# -- scans --------------------------------------------------------------------


def scan_coefficient_bound(n: int, cfg: ScanConfig) -> BoundEstimate:
    """Empirical maximum of |a_n| over witness-built members vs 1/(n-1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if cfg.order < n:
        raise ValueError(f"scan order {cfg.order} cannot expose a_{n}")
    name = f"a{n}"
    witnesses, rows = witness_batch(cfg)
    anchors = _anchor_witnesses(cfg, highest_power=max(5, n))
    best, witness = _witness_family_max_with_anchors(name, cfg, anchors, witnesses, rows)
    claim = claimed_bound(name)
    return BoundEstimate(functional=name, empirical_max=best, witness=witness,
                         claimed_bound=claim, attained_ratio=best / claim,
                         violation=bool(best > claim + cfg.tolerance))


def _witness_family_max_with_anchors(name, cfg, anchors, witnesses, rows, lam=1.0):
    candidates = list(anchors)
    values = [functional_value(name, _member_coeffs(w, cfg.order), lam) for w in anchors]
    batch_vals = np.array([functional_value(name, rows[i], lam)
                           for i in range(rows.shape[0])])
    if batch_vals.size:
        j = int(np.argmax(batch_vals))
        candidates.append(witnesses[j])
        values.append(float(batch_vals[j]))
    k = int(np.argmax(values))
    best_witness, best = candidates[k], float(values[k])
    params, bounds = _schwarz_params(best_witness, cfg.zero_modulus_cap)

    def score(p):
        return functional_value(name, _member_coeffs(_schwarz_from_params(p), cfg.order), lam)

    if len(params) > 1:
        params, polished = polish_coordinatewise(score, params, bounds,
                                                 rounds=cfg.polish_rounds,
                                                 iters=cfg.polish_iters)
        if polished > best:
            best = polished
            best_witness = _schwarz_from_params(params)
    return best, witness_to_json(best_witness)


def hankel_scan(kind: str, cfg: ScanConfig, lam: complex = 1.0) -> BoundEstimate:
    """Empirical maximum of a coefficient functional against its claimed bound.

    ``kind`` is one of ``h22``, ``h31``, ``fs`` (Fekete-Szego, parameter
    ``lam``) or ``t`` (the functional a4 - a2 a3).  Both search families run
    where applicable and the larger maximum wins.
    """
    if kind not in ("h22", "h31", "fs", "t"):
        raise ValueError(f"unknown scan kind {kind!r}")
    if cfg.order < 5:
        raise ValueError("scan order must be at least 5")
    witnesses, rows = witness_batch(cfg)
    anchors = _anchor_witnesses(cfg, highest_power=4)
    best, witness = _witness_family_max_with_anchors(kind, cfg, anchors,
                                                     witnesses, rows, lam)
    if kind in _DIRECT_FUNCTIONALS:
        direct_best, direct_witness = _direct_family_max(kind, cfg, lam)
        if direct_best > best:
            best, witness = direct_best, direct_witness
    claim = claimed_bound(kind, lam)
    return BoundEstimate(functional=kind if kind != "fs" else f"fs({lam})",
                         empirical_max=best, witness=witness, claimed_bound=claim,
                         attained_ratio=best / claim,
                         violation=bool(best > claim + cfg.tolerance))


# -- the closed-form envelope of the h22 functional ---------------------------


def h22_envelope(c: float, y: float) -> float:
    """Triangle-inequality envelope of |a2 a4 - a3^2| over the direct family.

    The envelope is a polynomial in c in [0, 2] (the first coefficient of
    the positive-real-part function) and y in [0, 1] (the modulus of the
    unit-disk parameter x).
    """
    return float(_h22_envelope_array(np.asarray(c, float), np.asarray(y, float)))


def _h22_envelope_array(c, y):
    c = np.asarray(c, dtype=float)
    y = np.asarray(y, dtype=float)
    gap = 4.0 - c * c
    return (0.5 * c ** 4 + 6.0 * c * c * y * gap + 6.0 * c * c * y * y * gap
            + 12.0 * c * gap * (1.0 - y * y) + 4.5 * y * y * gap * gap) / 288.0


def h22_envelope_max(c_samples: int = 201, y_samples: int = 101,
                     levels: int = 4) -> tuple[float, tuple[float, float]]:
    """Grid maximum of the envelope over [0, 2] x [0, 1] with local zoom."""
    return refine_grid_max_2d(_h22_envelope_array, (0.0, 2.0), (0.0, 1.0),
                              (c_samples, y_samples), levels=levels)


@dataclass(frozen=True)
class EnvelopeProfile:
    """The envelope along y = 1, tabulated over [0, 2]."""

    cs: np.ndarray
    values: np.ndarray
    argmax_c: float
    max_value: float

    def to_json(self) -> dict:
        return {"c": [float(v) for v in self.cs],
                "value": [float(v) for v in self.values],
                "argmax_c": self.argmax_c, "max_value": self.max_value}


def h22_envelope_profile(c_samples: int = 201) -> EnvelopeProfile:
    """Tabulate the y = 1 section of the envelope and locate its maximum."""
    cs = np.linspace(0.0, 2.0, c_samples)
    values = _h22_envelope_array(cs, np.ones_like(cs))
    argmax_c, max_value = refine_grid_max(
        lambda x: _h22_envelope_array(x, np.ones_like(x)), 0.0, 2.0, c_samples,
        levels=4)
    return EnvelopeProfile(cs=cs, values=values, argmax_c=argmax_c, max_value=max_value)


def default_scan_suite(cfg: ScanConfig, coefficient_range: tuple[int, ...] = (2, 3, 4, 5, 6),
                       fs_lams: tuple[complex, ...] = (0.0, 0.5, 1.0, 2.0)) -> list[BoundEstimate]:
    """The standard battery: coefficient bounds, Fekete-Szego values, t, h22, h31."""
    out = [scan_coefficient_bound(n, cfg) for n in coefficient_range]
    out.extend(hankel_scan("fs", cfg, lam) for lam in fs_lams)
    out.append(hankel_scan("t", cfg))
    out.append(hankel_scan("h22", cfg))
    out.append(hankel_scan("h31", cfg))
    return out
