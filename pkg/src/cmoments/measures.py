"""Measures with Laurent-analytic tails: model, validation, serialization.

A measure here decomposes as ``mu = compact + tail``.  The compact part is a
finite list of atoms plus an optional tabulated density on a bounded
interval.  The tail has density ``p(x) = sum_n a_n * x**(-n)`` with integer
indices ``n >= 2``, supported on ``|x| >= R``.  The stored coefficients are a
finite truncation of a series assumed absolutely convergent for ``|x| > r``
with ``r < R``; callers supply ``r`` as the convergence witness.  A valid
probability measure has non-negative densities and the two parts' masses
summing to one.

Since ``integral(x**(-n), |x| >= R) = (1 + (-1)**n) * R**(1-n) / (n-1)``,
only even indices contribute to the tail mass.

Tabulated densities are interpreted through a cubic-spline interpolant
(not-a-knot ends); integrals against the table use per-interval
Gauss-Legendre nodes, which integrate the spline times any polynomial factor
of moderate degree exactly, so quadrature error reduces to interpolation
error of the table itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import MeasureFormatError, PoleError

MASS_TOL = 1e-8
POSITIVITY_POINTS_PER_SIDE = 512
POSITIVITY_SPAN = 10.0
GL_NODES_PER_INTERVAL = 32
ATOM_COLLISION_TOL = 1e-12


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentTail:
    """Truncated tail density ``sum(a_n x**-n)`` on ``|x| >= cutoff_R``.

    ``coeffs`` is stored as a sorted tuple of ``(n, a_n)`` pairs; a mapping
    or any iterable of pairs is accepted and normalized.  ``inner_r`` is the
    convergence witness: the untruncated series is assumed absolutely
    convergent for ``|x| > inner_r``.
    """

    coeffs: tuple
    cutoff_R: float
    inner_r: float

    def __post_init__(self):
        items = dict(self.coeffs).items()
        pairs = []
        for n, a in sorted(items):
            if int(n) != n or int(n) < 2:
                raise ValueError(f"tail index must be an integer >= 2, got {n!r}")
            a = float(a)
            if not math.isfinite(a):
                raise ValueError(f"non-finite tail coefficient at index {n}")
            if a != 0.0:
                pairs.append((int(n), a))
        object.__setattr__(self, "coeffs", tuple(pairs))
        object.__setattr__(self, "cutoff_R", float(self.cutoff_R))
        object.__setattr__(self, "inner_r", float(self.inner_r))
        if not (0.0 < self.inner_r < self.cutoff_R):
            raise ValueError("need 0 < inner_r < cutoff_R")
        if not math.isfinite(self.cutoff_R):
            raise ValueError("cutoff_R must be finite")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def indices(self) -> np.ndarray:
        return np.array([n for n, _ in self.coeffs], dtype=int)

    def coefficients(self) -> np.ndarray:
        return np.array([a for _, a in self.coeffs], dtype=float)

    def density(self, x):
        """Evaluate the truncated Laurent sum at real or complex ``x``.

        No support cutoff is applied here; callers decide where the value
        is meaningful.
        """
        x = np.asarray(x)
        out = np.zeros(x.shape, dtype=complex if np.iscomplexobj(x) else float)
        for n, a in self.coeffs:
            out = out + a * x ** float(-n)
        return out if out.shape else out[()]


def tail_mass(tail: LaurentTail) -> float:
    """Closed-form mass of the tail over ``|x| >= cutoff_R``.

    Odd indices integrate to zero over the symmetric support, so the mass is
    ``sum over even n of 2 * a_n * R**(1-n) / (n-1)``.
    """
    total = 0.0
    r = tail.cutoff_R
    for n, a in tail.coeffs:
        if n % 2 == 0:
            total += 2.0 * a * r ** (1 - n) / (n - 1)
    return total


@dataclass(frozen=True)
class DensityTable:
    """Density samples on a strictly increasing grid, plus a quadrature rule.

    The only rule currently implemented is ``"spline-gl"``: a not-a-knot
    cubic spline through the samples, integrated with per-interval
    Gauss-Legendre nodes.
    """

    grid: tuple
    values: tuple
    rule: str = "spline-gl"

    def __post_init__(self):
        grid = tuple(float(g) for g in self.grid)
        values = tuple(float(v) for v in self.values)
        if len(grid) != len(values):
            raise ValueError("grid and values must have the same length")
        if len(grid) < 4:
            raise ValueError("a density table needs at least 4 points")
        if any(not math.isfinite(g) for g in grid) or any(
            not math.isfinite(v) for v in values
        ):
            raise ValueError("non-finite entry in density table")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("grid must be strictly increasing")
        if self.rule != "spline-gl":
            raise ValueError(f"unknown quadrature rule {self.rule!r}")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @property
    def lo(self) -> float:
        return self.grid[0]

    @property
    def hi(self) -> float:
        return self.grid[-1]


@dataclass(frozen=True)
class CompactPart:
    """Atoms plus an optional tabulated density on a bounded interval."""

    atoms: tuple = ()
    table: DensityTable | None = None

    def __post_init__(self):
        atoms = tuple(
            sorted((float(x), float(w)) for x, w in self.atoms)
        )
        for x, w in atoms:
            if not (math.isfinite(x) and math.isfinite(w)):
                raise ValueError("non-finite atom")
        object.__setattr__(self, "atoms", atoms)

    @property
    def is_zero(self) -> bool:
        return not self.atoms and self.table is None

    @property
    def support_R1(self) -> float:
        r1 = 0.0
        if self.atoms:
            r1 = max(abs(x) for x, _ in self.atoms)
        if self.table is not None:
            r1 = max(r1, abs(self.table.lo), abs(self.table.hi))
        return r1


@dataclass(frozen=True)
class MeasureP1:
    """A measure decomposed into a compact part and a Laurent tail."""

    compact: CompactPart
    tail: LaurentTail


# ---------------------------------------------------------------------------
# table machinery (cached spline + quadrature nodes)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _gl_rule(q: int):
    nodes, weights = np.polynomial.legendre.leggauss(q)
    return nodes, weights


class _TableState:
    def __init__(self, table: DensityTable):
        x = np.asarray(table.grid)
        y = np.asarray(table.values)
        self.spline = CubicSpline(x, y, bc_type="not-a-knot")
        ref, wref = _gl_rule(GL_NODES_PER_INTERVAL)
        half = 0.5 * np.diff(x)
        mid = 0.5 * (x[:-1] + x[1:])
        # nodes/weights flattened over all spline intervals
        self.nodes = (mid[:, None] + half[:, None] * ref[None, :]).ravel()
        self.weights = (half[:, None] * wref[None, :]).ravel()
        self.node_values = self.spline(self.nodes)
        self.mass = float(self.weights @ self.node_values)


@lru_cache(maxsize=16)
def _table_state(table: DensityTable) -> _TableState:
    return _TableState(table)


def compact_mass(compact: CompactPart) -> float:
    total = sum(w for _, w in compact.atoms)
    if compact.table is not None:
        total += _table_state(compact.table).mass
    return float(total)


def total_mass(measure: MeasureP1) -> float:
    return compact_mass(measure.compact) + tail_mass(measure.tail)


# ---------------------------------------------------------------------------
# pointwise density
# ---------------------------------------------------------------------------

def density_at(measure: MeasureP1, x: float) -> float:
    """Density of the absolutely continuous part at ``x``.

    Tail and table contributions are summed where their supports overlap.
    Raises ``PoleError`` at atom locations, where the density is undefined.
    """
    x = float(x)
    for loc, _ in measure.compact.atoms:
        if abs(x - loc) <= ATOM_COLLISION_TOL * max(1.0, abs(loc)):
            raise PoleError(f"density undefined at atom location x={loc}")
    val = 0.0
    if abs(x) >= measure.tail.cutoff_R and not measure.tail.is_zero:
        val += float(measure.tail.density(x))
    table = measure.compact.table
    if table is not None and table.lo <= x <= table.hi:
        val += float(_table_state(table).spline(x))
    return val if val > 0.0 else 0.0


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> tuple:
        return tuple(v.code for v in self.violations)


def _positivity_grid(tail: LaurentTail, points: int) -> np.ndarray:
    right = np.geomspace(tail.cutoff_R, POSITIVITY_SPAN * tail.cutoff_R, points)
    return np.concatenate([-right[::-1], right])


def validate(
    measure: MeasureP1, positivity_points: int = POSITIVITY_POINTS_PER_SIDE
) -> ValidationReport:
    """Check the model invariants and report every violation found.

    An empty report means the measure is a valid probability measure of the
    handled class, up to truncation tolerances.
    """
    found = []
    tail = measure.tail
    if not tail.is_zero:
        coeffs = tail.coeffs
        lowest_n, lowest_a = coeffs[0]
        if lowest_a <= 0.0:
            found.append(
                Violation(
                    "tail-dominant-sign",
                    f"lowest-index coefficient a_{lowest_n} = {lowest_a} "
                    "must be > 0 (dominant term for large |x|)",
                )
            )
        a2 = dict(coeffs).get(2, 0.0)
        if a2 < 0.0:
            found.append(
                Violation("tail-a2-negative", f"a_2 = {a2} must be >= 0")
            )
        xs = _positivity_grid(tail, positivity_points)
        vals = tail.density(xs)
        scale = sum(abs(a) * tail.cutoff_R ** (-n) for n, a in coeffs)
        tol = 1e-12 * max(1.0, scale)
        bad = vals < -tol
        if np.any(bad):
            worst = int(np.argmin(vals))
            found.append(
                Violation(
                    "tail-positivity",
                    f"tail density negative at {int(bad.sum())} of "
                    f"{xs.size} grid points, worst p({xs[worst]:.6g}) = "
                    f"{vals[worst]:.6g}",
                )
            )
        tmass = tail_mass(tail)
        if not math.isfinite(tmass) or tmass > 1.0 + MASS_TOL:
            found.append(
                Violation("tail-mass", f"tail mass {tmass} exceeds 1")
            )
    for x, w in measure.compact.atoms:
        if w < 0.0:
            found.append(
                Violation("compact-weight", f"atom at {x} has weight {w} < 0")
            )
    table = measure.compact.table
    if table is not None and min(table.values) < 0.0:
        found.append(
            Violation("compact-density", "tabulated density has negative values")
        )
    total = total_mass(measure)
    if abs(total - 1.0) > MASS_TOL:
        found.append(
            Violation("total-mass", f"total mass {total!r} differs from 1")
        )
    return ValidationReport(tuple(found))


# ---------------------------------------------------------------------------
# measure spec files
# ---------------------------------------------------------------------------

def _require_keys(obj: dict, keys: set, where: str) -> None:
    got = set(obj)
    unknown = got - keys
    if unknown:
        raise MeasureFormatError(
            f"unknown key(s) {sorted(unknown)} in {where}"
        )
    missing = keys - got
    if missing:
        raise MeasureFormatError(
            f"missing key(s) {sorted(missing)} in {where}"
        )


def measure_from_dict(obj) -> MeasureP1:
    """Build a measure from the spec-file object, rejecting unknown keys."""
    if not isinstance(obj, dict):
        raise MeasureFormatError("measure spec must be an object")
    _require_keys(obj, {"atoms", "compact_density", "tail"}, "measure spec")
    atoms_raw = obj["atoms"]
    if not isinstance(atoms_raw, list):
        raise MeasureFormatError('"atoms" must be an array')
    atoms = []
    for i, entry in enumerate(atoms_raw):
        if not isinstance(entry, dict):
            raise MeasureFormatError(f"atom #{i} must be an object")
        _require_keys(entry, {"x", "w"}, f"atom #{i}")
        atoms.append((entry["x"], entry["w"]))
    dens_raw = obj["compact_density"]
    table = None
    if dens_raw is not None:
        if not isinstance(dens_raw, dict):
            raise MeasureFormatError('"compact_density" must be null or an object')
        _require_keys(dens_raw, {"grid", "values"}, "compact_density")
        try:
            table = DensityTable(tuple(dens_raw["grid"]), tuple(dens_raw["values"]))
        except (TypeError, ValueError) as exc:
            raise MeasureFormatError(f"bad compact_density: {exc}") from exc
    tail_raw = obj["tail"]
    if not isinstance(tail_raw, dict):
        raise MeasureFormatError('"tail" must be an object')
    _require_keys(tail_raw, {"R", "r", "coeffs"}, "tail")
    if not isinstance(tail_raw["coeffs"], list):
        raise MeasureFormatError('"tail.coeffs" must be an array')
    coeffs = {}
    for i, entry in enumerate(tail_raw["coeffs"]):
        if not isinstance(entry, dict):
            raise MeasureFormatError(f"tail coefficient #{i} must be an object")
        _require_keys(entry, {"n", "a"}, f"tail coefficient #{i}")
        if entry["n"] in coeffs:
            raise MeasureFormatError(f"duplicate tail index {entry['n']}")
        coeffs[entry["n"]] = entry["a"]
    try:
        tail = LaurentTail(coeffs, tail_raw["R"], tail_raw["r"])
        compact = CompactPart(tuple(atoms), table)
    except (TypeError, ValueError) as exc:
        raise MeasureFormatError(str(exc)) from exc
    return MeasureP1(compact, tail)


def measure_to_dict(measure: MeasureP1) -> dict:
    table = measure.compact.table
    return {
        "atoms": [{"x": x, "w": w} for x, w in measure.compact.atoms],
        "compact_density": None
        if table is None
        else {"grid": list(table.grid), "values": list(table.values)},
        "tail": {
            "R": measure.tail.cutoff_R,
            "r": measure.tail.inner_r,
            "coeffs": [{"n": n, "a": a} for n, a in measure.tail.coeffs],
        },
    }


def loads_measure(text: str) -> MeasureP1:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeasureFormatError(f"invalid JSON: {exc}") from exc
    return measure_from_dict(obj)


def dumps_measure(measure: MeasureP1) -> str:
    return json.dumps(measure_to_dict(measure))


def load_measure(path) -> MeasureP1:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_measure(fh.read())


def save_measure(measure: MeasureP1, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_measure(measure))
        fh.write("\n")
