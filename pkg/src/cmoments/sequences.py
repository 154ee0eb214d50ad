"""Indexed complex sequences shared by the moment and cumulant engines."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum

import numpy as np


class CumulantKind(Enum):
    """The four cumulant/convolution species handled by the package."""

    TENSOR = "tensor"
    FREE = "free"
    BOOLEAN = "boolean"
    MONOTONE = "monotone"

    def __str__(self):
        return self.value


def as_kind(kind) -> CumulantKind:
    """Normalize a ``CumulantKind`` or its string value."""
    if isinstance(kind, CumulantKind):
        return kind
    return CumulantKind(str(kind))


@dataclass(frozen=True)
class ComplexSequence:
    """Complex values indexed by order ``0..n_max``.

    ``kind`` is ``"moments"`` for moment sequences (entry 0 is the total
    mass) or ``"cumulants:<species>"`` for cumulant sequences.  Cumulant
    orders start at 1; entry 0 is stored as a zero placeholder so that
    ``seq[n]`` is always the order-``n`` value.
    """

    values: tuple
    kind: str = "moments"

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if not vals:
            raise ValueError("a sequence needs at least the order-0 entry")
        if any(not (cmath.isfinite(v)) for v in vals):
            raise ValueError("non-finite entry in sequence")
        object.__setattr__(self, "values", vals)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> complex:
        return self.values[n]

    def __iter__(self):
        return iter(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=complex)

    @classmethod
    def moments(cls, values) -> "ComplexSequence":
        return cls(tuple(values), "moments")

    @classmethod
    def cumulants(cls, values_from_order_1, kind) -> "ComplexSequence":
        kind = as_kind(kind)
        return cls((0j,) + tuple(values_from_order_1), f"cumulants:{kind.value}")

    def is_moments(self) -> bool:
        return self.kind == "moments"


def power_moments(base: complex, n_max: int) -> ComplexSequence:
    """Moment sequence ``base**n`` for ``n = 0..n_max``.

    With a real ``base`` these are the moments of the point mass at that
    location; with complex ``base = a + bi`` they are the complex moments
    of the Cauchy distribution with location ``a`` and scale ``b``.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return ComplexSequence.moments(complex(base) ** n for n in range(n_max + 1))


def delta_moments(n_max: int) -> ComplexSequence:
    """Moments of the point mass at zero: 1, 0, 0, ..."""
    return power_moments(0.0, n_max)
