"""Basic belief assignments over coded focal elements."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .codification import EMPTY, ElementCode, Frame, eval_expression
from .errors import MassError

MASS_TOLERANCE = 1e-9


@dataclass(frozen=True)
class MassFunction:
    """Parallel tuples of focal codes and masses.

    Construction does not enforce normalization so that intermediate
    products can be held in the same type; see :func:`check_normalized`.
    """

    focals: tuple[ElementCode, ...]
    masses: tuple[float, ...]

    def __init__(self, focals: Iterable[ElementCode] = (), masses: Iterable[float] = ()):
        focals = tuple(focals)
        masses = tuple(float(m) for m in masses)
        if len(focals) != len(masses):
            raise MassError(f"{len(focals)} focal elements but {len(masses)} masses")
        object.__setattr__(self, "focals", focals)
        object.__setattr__(self, "masses", masses)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[ElementCode, float]]) -> "MassFunction":
        pairs = list(pairs)
        return cls([c for c, _ in pairs], [m for _, m in pairs])

    def __len__(self) -> int:
        return len(self.focals)

    def __iter__(self) -> Iterator[tuple[ElementCode, float]]:
        return iter(zip(self.focals, self.masses))

    def items(self) -> list[tuple[ElementCode, float]]:
        return list(zip(self.focals, self.masses))

    def total(self) -> float:
        return math.fsum(self.masses)

    def mass_of(self, code: ElementCode) -> float:
        return math.fsum(m for c, m in self if c == code)

    @property
    def conflict(self) -> float:
        """Mass sitting on the empty element."""
        return self.mass_of(EMPTY)

    def as_dict(self) -> dict[ElementCode, float]:
        out: dict[ElementCode, float] = {}
        for c, m in self:
            out[c] = out.get(c, 0.0) + m
        return out


ExpertSet = Sequence[MassFunction]


def check_normalized(m: MassFunction, tol: float = MASS_TOLERANCE) -> None:
    for code, value in m:
        if value < 0 or math.isnan(value):
            raise MassError(f"negative or NaN mass {value} on {code}")
    total = m.total()
    if abs(total - 1.0) > tol:
        raise MassError(f"masses sum to {total!r}, expected 1 within {tol}")


def reduce(m: MassFunction) -> MassFunction:
    """Merge identical focals by summing their masses and drop zero masses.

    First-appearance order is kept.
    """
    merged: dict[ElementCode, float] = {}
    for code, value in m:
        merged[code] = merged.get(code, 0.0) + value
    return MassFunction.from_pairs((c, v) for c, v in merged.items() if v != 0.0)


def coding_expert(declared: Iterable[tuple[str, float]], frame: Frame) -> MassFunction:
    """Code a user-declared bba such as ``[("1", 0.6), ("1u2", 0.4)]``.

    Expressions are evaluated against the (reduced) ``frame``. Masses must be
    non-negative and sum to 1 within 1e-9; nothing is renormalized.
    """
    declared = list(declared)
    if not declared:
        raise MassError("an expert needs at least one focal element")
    m = MassFunction([eval_expression(text, frame) for text, _ in declared], [v for _, v in declared])
    check_normalized(m)
    return reduce(m)
