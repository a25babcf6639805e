"""Integer codification of the parts of a Venn diagram.

Every elementary region of the n-set Venn diagram gets a number in
``[1, 2**n - 1]``. Any element built from the singletons by unions and
intersections is then simply the set of the region numbers it covers, so
union and intersection become plain set operations and the DSm cardinality
is the size of the set.

Regions are numbered by descending number of covering singletons (the
region common to all singletons is always 1), colexicographically within
each group. For n = 3 this gives::

    1 -> <1 2 3>   2 -> <1 2>   3 -> <1 3>   4 -> <2 3>
    5 -> <1>       6 -> <2>     7 -> <3>
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import FrameSizeError, DecodeError, UnknownSingletonError
from .expression import Expression, Intersection, Singleton, Union as UnionNode, parse_expression

MAX_FRAME_SIZE = 16

# constraint marker: every pairwise intersection of singletons is empty
SHAFER = "2T"


@dataclass(frozen=True, slots=True)
class ElementCode:
    """Canonical set of Venn-part numbers, stored as a bitmask.

    Part ``p`` is bit ``p - 1``. The external form is the ascending tuple
    returned by :attr:`parts`; ``str(code)`` gives ``[1 2 3 5]``.
    """

    mask: int = 0

    @classmethod
    def of(cls, parts: Iterable[int] = ()) -> "ElementCode":
        mask = 0
        for p in parts:
            p = int(p)
            if p < 1:
                raise DecodeError(f"part numbers start at 1, got {p}")
            mask |= 1 << (p - 1)
        return cls(mask)

    @property
    def parts(self) -> tuple[int, ...]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length())
            mask ^= low
        return tuple(out)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __and__(self, other: "ElementCode") -> "ElementCode":
        return ElementCode(self.mask & other.mask)

    def __or__(self, other: "ElementCode") -> "ElementCode":
        return ElementCode(self.mask | other.mask)

    def __sub__(self, other: "ElementCode") -> "ElementCode":
        return ElementCode(self.mask & ~other.mask)

    def issubset(self, other: "ElementCode") -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "ElementCode") -> bool:
        return self.mask & other.mask == 0

    def __repr__(self) -> str:
        return f"ElementCode({list(self.parts)})"

    def __str__(self) -> str:
        return "[" + " ".join(map(str, self.parts)) + "]"


EMPTY = ElementCode(0)


def dsm_cardinality(code: ElementCode) -> int:
    """Number of Venn parts composing the element."""
    return len(code)


def _check_size(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_FRAME_SIZE:
        raise FrameSizeError(f"frame size must be an integer in [1, {MAX_FRAME_SIZE}], got {n!r}")


@lru_cache(maxsize=None)
def _part_subsets(n: int) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []
    for size in range(n, 0, -1):
        group = sorted(combinations(range(1, n + 1), size), key=lambda s: s[::-1])
        out.extend(group)
    return tuple(out)


def enumerate_parts(n: int) -> dict[int, tuple[int, ...]]:
    """Map each part number to the ascending tuple of singletons covering it."""
    _check_size(n)
    return {i: subset for i, subset in enumerate(_part_subsets(n), start=1)}


@dataclass(frozen=True)
class Frame:
    """Codes of the n singletons, possibly reduced by emptiness constraints."""

    n: int
    singletons: tuple[ElementCode, ...]
    part_subsets: tuple[tuple[int, ...], ...]
    removed_parts: ElementCode = EMPTY

    @property
    def part_map(self) -> dict[int, tuple[int, ...]]:
        return {i: s for i, s in enumerate(self.part_subsets, start=1)}

    @property
    def universe(self) -> ElementCode:
        """Total ignorance: union of all (reduced) singleton codes."""
        mask = 0
        for code in self.singletons:
            mask |= code.mask
        return ElementCode(mask)

    @property
    def n_v(self) -> int:
        return len(self.universe)

    def singleton(self, index: int) -> ElementCode:
        if not 1 <= index <= self.n:
            raise UnknownSingletonError(f"singleton {index} outside 1..{self.n}")
        return self.singletons[index - 1]


def coding_theta(n: int) -> Frame:
    """Unconstrained frame: singleton i is every part whose subset contains i."""
    _check_size(n)
    subsets = _part_subsets(n)
    masks = [0] * n
    for part, subset in enumerate(subsets):
        for i in subset:
            masks[i - 1] |= 1 << part
    return Frame(n, tuple(ElementCode(m) for m in masks), subsets)


def eval_expression(expr: Union[Expression, str], frame: Frame) -> ElementCode:
    """Code of an expression: union/intersection of the singleton codes."""
    if isinstance(expr, str):
        expr = parse_expression(expr)
    if isinstance(expr, Singleton):
        return frame.singleton(expr.index)
    left = eval_expression(expr.left, frame)
    right = eval_expression(expr.right, frame)
    if isinstance(expr, UnionNode):
        return left | right
    if isinstance(expr, Intersection):
        return left & right
    raise TypeError(f"not an expression node: {expr!r}")


def shafer_constraints(n: int) -> list[Expression]:
    return [Intersection(Singleton(i), Singleton(j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def apply_constraints(constraints: Union[str, Sequence[Union[Expression, str]]], frame: Frame) -> Frame:
    """Declare the given elements empty and drop their parts from every singleton.

    ``constraints`` is a list of expressions (or expression strings), or the
    marker ``"2T"`` (alone or as the single list item) which stands for all
    pairwise intersections. Implied constraints follow automatically since
    removed parts vanish from every code.
    """
    if isinstance(constraints, str):
        constraints = [constraints]
    constraints = list(constraints)
    if constraints and constraints[0] == SHAFER:
        if len(constraints) > 1:
            raise ValueError("the '2T' marker must be the only constraint")
        constraints = shafer_constraints(frame.n)
    removed = frame.removed_parts
    for c in constraints:
        removed = removed | eval_expression(c, frame)
    if removed == frame.removed_parts:
        return frame
    return Frame(
        frame.n,
        tuple(code - removed for code in frame.singletons),
        frame.part_subsets,
        removed,
    )


def make_frame(n: int, constraints: Union[str, Sequence[Union[Expression, str]], None] = None) -> Frame:
    frame = coding_theta(n)
    if constraints:
        frame = apply_constraints(constraints, frame)
    return frame


def smarandache_string(code: ElementCode, part_map: Union[Frame, Mapping[int, Sequence[int]]]) -> str:
    """Render a code as ``{<1 2 3>,<1 2>}``, parts in code order."""
    if isinstance(part_map, Frame):
        subsets = part_map.part_subsets
        lookup = lambda p: subsets[p - 1] if p <= len(subsets) else None  # noqa: E731
    else:
        lookup = part_map.get
    chunks = []
    for p in code.parts:
        subset = lookup(p)
        if subset is None:
            raise DecodeError(f"part {p} is not in the part map")
        chunks.append("<" + " ".join(map(str, subset)) + ">")
    return "{" + ",".join(chunks) + "}"


def format_code(code: ElementCode) -> str:
    return str(code)


def parse_code(text: str) -> ElementCode:
    """Read a code written as ``"1,3"``, ``"1 3"`` or ``"[1 3]"``."""
    cleaned = text.strip().strip("[]").replace(",", " ")
    try:
        parts = [int(tok) for tok in cleaned.split()]
    except ValueError as exc:
        raise DecodeError(f"bad code {text!r}: {exc}") from None
    return ElementCode.of(parts)


def check_code(code: ElementCode, frame: Frame) -> None:
    if code.mask >> len(frame.part_subsets):
        raise DecodeError(f"{code} has parts beyond {len(frame.part_subsets)} for n={frame.n}")
    if code.mask & frame.removed_parts.mask:
        raise DecodeError(f"{code} uses parts {code & frame.removed_parts} removed by the constraints")
