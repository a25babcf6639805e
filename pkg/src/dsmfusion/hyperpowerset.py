"""Generation and decoding of the reduced hyper power set D_r.

Every element of D_r is a union of non-empty intersections of singletons
(the intersection basis). Free frames up to :data:`MBF_MAX_N` singletons
are streamed by enumerating monotone boolean functions over the n singleton
variables: a function f picks the union of the intersections ``∩_{i∈S} θ_i``
with ``f(S) = 1``. Constrained frames use a breadth-first union closure of
the basis instead, whose cost follows |D_r| rather than the Dedekind number
of n. A seen-set keeps both streams duplicate-free.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .codification import EMPTY, ElementCode, Frame, check_code, smarandache_string
from .errors import CapacityError, NotDecodableError

MAX_ENTRIES = 10**7
MBF_MAX_N = 6
EMPTY_EXPRESSION = "{}"


@dataclass(frozen=True)
class DThetaEntry:
    code: ElementCode
    smarandache: str
    expression: str


@dataclass(frozen=True)
class BasisElement:
    code: ElementCode
    subset: tuple[int, ...]  # first singleton subset producing this intersection

    @property
    def expression(self) -> str:
        return "n".join(map(str, self.subset))


def _subset_intersections(frame: Frame) -> list[int]:
    """Intersection mask for every subset bitmask S of singletons (index 0 unused)."""
    n = frame.n
    inter = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        i = low.bit_length() - 1
        rest = s ^ low
        own = frame.singletons[i].mask
        inter[s] = own if rest == 0 else inter[rest] & own
    return inter


def _members(s: int) -> tuple[int, ...]:
    out = []
    i = 1
    while s:
        if s & 1:
            out.append(i)
        s >>= 1
        i += 1
    return tuple(out)


def intersection_basis(frame: Frame) -> list[BasisElement]:
    """Distinct non-empty intersections of singleton subsets.

    Order is the binary order of the subsets: θ1, θ2, θ1∩θ2, θ3, θ1∩θ3, ...
    """
    seen = set()
    basis = []
    for s, mask in enumerate(_subset_intersections(frame)):
        if s == 0 or mask == 0 or mask in seen:
            continue
        seen.add(mask)
        basis.append(BasisElement(ElementCode(mask), _members(s)))
    return basis


@lru_cache(maxsize=None)
def _mbf_table(nvars: int) -> tuple[int, ...]:
    return tuple(monotone_boolean_functions(nvars))


def monotone_boolean_functions(nvars: int) -> Iterator[int]:
    """Yield the truth tables of all monotone boolean functions of ``nvars`` inputs.

    A table is an int whose bit S holds f(S), S being the bitmask of the true
    inputs. Functions of k variables are pairs (f0, f1) of (k-1)-variable
    functions with f0 <= f1, where f0/f1 fix the last input to 0/1. The
    sub-list is materialized, the top level is produced lazily. The output
    order is a linear extension of <=, which lets the pair loop start at f0.
    """
    if nvars == 0:
        yield 0
        yield 1
        return
    prev = _mbf_table(nvars - 1)
    half = 1 << (nvars - 1)
    for i, lo in enumerate(prev):
        for hi in prev[i:]:
            if lo & ~hi == 0:
                yield lo | (hi << half)


def _render_terms(terms: Sequence[tuple[tuple[int, ...], int]]) -> str:
    """Render (subset, mask) terms as a union of intersections, dropping absorbed terms."""
    kept = []
    for k, (subset, mask) in enumerate(terms):
        absorbed = False
        for j, (_, other) in enumerate(terms):
            if j == k or mask & ~other:
                continue
            if other != mask or j < k:
                absorbed = True
                break
        if not absorbed:
            kept.append(subset)
    if not kept:
        return EMPTY_EXPRESSION
    kept.sort(key=lambda s: (len(s), s))
    pieces = []
    for subset in kept:
        text = "n".join(map(str, subset))
        pieces.append(f"({text})" if len(subset) > 1 and len(kept) > 1 else text)
    return "u".join(pieces)


def _entry(mask: int, frame: Frame, terms) -> DThetaEntry:
    code = ElementCode(mask)
    return DThetaEntry(code, smarandache_string(code, frame), _render_terms(terms))


def _generate_mbf(frame: Frame) -> Iterator[tuple[int, Callable[[], list]]]:
    n = frame.n
    inter = _subset_intersections(frame)
    yield 0, list
    for f in monotone_boolean_functions(n):
        if f & 1:  # f(empty set) = 1 means the constant-true function
            continue
        mask = 0
        bits = f
        while bits:
            low = bits & -bits
            mask |= inter[low.bit_length() - 1]
            bits ^= low
        if mask:
            yield mask, partial(_minimal_terms, f, inter)


def _minimal_terms(f: int, inter: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    """Minimal true sets of a monotone function, with non-empty intersections."""
    terms = []
    bits = f
    while bits:
        low = bits & -bits
        s = low.bit_length() - 1
        bits ^= low
        if not inter[s]:
            continue
        rest = s
        minimal = True
        while rest:
            b = rest & -rest
            rest ^= b
            if (f >> (s ^ b)) & 1:
                minimal = False
                break
        if minimal:
            terms.append((_members(s), inter[s]))
    return terms


def _generate_closure(frame: Frame) -> Iterator[tuple[int, list]]:
    basis = [(b.subset, b.code.mask) for b in intersection_basis(frame)]
    parent: dict[int, tuple[int, int]] = {0: (-1, -1)}
    yield 0, list
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for k, (_, bmask) in enumerate(basis):
            nxt = current | bmask
            if nxt in parent:
                continue
            parent[nxt] = (current, k)
            terms = []
            walk = nxt
            while walk:
                prev, idx = parent[walk]
                terms.append(basis[idx])
                walk = prev
            yield nxt, partial(list, terms[::-1])
            queue.append(nxt)


def generate_dthetar(frame: Frame, limit: int = MAX_ENTRIES) -> Iterator[DThetaEntry]:
    """Lazily stream D_r: the empty element first, then each element once.

    Raises CapacityError once more than ``limit`` entries would be produced,
    or up front when the frame is too large for the boolean-function route
    and has no constraints to make the closure route viable.
    """
    if frame.n > MBF_MAX_N and not frame.removed_parts:
        raise CapacityError(f"D^Θ for n={frame.n} without constraints exceeds {limit} elements")
    source = _generate_closure(frame) if frame.removed_parts else _generate_mbf(frame)
    seen: set[int] = set()
    for mask, terms in source:
        if mask in seen:
            continue
        seen.add(mask)
        if len(seen) > limit:
            raise CapacityError(f"D_r has more than {limit} elements")
        yield _entry(mask, frame, terms())


def cardinality_histogram(frame: Frame) -> dict[int, int]:
    """Number of non-empty D_r elements per DSm cardinality, ascending keys."""
    counts = Counter(len(entry.code) for entry in generate_dthetar(frame) if entry.code)
    return dict(sorted(counts.items()))


def histogram_csv(hist: dict[int, int]) -> str:
    lines = ["cardinality,count"]
    lines += [f"{c},{hist[c]}" for c in sorted(hist)]
    return "\n".join(lines) + "\n"


def power_set_sweep(frame: Frame) -> list[tuple[ElementCode, str]]:
    """The 2^n unions of singletons in binary order, with expressions.

    Entry 0 is the empty element; then θ1, θ2, θ1∪θ2, θ3, ...
    """
    out: list[tuple[ElementCode, str]] = [(EMPTY, EMPTY_EXPRESSION)]
    for i in range(1, frame.n + 1):
        single = frame.singletons[i - 1]
        top = len(out)
        out.append((single, str(i)))
        for k in range(1, top):
            code, text = out[k]
            out.append((code | single, f"{text}u{i}"))
    return out


def _stage_one(frame: Frame) -> dict[ElementCode, str]:
    table: dict[ElementCode, str] = {}
    for code, text in power_set_sweep(frame):
        table.setdefault(code, text)
    for b in intersection_basis(frame):
        table.setdefault(b.code, b.expression)
    return table


def decode_many(codes: Iterable[ElementCode], frame: Frame) -> list[Optional[str]]:
    """Decode several codes with one shared staged search.

    Stage one scans the unions of singletons and the intersection basis;
    only codes missing there start the lazy generation of D_r, which stops
    as soon as every code is found. Codes outside D_r come back as None.
    """
    codes = list(codes)
    for code in codes:
        check_code(code, frame)
    table = _stage_one(frame)
    result: list[Optional[str]] = [table.get(c) for c in codes]
    missing = {c for c, r in zip(codes, result) if r is None}
    if missing:
        found: dict[ElementCode, str] = {}
        for entry in generate_dthetar(frame):
            if entry.code in missing:
                found[entry.code] = entry.expression
                if len(found) == len(missing):
                    break
        result = [r if r is not None else found.get(c) for c, r in zip(codes, result)]
    return result


def decode(code: ElementCode, frame: Frame) -> str:
    """Expression (``u``/``n``/parentheses) whose evaluation gives ``code``."""
    text = decode_many([code], frame)[0]
    if text is None:
        raise NotDecodableError(f"{code} is not an element of D_r for this frame")
    return text
