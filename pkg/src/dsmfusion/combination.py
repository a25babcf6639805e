"""Combination rules over lists of coded mass functions.

Rules are identified by number::

    1 conjunctive          5 Florea (robust)
    2 Dempster             6 PCR6
    3 Yager                7 mean
    4 disjunctive          8 normalized disjunctive

Numbers 9-13 (Dubois-Prade, mixed, DPCR, MDPCR, Zhang) are reserved and
raise :class:`UnsupportedRuleError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from itertools import product
from typing import Callable, Optional, Union

from .codification import EMPTY, ElementCode, Frame
from .errors import CapacityError, TotalConflictError, UnsupportedRuleError
from .mass import ExpertSet, MassFunction, reduce

MAX_PRODUCT_TERMS = 10**7
TOTAL_CONFLICT_EPS = 1e-12


class Rule(IntEnum):
    CONJUNCTIVE = 1
    DEMPSTER = 2
    YAGER_TOTAL = 3
    DISJUNCTIVE = 4
    FLOREA = 5
    PCR6 = 6
    MEAN = 7
    DISJUNCTIVE_NORMALIZED = 8


RESERVED_RULES = {9: "Dubois-Prade", 10: "mixed", 11: "DPCR", 12: "MDPCR", 13: "Zhang"}


def rule_from_id(value: Union[int, str, Rule]) -> Rule:
    if isinstance(value, Rule):
        return value
    if isinstance(value, str) and not value.isdigit():
        try:
            return Rule[value.upper()]
        except KeyError:
            raise UnsupportedRuleError(f"unknown combination rule {value!r}") from None
    value = int(value)
    if value in RESERVED_RULES:
        raise UnsupportedRuleError(f"combination rule {value} ({RESERVED_RULES[value]}) is not implemented")
    try:
        return Rule(value)
    except ValueError:
        raise UnsupportedRuleError(f"unknown combination rule {value}") from None


@dataclass(frozen=True)
class ConjunctiveTrace:
    """Unmerged cross product of several experts.

    ``provenance[t][j]`` is the 0-based index of expert j's focal used in term t.
    """

    focals: tuple[ElementCode, ...]
    masses: tuple[float, ...]
    provenance: tuple[tuple[int, ...], ...]

    @property
    def conflict(self) -> float:
        return math.fsum(m for c, m in zip(self.focals, self.masses) if not c)


def _check_experts(experts: ExpertSet) -> list[MassFunction]:
    experts = list(experts)
    if not experts:
        raise ValueError("at least one expert is required")
    return experts


def _fold(experts: ExpertSet, op: Callable[[int, int], int]) -> MassFunction:
    experts = _check_experts(experts)
    current = reduce(experts[0])
    for nxt in experts[1:]:
        acc: dict[int, float] = {}
        for c1, m1 in current:
            for c2, m2 in nxt:
                key = op(c1.mask, c2.mask)
                acc[key] = acc.get(key, 0.0) + m1 * m2
        current = MassFunction.from_pairs((ElementCode(k), v) for k, v in acc.items() if v != 0.0)
    return current


def conjunctive(experts: ExpertSet) -> MassFunction:
    """Conjunctive rule, merging after each expert. Conflict lands on the empty code."""
    return _fold(experts, lambda a, b: a & b)


def disjunctive(experts: ExpertSet) -> MassFunction:
    return _fold(experts, lambda a, b: a | b)


def global_conjunctive(experts: ExpertSet, max_terms: int = MAX_PRODUCT_TERMS) -> ConjunctiveTrace:
    """Full cross product of all experts, one term per focal combination.

    Terms follow nested-loop order with the first expert outermost.
    """
    experts = _check_experts(experts)
    n_terms = math.prod(len(e) for e in experts)
    if n_terms > max_terms:
        raise CapacityError(f"{n_terms} conjunctive terms exceed the limit of {max_terms}")
    focals, masses, provenance = [], [], []
    for combo in product(*(range(len(e)) for e in experts)):
        mask = -1
        value = 1.0
        for e, idx in zip(experts, combo):
            mask &= e.focals[idx].mask
            value *= e.masses[idx]
        focals.append(ElementCode(mask))
        masses.append(value)
        provenance.append(combo)
    return ConjunctiveTrace(tuple(focals), tuple(masses), tuple(provenance))


def _drop_empty(m: MassFunction) -> tuple[MassFunction, float]:
    k = m.conflict
    return MassFunction.from_pairs((c, v) for c, v in m if c), k


def dempster(experts: ExpertSet) -> MassFunction:
    rest, k = _drop_empty(conjunctive(experts))
    if k >= 1.0 - TOTAL_CONFLICT_EPS:
        raise TotalConflictError(f"total conflict (k={k!r}); Dempster's rule is undefined")
    if k == 0.0:
        return rest
    return MassFunction(rest.focals, [v / (1.0 - k) for v in rest.masses])


def yager_total(experts: ExpertSet, frame: Frame) -> MassFunction:
    """Conjunctive rule with the conflict moved onto total ignorance."""
    conj = conjunctive(experts)
    rest, k = _drop_empty(conj)
    if k == 0.0:
        return conj
    return reduce(MassFunction(rest.focals + (frame.universe,), rest.masses + (k,)))


def florea(experts: ExpertSet) -> MassFunction:
    conj = conjunctive(experts)
    k = conj.conflict
    if k == 0.0:
        return conj
    disj = disjunctive(experts)
    denom = 1.0 - k + k * k
    alpha = k / denom
    beta = (1.0 - k) / denom
    focals = conj.focals + disj.focals
    masses = [0.0 if not c else beta * v for c, v in conj] + [alpha * v for v in disj.masses]
    return reduce(MassFunction(focals, masses))


def pcr6(experts: ExpertSet) -> MassFunction:
    """PCR6 on the full multi-expert product.

    Each conflicting product P is given back to the focal elements that
    produced it, expert j receiving ``m_j(Y_j) * P / S`` with S the sum of
    the contributing masses.
    """
    experts = _check_experts(experts)
    trace = global_conjunctive(experts)
    focals: list[ElementCode] = []
    masses: list[float] = []
    transfers: list[tuple[ElementCode, float]] = []
    for code, p, combo in zip(trace.focals, trace.masses, trace.provenance):
        if code:
            focals.append(code)
            masses.append(p)
            continue
        if p == 0.0:
            continue
        contrib = [e.masses[i] for e, i in zip(experts, combo)]
        s = math.fsum(contrib)
        for e, i, v in zip(experts, combo, contrib):
            transfers.append((e.focals[i], v * p / s))
    for code, v in transfers:
        focals.append(code)
        masses.append(v)
    return reduce(MassFunction(focals, masses))


def mean(experts: ExpertSet) -> MassFunction:
    experts = _check_experts(experts)
    acc: dict[ElementCode, float] = {}
    for e in experts:
        for c, v in e:
            acc[c] = acc.get(c, 0.0) + v
    s = len(experts)
    return reduce(MassFunction.from_pairs((c, v / s) for c, v in acc.items()))


def disjunctive_normalized(experts: ExpertSet) -> MassFunction:
    rest, k = _drop_empty(disjunctive(experts))
    if k >= 1.0 - TOTAL_CONFLICT_EPS:
        raise TotalConflictError(f"all disjunctive mass is on the empty element (k={k!r})")
    if k == 0.0:
        return rest
    return MassFunction(rest.focals, [v / (1.0 - k) for v in rest.masses])


def apply_rule(experts: ExpertSet, rule: Union[int, str, Rule], frame: Optional[Frame] = None) -> MassFunction:
    rule = rule_from_id(rule)
    if rule is Rule.CONJUNCTIVE:
        return conjunctive(experts)
    if rule is Rule.DEMPSTER:
        return dempster(experts)
    if rule is Rule.YAGER_TOTAL:
        if frame is None:
            raise ValueError("Yager's rule needs the frame to locate total ignorance")
        return yager_total(experts, frame)
    if rule is Rule.DISJUNCTIVE:
        return disjunctive(experts)
    if rule is Rule.FLOREA:
        return florea(experts)
    if rule is Rule.PCR6:
        return pcr6(experts)
    if rule is Rule.MEAN:
        return mean(experts)
    return disjunctive_normalized(experts)


def combine(
    experts: ExpertSet,
    rule: Union[int, str, Rule],
    mode: str = "static",
    frame: Optional[Frame] = None,
) -> MassFunction:
    """Fuse all experts at once (``static``) or one at a time (``dynamic``).

    Dynamic mode folds left: the running result is combined pairwise with
    each next expert, so expert order matters for non-associative rules.
    """
    experts = _check_experts(experts)
    rule = rule_from_id(rule)
    if mode == "static":
        return apply_rule(experts, rule, frame)
    if mode != "dynamic":
        raise ValueError(f"mode must be 'static' or 'dynamic', got {mode!r}")
    running = experts[0]
    if len(experts) == 1:
        return apply_rule([running], rule, frame)
    for nxt in experts[1:]:
        running = apply_rule([running, nxt], rule, frame)
    return running
