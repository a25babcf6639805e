"""Decision functions and strategies.

Scoring functions return one value per candidate code. :func:`decide`
picks the best candidate of a decision domain under one of the criteria::

    0 max bba              3 credibility with reject    6 weighted plausibility
    1 pignistic (GPT)      4 plausibility               7 weighted credibility
    2 credibility          5 DSmP                       8 weighted pignistic

Weighted criteria multiply the score by a Bayesian mass
``m_d(X) ∝ λ_X / C_M(X)**r`` that favours specific elements when r > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from itertools import combinations
from typing import Optional, Sequence, Union

from . import hyperpowerset
from .codification import ElementCode, Frame, eval_expression
from .errors import CapacityError, DecisionParameterError
from .mass import MassFunction

DEFAULT_EPSILON = 1e-5
DEFAULT_LAMBDA = 1.0
DEFAULT_R = 0.5
MAX_DOMAIN = 10**7


class Criterion(IntEnum):
    MAX_BBA = 0
    PIGNISTIC = 1
    CREDIBILITY = 2
    CREDIBILITY_REJECT = 3
    PLAUSIBILITY = 4
    DSMP = 5
    WEIGHTED_PLAUSIBILITY = 6
    WEIGHTED_CREDIBILITY = 7
    WEIGHTED_PIGNISTIC = 8


FUNCTIONAL_NAMES = {
    Criterion.MAX_BBA: "bba",
    Criterion.PIGNISTIC: "BetP",
    Criterion.CREDIBILITY: "Bel",
    Criterion.CREDIBILITY_REJECT: "Bel",
    Criterion.PLAUSIBILITY: "Pl",
    Criterion.DSMP: "DSmP",
    Criterion.WEIGHTED_PLAUSIBILITY: "weighted Pl",
    Criterion.WEIGHTED_CREDIBILITY: "weighted Bel",
    Criterion.WEIGHTED_PIGNISTIC: "weighted BetP",
}


def criterion_from_id(value: Union[int, Criterion]) -> Criterion:
    try:
        return Criterion(int(value))
    except (ValueError, TypeError):
        raise DecisionParameterError(f"unknown decision criterion {value!r}") from None


@dataclass(frozen=True)
class DecisionOutcome:
    kind: str  # "chosen", "rejected" or "undecidable"
    functional: str
    element: Optional[ElementCode] = None
    score: Optional[float] = None

    @property
    def chosen(self) -> bool:
        return self.kind == "chosen"


# scoring functions ---------------------------------------------------------


def credibility(m: MassFunction, candidates: Sequence[ElementCode], compat: bool = False) -> list[float]:
    """Bel(X): mass of the non-empty focals included in X.

    With ``compat`` the empty focal's mass is also added to every candidate,
    a compatibility mode for configurations tuned to that behaviour.
    """
    out = []
    for x in candidates:
        total = math.fsum(v for y, v in m if y and y.issubset(x))
        if compat:
            total += m.conflict
        out.append(total)
    return out


def plausibility(m: MassFunction, candidates: Sequence[ElementCode]) -> list[float]:
    """Pl(X): mass of the focals meeting X."""
    return [math.fsum(v for y, v in m if not x.isdisjoint(y)) for x in candidates]


def pignistic(m: MassFunction, candidates: Sequence[ElementCode], compat: bool = False) -> list[float]:
    """Generalized pignistic probability with DSm cardinality ratios.

    The empty focal is left out (no renormalization) unless ``compat``.
    """
    out = []
    for x in candidates:
        total = math.fsum(v * len(x & y) / len(y) for y, v in m if y)
        if compat:
            total += m.conflict
        out.append(total)
    return out


def dsmp(m: MassFunction, candidates: Sequence[ElementCode], epsilon: float = DEFAULT_EPSILON) -> list[float]:
    """DSmP_ε: pignistic-like transfer weighted by the masses of single-part focals."""
    if not epsilon > 0:
        raise DecisionParameterError(f"epsilon must be > 0, got {epsilon!r}")
    atom = {}
    for y, v in m:
        if len(y) == 1:
            atom[y.mask] = atom.get(y.mask, 0.0) + v

    def sigma(z: ElementCode) -> float:
        return math.fsum(atom.get(1 << (p - 1), 0.0) for p in z.parts) if atom else 0.0

    out = []
    for x in candidates:
        terms = []
        for y, v in m:
            inter = x & y
            if not inter:
                continue
            terms.append(v * (sigma(inter) + epsilon * len(inter)) / (sigma(y) + epsilon * len(y)))
        out.append(math.fsum(terms))
    return out


def bayesian_specificity_mass(
    domain: Sequence[ElementCode],
    lam: Union[float, Sequence[float]] = DEFAULT_LAMBDA,
    r: float = DEFAULT_R,
) -> list[float]:
    """m_d(X) = K_d * λ_X / C_M(X)**r, normalized over ``domain``."""
    if not domain:
        raise DecisionParameterError("empty decision domain")
    if not 0.0 <= r <= 1.0:
        raise DecisionParameterError(f"r must lie in [0, 1], got {r!r}")
    lams = _lambdas(lam, len(domain))
    raw = []
    for x, weight in zip(domain, lams):
        if not x:
            raise DecisionParameterError("the empty element has no specificity mass")
        raw.append(weight * len(x) ** (-r))
    k = math.fsum(raw)
    return [v / k for v in raw]


def _lambdas(lam, size: int) -> list[float]:
    if isinstance(lam, (int, float)):
        lams = [float(lam)] * size
    else:
        lams = [float(v) for v in lam]
        if len(lams) != size:
            raise DecisionParameterError(f"{len(lams)} lambda weights for {size} decision elements")
    if any(not v > 0 for v in lams):
        raise DecisionParameterError("lambda weights must be > 0")
    return lams


def weighted_scores(f_d: Sequence[float], m_d: Sequence[float]) -> list[float]:
    """Elementwise product renormalized to sum 1 (all zeros stay zero)."""
    prod = [a * b for a, b in zip(f_d, m_d)]
    total = math.fsum(prod)
    if total == 0:
        return prod
    return [v / total for v in prod]


# decision domains ----------------------------------------------------------


@dataclass(frozen=True)
class DomainSpec:
    """Which elements to decide on.

    kind is one of ``S`` (singletons), ``F`` (focals), ``SF``, ``2T`` (unions
    of singletons), ``A`` (all of D_r), ``Cm`` (every part subset with DSm
    cardinality in [min_s, max_s]) or ``explicit`` (listed expressions).
    """

    kind: str
    min_s: int = 0
    max_s: int = 0
    expressions: tuple[str, ...] = field(default=())


_KINDS = ("S", "F", "SF", "2T", "A", "Cm")


def parse_domain_spec(items: Union[str, Sequence[str]]) -> DomainSpec:
    """Read the list form: ``['F']``, ``['Cm', '2', '4']`` or ``['1n2', '3']``."""
    if isinstance(items, str):
        items = [items]
    items = [str(v) for v in items]
    if not items:
        raise DecisionParameterError("empty decision domain")
    head = items[0]
    if head == "Cm":
        if len(items) not in (2, 3):
            raise DecisionParameterError("'Cm' takes a specificity or a min and a max")
        try:
            lo = int(items[1])
            hi = int(items[-1])
        except ValueError:
            raise DecisionParameterError(f"bad specificity bounds {items[1:]}") from None
        return DomainSpec("Cm", lo, hi)
    if head in _KINDS:
        if len(items) > 1:
            raise DecisionParameterError(f"'{head}' takes no extra arguments")
        return DomainSpec(head)
    return DomainSpec("explicit", expressions=tuple(items))


def _dedup(codes):
    seen = set()
    out = []
    for c in codes:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def build_decision_domain(spec: Union[DomainSpec, str, Sequence[str]], frame: Frame, m: MassFunction) -> list[ElementCode]:
    if not isinstance(spec, DomainSpec):
        spec = parse_domain_spec(spec)
    kind = spec.kind
    if kind == "S":
        return list(frame.singletons)
    if kind == "F":
        return list(m.focals)
    if kind == "SF":
        return _dedup(list(m.focals) + list(frame.singletons))
    if kind == "2T":
        return _dedup(code for code, _ in hyperpowerset.power_set_sweep(frame))
    if kind == "A":
        return [entry.code for entry in hyperpowerset.generate_dthetar(frame)]
    if kind == "Cm":
        return specificity_domain(frame, spec.min_s, spec.max_s)
    if kind == "explicit":
        return _dedup(eval_expression(text, frame) for text in spec.expressions)
    raise DecisionParameterError(f"unknown decision domain {kind!r}")


def specificity_domain(frame: Frame, min_s: int, max_s: int, limit: int = MAX_DOMAIN) -> list[ElementCode]:
    """All part subsets of the frame with DSm cardinality in [min_s, max_s].

    These need not be unions of intersections of singletons, hence may not
    belong to D_r.
    """
    parts = frame.universe.parts
    n_v = len(parts)
    if not 0 <= min_s <= max_s <= n_v:
        raise DecisionParameterError(f"need 0 <= min_s <= max_s <= n_V={n_v}, got {min_s}, {max_s}")
    size = sum(math.comb(n_v, s) for s in range(min_s, max_s + 1))
    if size > limit:
        raise CapacityError(f"{size} candidate elements exceed the limit of {limit}")
    return [ElementCode.of(c) for s in range(min_s, max_s + 1) for c in combinations(parts, s)]


# decision -----------------------------------------------------------------


def _argmax(scores: Sequence[float], domain: Sequence[ElementCode]) -> Optional[int]:
    # the empty element is never a decision, whatever mass it carries
    best = None
    for i, (v, x) in enumerate(zip(scores, domain)):
        if x and (best is None or v > scores[best]):
            best = i
    return best


def criterion_scores(
    m: MassFunction,
    criterion: Union[int, Criterion],
    domain: Sequence[ElementCode],
    *,
    epsilon: float = DEFAULT_EPSILON,
    lam: Union[float, Sequence[float]] = DEFAULT_LAMBDA,
    r: float = DEFAULT_R,
    compat: bool = False,
) -> list[float]:
    """Score of every domain element under ``criterion``."""
    criterion = criterion_from_id(criterion)
    if criterion is Criterion.MAX_BBA:
        masses = m.as_dict()
        return [masses.get(x, 0.0) for x in domain]
    if criterion is Criterion.PIGNISTIC:
        return pignistic(m, domain, compat)
    if criterion in (Criterion.CREDIBILITY, Criterion.CREDIBILITY_REJECT):
        return credibility(m, domain, compat)
    if criterion is Criterion.PLAUSIBILITY:
        return plausibility(m, domain)
    if criterion is Criterion.DSMP:
        return dsmp(m, domain, epsilon)
    if criterion is Criterion.WEIGHTED_PLAUSIBILITY:
        f_d = plausibility(m, domain)
    elif criterion is Criterion.WEIGHTED_CREDIBILITY:
        f_d = credibility(m, domain, compat)
    else:
        f_d = pignistic(m, domain, compat)
    # the empty element carries no specificity mass and scores 0
    lams = _lambdas(lam, len(domain))
    idx = [i for i, x in enumerate(domain) if x]
    if not idx:
        return [0.0] * len(domain)
    m_d = [0.0] * len(domain)
    for i, v in zip(idx, bayesian_specificity_mass([domain[i] for i in idx], [lams[i] for i in idx], r)):
        m_d[i] = v
    return weighted_scores(f_d, m_d)


def decide(
    m: MassFunction,
    criterion: Union[int, Criterion],
    domain: Sequence[ElementCode],
    frame: Optional[Frame] = None,
    *,
    epsilon: float = DEFAULT_EPSILON,
    lam: Union[float, Sequence[float]] = DEFAULT_LAMBDA,
    r: float = DEFAULT_R,
    compat: bool = False,
) -> DecisionOutcome:
    """Argmax of the criterion over ``domain``; ties go to the first element.

    The empty element is skipped as a candidate. A best score of 0 gives an ``undecidable`` outcome. Criterion 3 also
    compares the winner against its complement in the frame (needs
    ``frame``) and rejects when the complement is more credible or cannot be
    scored.
    """
    criterion = criterion_from_id(criterion)
    domain = list(domain)
    if not domain:
        raise DecisionParameterError("empty decision domain")
    name = FUNCTIONAL_NAMES[criterion]
    scores = criterion_scores(m, criterion, domain, epsilon=epsilon, lam=lam, r=r, compat=compat)
    best = _argmax(scores, domain)
    if best is None or not scores[best] > 0:
        return DecisionOutcome("undecidable", name)
    top = scores[best]
    winner = domain[best]
    if criterion is Criterion.CREDIBILITY_REJECT:
        if frame is None:
            raise DecisionParameterError("the reject criterion needs the frame")
        complement = frame.universe - winner
        scorable = set(domain) | set(m.focals)
        if complement not in scorable:
            return DecisionOutcome("rejected", name, winner, top)
        if top < credibility(m, [complement], compat)[0]:
            return DecisionOutcome("rejected", name, winner, top)
    return DecisionOutcome("chosen", name, winner, top)
