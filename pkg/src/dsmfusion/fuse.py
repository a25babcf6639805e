"""The fuse pipeline driven by a JSON configuration.

Pipeline: frame coding, constraints, expert coding, combination, decision,
rendering. Example configuration (``docs/sample_config.json``)::

    {
      "schema": 1,
      "card_theta": 4,
      "experts": [
        {"focal": ["1", "1u3", "3", "1u2u3"], "bba": [0.5421, 0.2953, 0.0924, 0.0702]},
        {"focal": ["1", "2", "1u3", "1u2u3"], "bba": [0.2022, 0.6891, 0.0084, 0.1003]},
        {"focal": ["1", "3n4", "1u2u3"], "bba": [0.2022, 0.6891, 0.1087]}
      ],
      "constraints": ["1n2", "1n3", "2n3"],
      "elem_dec": ["F"],
      "criterium_comb": 1,
      "criterium_dec": 0,
      "mode": "static",
      "display": 3
    }

Display modes: 0 nothing, 1 combined bba decoded to expressions, 2 the
decision only, 3 both, 4 both in Smarandache codification (which never
generates D_r).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from . import hyperpowerset
from .codification import (
    SHAFER,
    ElementCode,
    Frame,
    apply_constraints,
    coding_theta,
    eval_expression,
    smarandache_string,
)
from .combination import combine, rule_from_id
from .decision import (
    DEFAULT_EPSILON,
    DEFAULT_LAMBDA,
    DEFAULT_R,
    DecisionOutcome,
    DomainSpec,
    build_decision_domain,
    criterion_from_id,
    decide,
    parse_domain_spec,
)
from .errors import ConfigError, DSmError
from .mass import MASS_TOLERANCE, MassFunction, coding_expert

SCHEMA_VERSION = 1
DISPLAY_MODES = (0, 1, 2, 3, 4)


@dataclass
class ExpertConfig:
    focal: list[str]
    bba: list[float]


@dataclass
class FusionConfig:
    card_theta: int
    experts: list[ExpertConfig]
    constraints: Union[list[str], str] = field(default_factory=list)
    elem_dec: list[str] = field(default_factory=lambda: ["S"])
    criterium_comb: int = 1
    criterium_dec: int = 1
    mode: str = "static"
    display: int = 4
    epsilon: float = DEFAULT_EPSILON
    lam: Union[float, list[float]] = DEFAULT_LAMBDA
    r: float = DEFAULT_R
    compat: bool = False

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FusionConfig":
        if not isinstance(data, dict):
            raise ConfigError("config: expected a JSON object")
        known = {
            "schema", "card_theta", "experts", "constraints", "elem_dec", "criterium_comb",
            "criterium_dec", "mode", "display", "epsilon", "lambda", "r", "compat",
        }
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"config: unknown field(s) {', '.join(unknown)}")
        schema = data.get("schema", SCHEMA_VERSION)
        if schema != SCHEMA_VERSION:
            raise ConfigError(f"schema: unsupported version {schema!r}")
        if "card_theta" not in data:
            raise ConfigError("card_theta: missing")
        if "experts" not in data:
            raise ConfigError("experts: missing")
        card = _int(data["card_theta"], "card_theta")
        raw_experts = data["experts"]
        if not isinstance(raw_experts, list) or not raw_experts:
            raise ConfigError("experts: expected a non-empty list")
        experts = [_expert(e, f"experts[{i}]") for i, e in enumerate(raw_experts)]

        constraints = data.get("constraints", [])
        if isinstance(constraints, str):
            constraints = [constraints] if constraints else []
        if not isinstance(constraints, list) or not all(isinstance(c, str) for c in constraints):
            raise ConfigError("constraints: expected a list of expression strings or \"2T\"")
        if SHAFER in constraints and len(constraints) > 1:
            raise ConfigError("constraints: \"2T\" must be the only constraint")

        elem_dec = data.get("elem_dec", ["S"])
        if isinstance(elem_dec, str):
            elem_dec = [elem_dec]
        if not isinstance(elem_dec, list) or not elem_dec:
            raise ConfigError("elem_dec: expected a non-empty list of strings")
        elem_dec = [str(v) for v in elem_dec]

        comb = _int(data.get("criterium_comb", 1), "criterium_comb")
        if not 1 <= comb <= 8:
            raise ConfigError(f"criterium_comb: expected 1..8, got {comb}")
        dec = _int(data.get("criterium_dec", 1), "criterium_dec")
        if not 0 <= dec <= 8:
            raise ConfigError(f"criterium_dec: expected 0..8, got {dec}")
        mode = data.get("mode", "static")
        if mode not in ("static", "dynamic"):
            raise ConfigError(f"mode: expected 'static' or 'dynamic', got {mode!r}")
        display = _int(data.get("display", 4), "display")
        if display not in DISPLAY_MODES:
            raise ConfigError(f"display: expected 0..4, got {display}")
        epsilon = _float(data.get("epsilon", DEFAULT_EPSILON), "epsilon")
        if not epsilon > 0:
            raise ConfigError("epsilon: must be > 0")
        lam = data.get("lambda", DEFAULT_LAMBDA)
        if isinstance(lam, list):
            lam = [_float(v, f"lambda[{i}]") for i, v in enumerate(lam)]
        else:
            lam = _float(lam, "lambda")
        r = _float(data.get("r", DEFAULT_R), "r")
        if not 0 <= r <= 1:
            raise ConfigError("r: must lie in [0, 1]")
        compat = data.get("compat", False)
        if not isinstance(compat, bool):
            raise ConfigError("compat: expected true or false")
        return cls(card, experts, constraints, elem_dec, comb, dec, mode, display, epsilon, lam, r, compat)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "card_theta": self.card_theta,
            "experts": [{"focal": list(e.focal), "bba": list(e.bba)} for e in self.experts],
            "constraints": list(self.constraints),
            "elem_dec": list(self.elem_dec),
            "criterium_comb": self.criterium_comb,
            "criterium_dec": self.criterium_dec,
            "mode": self.mode,
            "display": self.display,
            "epsilon": self.epsilon,
            "lambda": self.lam,
            "r": self.r,
            "compat": self.compat,
        }


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    return value


def _float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{path}: expected a finite number, got {value!r}")
    return float(value)


def _expert(raw, path: str) -> ExpertConfig:
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: expected an object with 'focal' and 'bba'")
    focal = raw.get("focal")
    bba = raw.get("bba")
    if not isinstance(focal, list) or not all(isinstance(f, str) for f in focal) or not focal:
        raise ConfigError(f"{path}.focal: expected a non-empty list of expression strings")
    if not isinstance(bba, list):
        raise ConfigError(f"{path}.bba: expected a list of numbers")
    bba = [_float(v, f"{path}.bba[{i}]") for i, v in enumerate(bba)]
    if len(focal) != len(bba):
        raise ConfigError(f"{path}: the numbers of bba ({len(bba)}) and focal elements ({len(focal)}) are different")
    if any(v < 0 for v in bba):
        raise ConfigError(f"{path}.bba: masses must be >= 0")
    if abs(math.fsum(bba) - 1.0) > MASS_TOLERANCE:
        raise ConfigError(f"{path}.bba: masses sum to {math.fsum(bba)!r}, expected 1")
    return ExpertConfig(focal, bba)


def load_config(path: Union[str, Path]) -> FusionConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return FusionConfig.from_dict(data)


# pipeline -----------------------------------------------------------------


@dataclass
class FuseResult:
    config: FusionConfig
    frame: Frame
    experts: list[MassFunction]
    combined: MassFunction
    domain: list[ElementCode]
    outcome: DecisionOutcome


def fuse(config: FusionConfig) -> FuseResult:
    try:
        frame = coding_theta(config.card_theta)
    except DSmError as exc:
        raise ConfigError(f"card_theta: {exc}") from exc
    try:
        frame = apply_constraints(config.constraints, frame)
    except (DSmError, ValueError) as exc:
        raise ConfigError(f"constraints: {exc}") from exc
    experts = []
    for i, e in enumerate(config.experts):
        try:
            experts.append(coding_expert(zip(e.focal, e.bba), frame))
        except DSmError as exc:
            raise ConfigError(f"experts[{i}]: {exc}") from exc
    combined = combine(experts, rule_from_id(config.criterium_comb), config.mode, frame)
    spec = parse_domain_spec(config.elem_dec)
    domain = build_decision_domain(spec, frame, combined)
    outcome = decide(
        combined,
        criterion_from_id(config.criterium_dec),
        domain,
        frame,
        epsilon=config.epsilon,
        lam=config.lam,
        r=config.r,
        compat=config.compat,
    )
    return FuseResult(config, frame, experts, combined, domain, outcome)


def _decision_expression(outcome: DecisionOutcome, spec: DomainSpec, result: FuseResult) -> str:
    # decisions on user-listed elements are named the way the user wrote them
    code = outcome.element
    if spec.kind == "explicit":
        for text in spec.expressions:
            if eval_expression(text, result.frame) == code:
                return text
    text = hyperpowerset.decode_many([code], result.frame)[0]
    return text if text is not None else smarandache_string(code, result.frame)


def run_fuse(config: FusionConfig) -> dict[str, Any]:
    """Run the pipeline and build the JSON-ready report."""
    result = fuse(config)
    frame = result.frame
    display = config.display
    combined = [
        {"code": list(c.parts), "smarandache": smarandache_string(c, frame), "mass": v}
        for c, v in result.combined
    ]
    if display in (1, 3):
        for row, text in zip(combined, hyperpowerset.decode_many(result.combined.focals, frame)):
            row["expression"] = text if text is not None else row["smarandache"]
    outcome = result.outcome
    decision: dict[str, Any] = {"kind": outcome.kind, "functional": outcome.functional}
    if outcome.element is not None:
        decision["code"] = list(outcome.element.parts)
        decision["smarandache"] = smarandache_string(outcome.element, frame)
        decision["score"] = outcome.score
        if display in (2, 3) and outcome.chosen:
            decision["expression"] = _decision_expression(outcome, parse_domain_spec(config.elem_dec), result)
    return {
        "schema": SCHEMA_VERSION,
        "config": config.to_dict(),
        "frame": {
            "n": frame.n,
            "singletons": [list(c.parts) for c in frame.singletons],
            "removed_parts": list(frame.removed_parts.parts),
        },
        "conflict": result.combined.conflict,
        "combined": combined,
        "decision": decision,
    }


def _decision_line(decision: dict[str, Any], key: str) -> str:
    if decision["kind"] == "rejected":
        return "decision: rejected"
    if decision["kind"] == "undecidable":
        return "decision: cannot be taken"
    return f"decision: {decision[key]}"


def render_text(report: dict[str, Any], display: Optional[int] = None) -> str:
    """Human-readable output; masses with 6 significant digits."""
    if display is None:
        display = report["config"]["display"]
    lines = []
    if display in (1, 3):
        lines += [f"{row['expression']}={row['mass']:.6g}" for row in report["combined"]]
    if display == 4:
        lines += [f"{row['smarandache']}={row['mass']:.6g}" for row in report["combined"]]
    if display in (2, 3):
        lines.append(_decision_line(report["decision"], "expression"))
    if display == 4:
        lines.append(_decision_line(report["decision"], "smarandache"))
    return "\n".join(lines) + ("\n" if lines else "")


def report_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2) + "\n"
