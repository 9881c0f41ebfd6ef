"""Structured verdicts shared by every verifier."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .subsets import Subset


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    EQUALITY = "equality"
    OUT_OF_RANGE = "out_of_range"


class Sense(str, enum.Enum):
    """The relation claimed between ``lhs`` and ``rhs``."""

    LE = "<="
    LT = "<"
    GE = ">="
    GT = ">"
    EQ = "=="

    def holds(self, lhs, rhs) -> bool:
        return {
            "<=": lhs <= rhs,
            "<": lhs < rhs,
            ">=": lhs >= rhs,
            ">": lhs > rhs,
            "==": lhs == rhs,
        }[self.value]


def judge(lhs, rhs, sense: Sense) -> Verdict:
    """Verdict for ``lhs sense rhs``: EQUALITY on a tight non-strict claim."""
    if not sense.holds(lhs, rhs):
        return Verdict.FAIL
    if lhs == rhs:
        return Verdict.EQUALITY
    return Verdict.PASS


def to_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def fraction_str(x) -> str:
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class LemmaReport:
    """Exact outcome of one check.

    ``slack`` is always ``rhs - lhs``; its sign relative to ``sense`` gives the
    verdict.  ``details`` carries sub-checks and traces.
    """

    lemma_id: str
    params: dict
    lhs: Any
    rhs: Any
    sense: Sense
    verdict: Verdict | None = None
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lhs = to_fraction(self.lhs)
        self.rhs = to_fraction(self.rhs)
        if self.verdict is None:
            self.verdict = judge(self.lhs, self.rhs, self.sense)

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs

    @property
    def ok(self) -> bool:
        return self.verdict in (Verdict.PASS, Verdict.EQUALITY)

    def to_json(self) -> dict:
        out = {
            "lemma": self.lemma_id,
            "params": _jsonable(self.params),
            "lhs": fraction_str(self.lhs),
            "rhs": fraction_str(self.rhs),
            "sense": self.sense.value,
            "slack": fraction_str(self.slack),
            "verdict": self.verdict.value,
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.details:
            out["details"] = _jsonable(self.details)
        return out


def _jsonable(x):
    if isinstance(x, Subset):
        return list(x.elements)
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, LemmaReport):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "as_lists"):
        return {"n": x.n, "sets": x.as_lists()}
    return x
