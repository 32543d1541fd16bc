"""Structured solve reports with a stable JSON form.

Serialization is deterministic: keys sorted, two-space indent, one trailing
newline.  Rational parameters are encoded as fraction strings so a report
round-trips byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from .partition import ConstructionParams


@dataclass
class SolveReport:
    """Everything one solve run reports.

    Fields not applicable to the run (bounds on a non-regular input, stage
    data outside the guarded construction, timings when suppressed) are
    None; a None timings dict is omitted from the JSON entirely.
    """

    n: int
    d: int | None
    algorithm: str
    achieved_k: int | None
    valid: bool
    safe_lower: int | None = None
    paper_lower: int | None = None
    beta: float | None = None
    thm_dense: float | None = None
    thm_dense_applicable: bool | None = None
    thm_general: float | None = None
    stage_failure: str | None = None
    stage_detail: str | None = None
    resamples: int | None = None
    seed: int | None = None
    params: dict | None = None
    timings: dict | None = None

    def to_json(self) -> str:
        data = asdict(self)
        if data["timings"] is None:
            del data["timings"]
        return json.dumps(data, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SolveReport":
        data = json.loads(text)
        data.setdefault("timings", None)
        return cls(**data)


def params_echo(params: ConstructionParams) -> dict:
    """JSON-safe snapshot of the derived construction constants."""
    return {
        "epsilon": str(params.epsilon),
        "gamma": str(params.gamma),
        "s_star": params.s_star,
        "omega": params.omega,
        "alpha": str(params.alpha),
        "q": params.q,
    }


def parse_fraction(text: str) -> Fraction:
    """Inverse of the str() encoding used in params_echo."""
    return Fraction(text)
