"""Typed failures for the guarded construction pipeline.

Every abort path raises a StageFailure subclass naming the pipeline stage
it belongs to, so callers can report exactly where a run stopped without
parsing message strings.  The pipeline never returns a weighting after any
of these fire.
"""

from __future__ import annotations


class StageFailure(RuntimeError):
    """A guarded construction stage refused to continue."""

    stage = "unknown"

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class PrecheckError(StageFailure):
    """Input graph outside the construction's domain."""

    stage = "precheck"


class ParamsError(StageFailure):
    """Tuning parameters violate their admissible ranges."""

    stage = "params"


class PartitionError(StageFailure):
    """Partition sampling failed: the scale is degenerate for the class
    layout, or the resample budget ran out before all conditions held."""

    stage = "partition"


class Step2RangeError(StageFailure):
    """A level-adjustment increment fell outside its admissible range."""

    stage = "step2"


class SOrderError(StageFailure):
    """No valid processing order for the designated vertices exists."""

    stage = "s_order"


class Step3InfeasibleError(StageFailure):
    """Residue-class separation cannot be realized at this scale."""

    stage = "step3"


class VerifyError(StageFailure):
    """Final weighting failed the irregularity check."""

    stage = "verify"


class SearchBudgetError(RuntimeError):
    """Exhaustive search exceeded its node budget before finishing."""
