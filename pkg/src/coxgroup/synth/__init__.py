"""Synthetic survival benchmarks."""

from coxgroup.synth.generators import (
    SynthKind,
    SynthSpec,
    censoring_log_rate,
    gen_counter,
    gen_nonlinear,
    gen_plain_cox,
    generate,
    nonlinear_half_width,
)

__all__ = [
    "SynthKind",
    "SynthSpec",
    "generate",
    "gen_counter",
    "gen_nonlinear",
    "gen_plain_cox",
    "censoring_log_rate",
    "nonlinear_half_width",
]
