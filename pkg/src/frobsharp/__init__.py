"""Sharp bounds on the number of Frobenius pullbacks that make a non-smooth
non-decomposed point rational, computed in exact integer arithmetic."""

from .arith import (
    Characteristic,
    base_p_digits,
    ceil_log_p,
    consecutive_p_power_form,
    p_sum,
    v_p,
)
from .bounds import (
    BoundReport,
    NonAdmissibleError,
    NonSharp,
    SeparabilityQuery,
    Sharp,
    is_admissible,
    lambda_p,
    lemma_lower_bound,
    report,
    sep_bound,
    tau_log,
    tau_piecewise,
)
from .delta_chain import DeltaChain, ExampleParams, ExtensionStep, Kind, example_family, simulate
from .partitions import FormA, FormB, Partition, decompose_lemma, enumerate_partitions, tau_oracle

__version__ = "0.1.0"
