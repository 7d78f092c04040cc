from dataclasses import dataclass

# Summary fields the batch aggregate reports
AGGREGATED_METRICS = (
    "best_phi",
    "initial_phi",
    "error_index",
    "fw_calls",
    "elapsed_s",
    "call_saving",
    "eta",
)


@dataclass(frozen=True)
class RunSummary:
    """
    Outcome of one inversion.

    call_saving is the measured share of full-wave solves saved against
    P * go_iterations; time_saving is the share an sbd run is budgeted to
    save. Metrics that could not be computed are None.
    """

    scenario: str
    mode: str
    seed: int
    config_hash: str
    best_phi: float
    initial_phi: float
    fw_calls: int
    training_size: int | None
    elapsed_s: float
    error_index: float | None = None
    time_saving: float | None = None
    call_saving: float | None = None
    eta: float | None = None


@dataclass(frozen=True)
class AggregateRow:
    metric: str
    median: float | None
    q1: float | None
    q3: float | None
    n: int
