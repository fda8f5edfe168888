"""Packet latency, channel utilization and latency-targeting adaptation for a UAV relay chain."""
from .adaptation import (
    AdaptationParams,
    AdaptationTrace,
    ControllerState,
    TraceRecord,
    initial_ts,
    run_adaptation,
    step,
)
from .channel_model import (
    ChainTopology,
    MetricResult,
    TransmissionConfig,
    evaluate,
    latency,
    utilization,
    utilization_ber,
)
from .errors import (
    ModelFileError,
    ChannelDomainError,
    NonPhysicalPredictionError,
    NonTerminationError,
    SingularFitError,
)
from .experiments import (
    SweepTable,
    sweep_latency,
    sweep_utilization_ber,
    sweep_utilization_rate,
    sweep_utilization_ts,
)
from .regression import (
    LinearModel,
    SlopeModel,
    TrainingMeta,
    TrainingSample,
    fit_ols,
    generate_training_set,
    predict_ts,
    train_default_model,
)

__version__ = "0.1.0"
