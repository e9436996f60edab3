"""Trust quantification for classifiers from exported prediction records."""
__version__ = "0.1.0"

from ._backend import BACKEND
from .density import TrustDensity, bandwidth, estimate_density, evaluate_density, integrate_density
from .records import (
    PredictionRecord,
    RecordError,
    RecordSet,
    derive_confidence,
    load_records,
    load_run_manifest,
    parse_records,
    serialize_records,
)
from .report import ComparisonTable, ModelTrustSummary, compare_models, model_summary
from .spectrum import (
    ScenarioGroup,
    TrustSpectrum,
    group_by_scenario,
    net_trust_score,
    spectrum_coefficient,
    trust_spectrum,
)
from .trust import (
    ScoredRecord,
    TrustParams,
    accuracy_fractions,
    expected_confidence_correct,
    expected_confidence_incorrect,
    partition,
    question_answer_trust,
    score_all,
)
