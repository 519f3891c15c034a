"""Decision support for web-usability A/B testing.

Evaluations (SUS and NPS questionnaires, scripted usability tests,
accessibility verdicts) collected under role-playing are scored, expressed as
linguistic 2-tuples, unified onto a common nine-term scale, aggregated per
role and globally with fuzzy-AHP criteria weights, ranked by closeness to the
ideal alternative, and reported on the adjective usability scale.
"""

from .linguistic import (
    HIERARCHY,
    S3,
    S5,
    S9,
    TermSet,
    TwoTuple,
    delta,
    delta_inverse,
    transform_level,
    weighted_average,
)
from .sus_scale import UnbalancedSusValue, retranslate_from_s9, tf_sus, unify_to_s9
from .fahp import (
    CriteriaWeights,
    TriangularFuzzyNumber,
    build_pairwise_matrix,
    derive_weights,
    possibility_degree,
)
from .pipeline import evaluate
from .project import ProjectConfig, ProjectStore, Submission
from .reporting import compose_report, render_text

__version__ = "0.1.0"

__all__ = [
    "HIERARCHY",
    "S3",
    "S5",
    "S9",
    "TermSet",
    "TwoTuple",
    "delta",
    "delta_inverse",
    "transform_level",
    "weighted_average",
    "UnbalancedSusValue",
    "tf_sus",
    "unify_to_s9",
    "retranslate_from_s9",
    "TriangularFuzzyNumber",
    "CriteriaWeights",
    "build_pairwise_matrix",
    "derive_weights",
    "possibility_degree",
    "evaluate",
    "ProjectConfig",
    "ProjectStore",
    "Submission",
    "compose_report",
    "render_text",
    "__version__",
]
