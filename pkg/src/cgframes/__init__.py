"""Continuous g-frames over atomic measure spaces: certification, factorization, decomposition."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DEFAULT_TOL,
    FrameCertificate,
    GFrameFamily,
    analysis_apply,
    canonical_dual,
    certify,
    compose,
    frame_bounds,
    frame_operator,
    linear_combination,
    orthonormal_system_defect,
    pseudo_inverse,
    synthesis_apply,
    synthesis_matrix,
)
from .decomposition import (  # noqa: E402
    FrameSplit,
    PolarParts,
    UnitaryCombo,
    onb_plus_riesz_split,
    parseval_pair_split,
    polar_decompose,
    riesz_two_onb_split,
    selfadjoint_to_unitaries,
    three_onb_split,
    three_unitary_combination,
    two_unitary_combination,
)
from .factorization import (  # noqa: E402
    check_factorization_theorems,
    classify_transition,
    completeness_check,
    transition_operator,
)
from .generators import (  # noqa: E402
    example_2_3,
    incomplete_family,
    random_frame_with_bounds,
    random_onb,
)
from .induced import CFrame, LocalBases, certify_cframe, equivalence_report, induce  # noqa: E402
from .measure import (  # noqa: E402
    DirectIntegralVector,
    LocalDims,
    MeasureSpace,
    di_inner,
    make_measure_space,
    weighted_embedding,
)
