"""Hitchin representations of triangle groups and their triangular Finsler limits."""

from .algebra import LaurentPoly, Mat3, NFElem, NumberField, ScaledMat3, cos_embed, number_field
from .domain_shape import (
    FLAT_LIFT,
    TITEICA_LIFT,
    TWICE_EUCLIDEAN,
    BilinearForm,
    GaugeBall,
    Polygon,
    SmoothBody,
    dds_eval,
    delta_ball,
    ellipse,
    fds_eval,
    hilbert_distance,
    polar_dual,
    titeica_point,
    truncated_ball,
    unit_disk,
)
from .flat_metric import check_degree_length, edge_weight, finsler_delta_eval, translation_length
from .spectral import (
    JordanPoint,
    enumerate_even_classes,
    jordan_projection,
    jordan_scan,
    lattice_distances,
    log_eigenvalues,
    trace_top_degrees,
)
from .triangle_group import (
    Presentation,
    build_rep,
    cyclic_reduce,
    element_id,
    evaluate_word_numeric,
    evaluate_word_symbolic,
    gram_matrix,
    inverse_word,
    reduce_word,
    symbolic_rep,
    triple_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "Mat3",
    "NFElem",
    "NumberField",
    "ScaledMat3",
    "cos_embed",
    "number_field",
    "FLAT_LIFT",
    "TITEICA_LIFT",
    "TWICE_EUCLIDEAN",
    "BilinearForm",
    "GaugeBall",
    "Polygon",
    "SmoothBody",
    "dds_eval",
    "delta_ball",
    "ellipse",
    "fds_eval",
    "hilbert_distance",
    "polar_dual",
    "titeica_point",
    "truncated_ball",
    "unit_disk",
    "check_degree_length",
    "edge_weight",
    "finsler_delta_eval",
    "translation_length",
    "JordanPoint",
    "enumerate_even_classes",
    "jordan_projection",
    "jordan_scan",
    "lattice_distances",
    "log_eigenvalues",
    "trace_top_degrees",
    "Presentation",
    "build_rep",
    "cyclic_reduce",
    "element_id",
    "evaluate_word_numeric",
    "evaluate_word_symbolic",
    "gram_matrix",
    "inverse_word",
    "reduce_word",
    "symbolic_rep",
    "triple_ratio",
]
