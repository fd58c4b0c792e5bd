"""Modification classes of flat metrics on the once-punctured disk."""

from ._core import (
    FlatpunctError,
    Metric,
    __version__,
    apply_plan,
    apply_tri_cut,
    canonical_count,
    canonicalize,
    circulant_determinant,
    classify,
    cone_completion,
    equivalent,
    invariant,
    principal_singularity,
    puncture_curvature,
    render_svg,
    run_cli,
    total_curvature,
    validate,
)

__all__ = [
    "FlatpunctError",
    "Metric",
    "__version__",
    "apply_plan",
    "apply_tri_cut",
    "canonical_count",
    "canonicalize",
    "circulant_determinant",
    "classify",
    "cone_completion",
    "equivalent",
    "invariant",
    "principal_singularity",
    "puncture_curvature",
    "render_svg",
    "run_cli",
    "total_curvature",
    "validate",
]
