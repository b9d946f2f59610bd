"""Exact sheaf-cohomology vanishing certificates, slope stability reports and
splitting types of pulled-back tangent bundles along rational curves."""

from fanokit._core import (
    CurveMap,
    Hypersurface,
    Spec,
    __version__,
    binom,
    bott_dimension,
    check_certificate,
    cotangent_splitting,
    default_sweep_tmin,
    hilbert_h0,
    implication_verdict,
    line_bundle_cohomology,
    on_curve_check,
    parse_problem,
    positive_rank_lower_bound,
    reparameterize,
    singularity_probe_along,
    slope_report_json,
    subsheaf_slope_ceiling,
    sweep_range,
    tangent_splitting,
    tangent_splitting_pn,
    uniruledness_evidence,
    verify_vanishing,
)

__all__ = [
    "CurveMap",
    "Hypersurface",
    "Spec",
    "__version__",
    "binom",
    "bott_dimension",
    "check_certificate",
    "cotangent_splitting",
    "default_sweep_tmin",
    "hilbert_h0",
    "implication_verdict",
    "line_bundle_cohomology",
    "on_curve_check",
    "parse_problem",
    "positive_rank_lower_bound",
    "reparameterize",
    "singularity_probe_along",
    "slope_report_json",
    "subsheaf_slope_ceiling",
    "sweep_range",
    "tangent_splitting",
    "tangent_splitting_pn",
    "uniruledness_evidence",
    "verify_vanishing",
]
