"""
bracketflow: the RG-2 bracket flow on three-dimensional unimodular Lie groups.

Structure constants (a1, a2, a3) of a Milnor frame determine the group, the
curvature of the left-invariant metric and the flow velocity. The package
integrates the flow, finds its steady solitons, audits a printed soliton
table and draws the phase portrait of the ratio system.
"""
from .algebra import (StructureConstants, GroupClass, canonicalize, classify,
                      equivalent, sign_signature)
from .curvature import (CurvatureProfile, connection_coefficients, curvature_profile,
                        oracle_profile, parabolic, ricci_eigenvalues, sectional_curvatures)
from .exceptions import (BracketFlowError, InvalidConstantsError, InvalidMetricError,
                         InvalidParameterError)
from .flow import (FlowParameters, Trajectory, integrate, metric_rhs, orthonormalize,
                   parse_trajectory_csv, rg2_jacobian, rg2_rhs, ricci_rhs, trajectory_to_csv)
from .normalized import (NormalizedState, integrate_frozen_beta, m_fixed_points, m_region,
                         m_rhs, portrait_csv, vector_field_grid)
from .portrait import render_portrait
from .soliton import (FixedPointRecord, SweepResult, axis_condition, enumerate_analytic,
                      is_fixed, newton_refine, newton_sweep, paper_table_check, residual)

__version__ = "1.0.0"

__all__ = [
    "StructureConstants", "GroupClass", "canonicalize", "classify", "equivalent", "sign_signature",
    "CurvatureProfile", "connection_coefficients", "curvature_profile", "oracle_profile",
    "parabolic", "ricci_eigenvalues", "sectional_curvatures",
    "BracketFlowError", "InvalidConstantsError", "InvalidMetricError", "InvalidParameterError",
    "FlowParameters", "Trajectory", "integrate", "metric_rhs", "orthonormalize",
    "parse_trajectory_csv", "rg2_jacobian", "rg2_rhs", "ricci_rhs", "trajectory_to_csv",
    "NormalizedState", "integrate_frozen_beta", "m_fixed_points", "m_region", "m_rhs",
    "portrait_csv", "vector_field_grid", "render_portrait",
    "FixedPointRecord", "SweepResult", "axis_condition", "enumerate_analytic", "is_fixed",
    "newton_refine", "newton_sweep", "paper_table_check", "residual",
]
