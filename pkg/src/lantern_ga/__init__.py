"""Schwarz lanterns and the schedule dependence of inscribed-triangle pseudoscalars."""
from .analysis import (ConvergenceReport, NotConvergedError, ProbeResult, RefinementStep,
                       Schedule, ScheduleError, ScheduleKind, Verdict, area_sequence,
                       mixture_limit, projected_area, projected_area_closed_form,
                       pseudoscalar_asymptotic, pseudoscalar_estimate, run_schedule,
                       tangent_pseudoscalar, well_definedness_probe)
from .ga3 import (Bivector3, DegenerateBladeError, Vector3, bivector_norm,
                  bivector_scalar_product, normalize, plane_angle, wedge)
from .kernels import BACKEND
from .lantern import (LanternParams, MeshTooLargeError, ParameterError, Triangle,
                      TriangleMesh, apex_triangle, check_nesting, closed_form_area,
                      generate_lantern, mesh_area, triangle_bivector)

__version__ = "0.1.0"
