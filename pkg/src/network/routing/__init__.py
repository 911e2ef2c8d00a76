"""Enrutamiento unipath y multicamino sobre la mariposa."""

from .independence import (
    IndependenceVerdict,
    class_discipline_errors,
    route_validity_errors,
    verify_independence,
)
from .multipath import multipath_routes, next_hop, plan_for
from .plan import (
    SHORTCUT,
    UNIPATH,
    ClassPredicates,
    PathParam,
    Route,
    RoutePlan,
    classify_stage,
    route_plan,
    unrolled_level,
)
from .unipath import unipath_route

__all__ = [
    "SHORTCUT",
    "UNIPATH",
    "ClassPredicates",
    "IndependenceVerdict",
    "PathParam",
    "Route",
    "RoutePlan",
    "class_discipline_errors",
    "classify_stage",
    "multipath_routes",
    "next_hop",
    "plan_for",
    "route_plan",
    "route_validity_errors",
    "unipath_route",
    "unrolled_level",
    "verify_independence",
]
