"""Exact tools for sibling portraits, central strips and identity-return
polygons of circle maps ``t -> d*t mod 1``."""

__version__ = "0.1.0"

from .angles import Itinerary, angle, itinerary_of, periodic_point, sigma
from .chords import (
    Chord,
    crosses,
    distance_to_nearest_critical,
    endpoint_distance,
    leaf_length,
    tau,
    tau_fixed_points,
)
from .polygons import (
    Polygon,
    PolygonOrbit,
    analyze_orbit_sigma3,
    example_period2,
    example_period3,
    example_sigma4_quadrilateral,
    is_identity_return,
    search_irp,
    verify_no_period2,
)
from .portraits import (
    SiblingCollection,
    SiblingPortrait,
    build_portrait,
    central_strip,
    enumerate_sibling_collections,
)
from .strips import closest_critical_sweep, leaf_growth, verify_csl, verify_unicritical
from .trees import PlaneBicoloredTree, census_crosscheck, count_formula, dual_tree
