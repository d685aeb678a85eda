"""Exact two-coloring of point sets against polygon wedges, and decomposition of
deep coverings of a rectangle by translates of a centrally symmetric convex polygon."""

__version__ = "0.1.0"

from .boundary import (BoundaryStructure, LevelDecomposition, assemble_cyclic, compute_boundary_i,
                       detect_rich, detect_singular, level_peel, order_prec, wedge_trace_intervals)
from .coloring import (BWColor, ColoringResult, RBColor, bw_boundary_coloring, multiple_red_blue,
                       quadtree_color, red_blue_coloring)
from .decomposer import CoverInstance, Decomposition, decompose, dualize, generate_covering
from .errors import (ConstraintUnsatisfiable, CoverDecompError, DecompositionFailure, Incomparable,
                     InsufficientFold, InvalidInput, InvalidPolygon, SizeBound, StructuralViolation)
from .geometry import (CLOSED, OPEN, Closedness, GridParams, Point, Polygon, Rect, WedgePlacement,
                       WedgeTemplate, builtin_polygon, grid_cell_size, grid_params, polygon_contains,
                       squares_per_translate, wedge_contains, wedge_of_vertex)
from .oracle import (DepthReport, PlacementSample, check_claims, coverage_depth,
                     enumerate_wedge_placements, verify_coloring)

__all__ = [name for name in dir() if not name.startswith("_")]
