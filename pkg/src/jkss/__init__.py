"""Exact JKSS invariants of virtual links and twisted links."""
from .covering import double_cover, prop2_witness
from .diagram import (
    CrossingSign,
    DiagramEdge,
    DiagramError,
    DiagramSyntaxError,
    DiagramValidationError,
    TwistedDiagram,
    braid_closure,
    connected_sum,
    is_virtual,
    mirror,
    parse_diagram,
    random_diagram,
    render_diagram,
    validate,
    writhe,
)
from .invariant import InvariantValue, jkss, twisted_jkss
from .laurent import (
    LaurentPoly,
    PolyMatrix,
    determinant,
    equal_up_to_x_power,
    normalize_x,
    parse_poly,
    render_poly,
)
from .moves import MoveSite, apply, enumerate_sites, random_walk

__version__ = "0.1.0"
