"""Exact arithmetic for the Bruhat-Tits tree of GL2 over k((t)), the
fundamental domain for GL2(A) acting on it (A the coordinate ring of an
affine Weierstrass cubic over a finite field), vertex stabilizers with
explicit matrix families, conjugation certificates into PGL2(k), and the
degree-1 homology decomposition."""

from .field import FiniteField, FieldElem, make_field, quad_roots
from .curve import (
    INFINITY,
    WeierstrassCurve,
    classify_fiber,
    e1_points,
    is_smooth,
    partials,
    points,
    shift_curve,
    singular_points,
)
from .coordring import AElem, AFrac, Mat2, v_infinity
from .laurent import LaurentSeries, embed, embed_frac, expand_xy, val
from .tree import TreeVertex, ball, distance, neighbors, phi, vertex_matrix
from .domain import (
    DomainGraph,
    DomainVertex,
    build_domain,
    cusps,
    domain_vertex,
    orbit_reduce,
    to_dot,
    to_json_dict,
)
from .stabilizers import (
    StabilizerGroup,
    edge_stabilizer,
    family_at,
    iso_witness,
    m2_family,
    m4_family,
    stabilizer,
)
from .conjugation import ConjugationCertificate, certificate_at
from .homology import H1Summand, h1_decomposition, h1_pgl2, main_theorem_report

__version__ = "0.1.0"

__all__ = [
    "FiniteField",
    "FieldElem",
    "make_field",
    "quad_roots",
    "INFINITY",
    "WeierstrassCurve",
    "classify_fiber",
    "e1_points",
    "is_smooth",
    "partials",
    "points",
    "shift_curve",
    "singular_points",
    "AElem",
    "AFrac",
    "Mat2",
    "v_infinity",
    "LaurentSeries",
    "embed",
    "embed_frac",
    "expand_xy",
    "val",
    "TreeVertex",
    "ball",
    "distance",
    "neighbors",
    "phi",
    "vertex_matrix",
    "DomainGraph",
    "DomainVertex",
    "build_domain",
    "cusps",
    "domain_vertex",
    "orbit_reduce",
    "to_dot",
    "to_json_dict",
    "StabilizerGroup",
    "edge_stabilizer",
    "family_at",
    "iso_witness",
    "m2_family",
    "m4_family",
    "stabilizer",
    "ConjugationCertificate",
    "certificate_at",
    "H1Summand",
    "h1_decomposition",
    "h1_pgl2",
    "main_theorem_report",
]
