"""Complete acyclic Morse matchings on hypersimplex face lattices."""

from .facelattice import (
    EMPTY,
    FaceSet,
    HypersimplexParams,
    LabelError,
    ParameterError,
    canonicalize,
    count_ones,
    count_zeros,
    dimension,
    enumerate_faces,
    face_count_formula,
    facets,
    is_face_of,
    parse_label,
    vertices_of,
)
from .homology import (
    HomologyGroup,
    Subcomplex,
    boundary_complex,
    euler_characteristic,
    full_complex,
    reduced_homology,
    smith_normal_form,
)
from .matching import (
    MatchParams,
    MorseMatching,
    RuleId,
    build_matching,
    classify,
    partner,
    verify_matching,
)
from .morse import (
    build_hasse,
    detect_cycle,
    find_closed_vpath,
    unmatched_census,
)

__version__ = "0.1.0"
