"""knotgrid: exact Alexander polynomials and grid-diagram knot Floer
homology over GF(2), with twist-family stabilization, skein-splitting and
mutant-pair verification tools."""

__version__ = "0.1.0"

from .alexander import (  # noqa: F401
    alexander,
    fit_stabilization,
    skein_verify,
    torus_alexander,
    verify_twist_recursion,
)
from .catalog import catalog, catalog_names  # noqa: F401
from .convert import braid_to_grid  # noqa: F401
from .gridmoves import simplify_grid  # noqa: F401
from .hfk.engine import hfk_hat, tilde_complex, homology_ranks, derived_invariants  # noqa: F401
from .hfk.spaces import BigradedRanks, V_SPACE, W_SPACE  # noqa: F401
from .hfk.tau import tau  # noqa: F401
from .links import (  # noqa: F401
    BraidWord,
    GridDiagram,
    TwistFamilySpec,
    component_data,
    insert_twists,
)
from .mutants import MutantPairSpec, build_mutant_pair  # noqa: F401
from .poly import HalfLaurent, normalize_symmetric  # noqa: F401
