"""Concurrence-triangle genuine multipartite entanglement measures.

A library and command-line tool for N-qudit pure states: bipartite
concurrences across arbitrary cuts, triangle-area GME measures with two
edge conventions, separability-structure classification for non-GME
states, and mixed-state GME via a purification witness and a
convex-roof upper-bound optimizer.
"""

__version__ = "0.1.0"

from .errors import (InternalInvariantError, ParseError, TrigmeError,
                     ValidationError)
from .states import (Cut, DensityMatrix, LocalChannel, PureState,
                     apply_local_channel_branches, basis_state, ghz_state,
                     haar_random_pure, hermitian_eig, linear_entropy,
                     partial_trace, purity, random_local_channel,
                     tensor_product, w_state)
from .concurrence import (CutConcurrenceTable, PolygamyReport,
                          all_cut_concurrences, check_polygamy,
                          concurrence_pure, wootters_concurrence)
from .triangles import (EdgeConvention, GmeReport, Triangle, TriangleEdges,
                        ZeroAreaTriangle, f3, f_level, f_total, gme_value,
                        heron_area_normalized)
from .classify import (Factorization, finest_factorization, marginal_cuts,
                       product_cuts)
from .mixed import (ConvexRoofConfig, ConvexRoofResult, Decomposition,
                    Purification, WitnessReport, convex_roof_upper_bound,
                    decomposition_mixture_error, minimal_purification,
                    witness)
from .stateio import (parse_state_document, parse_state_file,
                      render_state_document, state_document,
                      write_state_file)

__all__ = [name for name in dir() if not name.startswith("_")]
