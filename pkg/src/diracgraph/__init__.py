"""Dirac operators and Hodge Laplacians on clique complexes of finite simple graphs."""
from .complex import SimplicialComplex, build_complex, complex_from_simplices, euler_characteristic
from .dynamics import discrete_map, heat_evolve, schrodinger_evolve, wave_evolve
from .geometry import (curvature, handshake_check, isospectral_check, lidskii_check, p_degree,
                       simplex_distance, spectral_distance)
from .graph import Graph, GraphError, generate, parse_graph, read_graph, serialize_graph
from .hodge import betti, harmonic_basis, hodge_decompose
from .homotopy import Cover, cech_betti_check, contract, is_contractible, nerve
from .linalg import Spectrum, eigen_sym, exact_rank
from .operators import dirac, incidence, laplacian, solve_poisson
from .spectral import (IdentityViolation, dirac_complexity, dirac_spectrum, laplacian_spectrum,
                       supertrace)

__version__ = "0.1.0"
