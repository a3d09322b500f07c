"""Exact deformation cohomology of Courant pairs, Leibniz pairs and Poisson algebras."""

from .algebra import (CourantModuleData, CourantPairData, PoissonData, adjoint_module, as_courant,
                      gallery, hemisemidirect, poisson_to_courant, validate, validate_poisson)
from .cochain import Cochain, TotalCochain, delta_h, delta_l, delta_v, gerstenhaber, total_delta_matrix
from .cohomology import class_of, cohomology, verify_paper_matrix
from .deformation import (ExtensionSpec, LocalBase, check_deformation, equivalent_infinitesimal,
                          extend_deformation, harrison_cohomology, obstruction, push_out,
                          universal_infinitesimal, versal_step)
from .exactmath import QQ, QQ_XI, ExactMatrix, RatFunc, kernel_basis, quotient_basis, rref

__version__ = "0.1.0"
