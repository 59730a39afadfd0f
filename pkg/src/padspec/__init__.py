"""Exact p-adic spectral linear algebra.

Decides unitarity and unitary diagonalisability of matrices over p-adic
field towers by repeated reduction to the residue field, builds spectral
partitions of unity by idempotent lifting, evaluates continuous and
truncated holomorphic functional calculi, and computes non-Archimedean
Born-rule probabilities.  All arithmetic is exact at a fixed working
precision with certified error accounting; probabilities and norms live in
the value group, never in floating point.
"""

__version__ = "0.1.0"

from .born import (AxiomReport, BornProbability, MeasurableSet, StateVector,
                   born_probability, check_probability_axioms)
from .errors import PadspecError
from .funcalc import (LocallyConstantFn, PDisc, apply_locally_constant,
                      apply_via_diagonalisation, calculus_isometry_check)
from .literals import parse_scalar_literal, render_scalar
from .pmatrix import (PMatrix, determinant, inverse, is_unitary,
                      matrix_reduction, norm_le, orthonormal_basis_of_span,
                      restriction_matrix, slack, sup_norm_v2)
from .residue import (ResidueDiagOutcome, ResidueMatrix, ResiduePoly,
                      ResidueScalar, diagonalise_residue, is_squarefree,
                      lagrange_idempotents, minimal_polynomial,
                      roots_in_field)
from .scalar import (PadicScalar, from_rational, from_unit_vector,
                     geometric_inverse, hensel_sqrt, lift_residue, one,
                     pi_power, reduce_scalar, scalar_congruent, zero)
from .spectral import (PartitionOfUnity, ReductiveSpectrum, SigmaClass,
                       lift_idempotent, partition_of_unity,
                       reductive_spectrum, sigma_classes)
from .structured import (TateSeries, WindowOperator, build_window,
                         fractal_continuous_calculus, gauss_isometry_check,
                         series_calculus)
from .tower import FieldTower
from .unidiag import (FailureCertificate, InvolutionReport, UnidiagOutcome,
                      galois_conj, involution_criteria, naive_chain,
                      naive_maps, spectrum_kvalued, unitary_diagonalise)

__all__ = [name for name in dir() if not name.startswith("_")]
