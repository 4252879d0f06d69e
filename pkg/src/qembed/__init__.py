"""Embeddings of finite-dimensional probabilistic models into complex quantum theory."""
from .kernels import BACKEND
from .models import (Classical, DirectSum, EffectVector, ModelError, NotEmbeddableHere, Polyhedral,
                     Quantum, Spin, StateVector, ambient_dim, contains_effect, contains_state, gbit,
                     pairing, sample_effect, sample_state, spin_factor, unit_effect)
from .jordan import (JordanElement, check_jordan_axioms, is_square_cone_member, jordan_product,
                     jordan_unit, square)
from .embedding import (Embedding, LinearMap, build_embedding, gamma_matrices, reduce_to_minimal,
                        verify_embedding)
from .projector import (HermitianMap, check_kadison, check_jordan_closure, check_cone_of_squares, choi,
                        classify_decoherence, is_completely_positive, projector_from_embedding)
from .decide import Decision, decide_polyhedral, gbit_no_linear_psi_certificate, holevo_map
from .report import CheckResult, VerificationReport

__version__ = "0.1.0"
