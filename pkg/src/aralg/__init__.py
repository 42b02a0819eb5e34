"""Exact Auslander-Reiten theory for finite-dimensional algebras over Q and F_p.

Modules are right modules given by matrices acting on row vectors; complexes
live on finite degree windows.  The main entry points:

>>> from aralg import dual_numbers, simple_module, ar_sequence
>>> A = dual_numbers()
>>> cert = ar_sequence(simple_module(A, 0))
>>> cert.ok, cert.sequence.M.dim
(True, 2)
"""

from .linalg import FieldSpec, Matrix, Subspace, ShapeError
from .algebra import (Algebra, AlgebraError, InadmissibleRelation, InfiniteDimensional, Quiver, Relation,
                      UnsupportedCharacteristic, ValidationError, build_path_algebra, from_structure_constants,
                      opposite)
from .modules import (AlgebraMismatch, Module, NotIndecomposable, ProjectiveInput, ShortExactSequence,
                      decompose_module, direct_sum, dtr, dtr_via_nakayama, dual_module, ext1, find_isomorphism,
                      hom, hom_dim, injective_envelope, injective_module, is_indecomposable, is_isomorphic,
                      minimal_projective_presentation, injective_presentation, module_from_representation, nakayama,
                      projective_cover, projective_module, regular_module, simple_module, stable_hom,
                      MODULO_INJECTIVES, MODULO_PROJECTIVES, tensor_over_algebra, transpose, sequences_isomorphic)
from .complexes import (DEFAULT_GUARD, DEFAULT_WINDOW, ChainMap, Complex, NotSelfInjective, WindowTooSmall, cone,
                        concentrated, complex_from_maps, hom_k_dim, homotopy_hom_space, injective_resolution_of_module,
                        nakayama_translate, projective_resolution_of_module, serre_pairing, total_hom_complex)
from .ar import (AlmostSplitCertificate, Triangle, ar_quiver_fragment, ar_sequence, ar_triangle,
                 ar_triangle_of_module, curated_indecomposables, six_term_sequence, triangle_to_sequence,
                 verify_ar_formula_modules, verify_dtr_routes)
from .repetitive import (IndexOutOfWindow, RepModule, RepetitiveWindow, build_truncation, complete_resolution,
                         happel_compare, happel_embed, restrict_along_lambda)
from .catalog import a2, commutative_square, dual_numbers, test_algebras, truncated_polynomial

__version__ = "0.1.0"
