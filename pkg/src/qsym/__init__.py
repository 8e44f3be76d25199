"""Representation-theoretic invariants of quantum automorphism groups of finite-dimensional C*-algebras."""
from .multimatrix import (AlgebraElement, AlgebraShape, OrthonormalBasis, TraceWeights,
                          canonical_trace_weights, orthonormal_basis, parse_shape,
                          regular_rep_trace)
from .tensor_calculus import (RelationReport, TensorMap, build_eta, build_mu, duality_vector,
                              iterated_comultiplication, iterated_unit, jones_projections,
                              verify_frobenius, verify_jones_relations)
from .diagram_algebra import (RankInstabilityError, TLDiagram, TLElement, catalan,
                              enumerate_diagrams, image_algebra_dimension, jones_generator,
                              represent_generators)
from .category_homs import (GramReport, NormalFormArrow, end_dimension, enumerate_Xk,
                            hom_dimension, realize_arrow, verify_independence)
from .fusion_ring import (FusionVector, amenability_check, build_irreducibles,
                          dimension_sequence, fundamental_power, so3_moment_integral,
                          so3_product, su2_even_embedding_check, su2_product,
                          trivial_multiplicity)

__version__ = '0.1.0'
