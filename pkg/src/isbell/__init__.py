"""Finite categories, Set-valued functors, the Isbell envelope and cylinder
factorisation systems, all computed exhaustively at desk scale."""

from .errors import (IsbellError, InternalError, LawViolation, LimitMissing, MalformedError,
                     NaturalityError, NotFinalError, ShapeError, UnknownIdError)
from .fincat import (FinCat, Functor, NatTrans, Report, chain, commutative_square, discrete,
                     empty, opposite, parallel_pair, span, terminal, validate_category,
                     validate_functor, walking_arrow)
from .sets import FINSET, FinFunction, FunctorCategory, SetFunctor, fset, hom_functor, representable
from .cylinder import Cocone, Cone, Cylinder, compose_cylinder
from .ortho import Certificate, fillers, is_orthogonal, lemma1_transfer
from .cfs import (Budget, CfsSpec, Ofs, check_axioms, colimit_cfs, covering_mono_cfs,
                  joint_epi_mono_check, lift_ofs, limit_cfs, surj_inj)
from .envelope import (IsbellEnvelope, IsbellMorphism, IsbellObject, canonical_cylinder, dual,
                       envelope_cfs, envelope_factorise, isbell_hom, lemma2_bijection, yoneda)
from .variants import (ALL_FINITE, PRODUCTS, REPRESENTABLES, SUMS, WeightClass,
                       arrow_category_check, array_factorise, is_phi_diagram, source_factorise)

__version__ = "0.1.0"
