"""Repetition quivers, orbit categories and deformed preprojective algebras."""

from .automorphism import (SlicedAutomorphism, ZVertex, compose,
                           enumerate_weakly_admissible, equals,
                           is_admissible, is_weakly_admissible,
                           parse_generator, power, serre_nu, suspension,
                           translation)
from .classify import (classify_summary, cy_dimension, maximal_cy_generator,
                       standard_by_hom_condition, standard_by_table,
                       vertex_count_criterion)
from .dynkin import DynkinTree, build_tree, coxeter_number, positive_root_count
from .errors import ArquiverError
from .mesh import (DimensionFunction, hom_knit, hom_oracle, l_function,
                   orbit_hom, total_hom)
from .ppa import (build_algebra, build_double_quiver, deformed_relations,
                  invariant_report, nakayama_permutation, parse_polynomial)
from .zquiver import (OrbitQuiver, identify_type, neighbors, orbit_quotient,
                      validate_translation_quiver)

__version__ = "0.1.0"
