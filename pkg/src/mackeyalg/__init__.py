"""Exact Mackey algebra computations for finite groups of small order."""

from .ffield import GF, FF
from .grp import (GroupTable, build_group, cyclic, dihedral, symmetric,
                  alternating, quaternion, sl23, direct_product,
                  subgroup_lattice)
from .mackey import MackeyAlgebra, build_algebra
from .exalg import (AlgebraPresentation, FieldDesc, CartanMatrix,
                    block_idempotents, block_field_degree, cartan_matrix,
                    primitive_idempotents, radical, is_symmetric_algebra,
                    find_unit, required_splitting_degree)
from .modrep import (ModuleRep, permutation_module, fixed_points,
                     transfer_map, brauer_quotient, decompose, hom_space,
                     is_isomorphic_indec, p_permutation_indecomposables,
                     group_algebra)
from .chartab import (Cyc, CharacterTable, character_table,
                      conjugacy_classes, character_of_lift,
                      ordinary_multiplicities)
from .decomp import (MackeyPipeline, pipeline, match_blocks,
                     decomposition_matrix, verify_cartan_reciprocity,
                     defect_one_structure_check, p_nilpotent_checks,
                     required_field_degree,
                     match_up_to_simultaneous_permutation)

__version__ = "0.1.0"
