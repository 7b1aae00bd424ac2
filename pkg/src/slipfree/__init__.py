"""Exact semi-Lipschitz free spaces of finite quasi-metric spaces."""

from .asymmetrize import (ConeSpec, PropertyReport, canonical_asym, check_H, check_property,
                          closed_form_Dplus_reals, cone_norm, real_line, split_pos_neg)
from .freespace import (KRDecomposition, Molecule, dual_norm, elementary_molecule, kr_norm,
                        molecule_distance, pair, pushforward, sym_free_norm)
from .functions import (PointFunction, is_d_monotone, lip_norm, mcshane_extend,
                        slip_norm)
from .rational import INF, to_fraction
from .space import (QuasiMetricSpace, SpaceError, adjoin_basepoint, equivalence_constant,
                    reverse, symmetrize, validate)
from .tree import (WeightedRootedTree, atom_weights, godard_embed, marked_branching,
                   path_metric, tree_asym_norm, tree_sym_norm)

__version__ = "0.1.0"

__all__ = [
    "ConeSpec", "INF", "KRDecomposition", "Molecule", "PointFunction", "PropertyReport",
    "QuasiMetricSpace", "SpaceError", "WeightedRootedTree", "adjoin_basepoint",
    "atom_weights", "canonical_asym", "check_H", "check_property", "closed_form_Dplus_reals",
    "cone_norm", "dual_norm", "elementary_molecule", "equivalence_constant", "godard_embed",
    "is_d_monotone", "kr_norm", "lip_norm", "marked_branching", "mcshane_extend",
    "molecule_distance", "pair", "path_metric", "pushforward", "real_line", "reverse",
    "slip_norm", "split_pos_neg", "sym_free_norm", "symmetrize", "to_fraction",
    "tree_asym_norm", "tree_sym_norm", "validate",
]
