"""Exact trace class functions and Euler characteristics for groups.

The package computes, in exact rational arithmetic: Hattori-Stallings
traces of idempotent matrices over rational group rings of finite groups,
complete Euler characteristics of fundamental groups of graphs of finite
groups (via conjugacy fusion), and L2-Euler data of a symbolic calculus of
group expressions, including a construction realizing any rational value
as both invariants at a marked element of order two.
"""

from .errors import (Disconnected, EulerTraceError, GroupMismatch, InputError,
                     NotAGroup, NotASubgroup, NotHomomorphism, NotIdempotent,
                     NotInjective, SizeMismatch, TooLarge)
from .exprs import (UNKNOWN, CrossZ, CrossZMark, DirectProduct, Finite,
                    FiniteMark, Free, GraphMark, GraphNode, GroupExpr,
                    InfiniteCyclic, Opaque, OpaqueMark, ProductMark,
                    SymbolicEdge, SymbolicGraph, SymbolicMark, Trivial,
                    Undefined, UnspecifiedMark, VertexRef, beta_alt_sum,
                    beta_convolve, chi2_centralizer_at, complete_euler_at,
                    eval_beta, eval_chi2, eval_e, free_expr,
                    free_product_times_cyclic, involution_amalgam, is_fp,
                    is_undefined, realize_rational)
from .graphs import (FusionClass, FusionTable, GraphEdge, GraphOfFiniteGroups,
                     chi2_centralizer, complete_euler_char, e_of_graph,
                     fusion_classes, validate_graph, verify_formula1_graph)
from .groups import (ClassFunction, ConjugacyClass, FiniteGroup, GroupHom,
                     alternating, build_group, cyclic, dihedral, direct_product,
                     group_from_permutations, group_from_table,
                     inner_automorphism, klein_four, make_hom,
                     power_conjugacy_check, quaternion8, subgroup,
                     subgroup_generated, symmetric)
from .groupring import (GroupRingElement, GroupRingMatrix, Restriction,
                        TensorProduct, augmentation_dim, conjugate_elementary,
                        hs_trace, kaplansky_trace, restrict_matrix,
                        subgroup_average, tensor_matrix, wall_element_finite)
from .models import dinfty_graph, free_product_graph, psl2z_graph, sl2z_graph
from .rat import format_rational, parse_rational

__version__ = "0.1.0"
