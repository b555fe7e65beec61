"""Exact computations with regular matroids, Plücker vectors and arithmetic matroids."""

from .arithmetic import (
    GroupList,
    LabelledGraph,
    MultiplicityTable,
    arith_power,
    classify,
    find_multiplicative_basis,
    full_table,
    gcd_consistency,
    labelled_power,
    labelled_to_list,
    lift,
    multiplicity,
    verify_axioms,
)
from .decompose import counterexample_fp, power_matrix, power_two, recover_tu, tad
from .errors import *  # noqa: F401,F403
from .exactmat import Q, Matrix, PluckerVector, det, gcd_of, hnf, plucker, rank
from .gpcheck import gp_r_check, power_nonrep_certificate
from .grassmann import gp_relations, gp_verify, power_pv, rgr_generators, sign_decomposable
from .matroid import MatroidView, bases, basis_exchange_graph, find_u24, is_regular
