"""Exact construction and verification of exceptional Legendre families.

Multi-parameter deformations of the Legendre Sturm-Liouville problem are
built in exact rational arithmetic, two independent ways (a polynomial-matrix
determinant and a chain of confluent Darboux steps), and every algebraic
identity they satisfy (eigenvalue relations, operator factorizations, degree
laws, orthogonality norms, admissibility bounds) is checkable with zero
numerical tolerance.
"""

from .admissibility import (
    InadmissibleKeyError,
    SturmChain,
    admissibility_record,
    is_admissible,
    norm_of,
    norm_table,
    orthogonality_check,
    root_count,
)
from .legendre import classical_norm, legendre_poly, overlap_R
from .operators import (
    FirstOrderOp,
    OperatorSpec,
    a_op,
    apply_T_hat,
    apply_first_order,
    b_op,
    eigenvalue,
    verify_eigen,
    verify_factorization,
    verify_intertwining,
    wronskian,
)
from .polyring import (
    InexactDivisionError,
    NEG_INFINITY,
    Poly,
    Rat,
    parse_rat,
    poly_gcd,
    rat_str,
)
from .ratfun import PoleError, RatFun
from .xfamily import (
    DegenerateParameterError,
    FamilyKey,
    PolyMatrix,
    RecursiveFamily,
    XFamily,
    build_matrix,
    canonicalize,
    exceptional_poly,
    expected_degree,
    family,
    missing_degrees,
    q_vector,
    recursive_family,
    tau,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateParameterError",
    "FamilyKey",
    "FirstOrderOp",
    "InadmissibleKeyError",
    "InexactDivisionError",
    "NEG_INFINITY",
    "OperatorSpec",
    "PoleError",
    "Poly",
    "PolyMatrix",
    "Rat",
    "RatFun",
    "RecursiveFamily",
    "SturmChain",
    "XFamily",
    "a_op",
    "admissibility_record",
    "apply_T_hat",
    "apply_first_order",
    "b_op",
    "build_matrix",
    "canonicalize",
    "classical_norm",
    "eigenvalue",
    "exceptional_poly",
    "expected_degree",
    "family",
    "is_admissible",
    "legendre_poly",
    "missing_degrees",
    "norm_of",
    "norm_table",
    "orthogonality_check",
    "overlap_R",
    "parse_rat",
    "poly_gcd",
    "q_vector",
    "rat_str",
    "recursive_family",
    "root_count",
    "tau",
    "verify_eigen",
    "verify_factorization",
    "verify_intertwining",
    "wronskian",
]
