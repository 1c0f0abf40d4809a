"""satlat: exact ideal calculus over quantum affine spaces and
finite-dimensional algebras, with torsion-theoretic saturation chains,
stability predicates, and subcategory lattice operations.

Everything is exact (arbitrary-precision rationals or prime fields);
answers that hold only up to a degree bound say so through their
exactness certificates.
"""

from .fields import GF, QQ, parse_field
from .ring import (
    DiagAuto,
    Poly,
    QRing,
    apply_automorphism,
    commutation_scalar,
    is_central,
    monomial_automorphism,
    mul_poly,
    opposite_map,
    opposite_ring,
    twist_by_monomial,
)
from .gb import (
    BlockElim,
    DegLex,
    RightGB,
    TwoSidedGB,
    adjoin_central_variable,
    buchberger_right,
    buchberger_two_sided,
    left_generators,
    normal_form_right,
    truncate_ideal,
)
from .idealops import (
    EXACT,
    EqualityVerdict,
    Exactness,
    IdealHandle,
    Side,
    colon_normal,
    colon_truncated,
    equal,
    intersect,
    is_comaximal,
    membership,
    power,
    product,
    right_ideal,
    sum_ideals,
    two_sided_ideal,
    unit_ideal,
    up_to_degree,
    zero_ideal,
)
from .torsion import (
    ChainReport,
    SaturationResult,
    StabilityVerdict,
    TorsionTheory,
    VerdictKind,
    gabriel_product_ideal,
    is_essentially_stable,
    is_torsionfree_generated,
    is_y_closed,
    ore_chain,
    saturate,
    tilde_chain,
)
from .lattice import (
    ClosedSubcat,
    distributivity_check,
    join,
    meet,
    y_join,
    y_meet,
)
from .parser import parse_generators, parse_poly
from .ringspec import load_ring_spec
from . import findim

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
