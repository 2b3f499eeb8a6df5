"""Function theory of the tetrablock: membership, Schwarz interpolants,
automorphisms, the beta-foliation and orbit canonicalisation."""

from .autgroup import (
    TetraAutomorphism,
    act_left,
    act_right,
    apply,
    compose,
    diamond,
    flip_point,
    inverse,
    random_automorphism,
    star,
    tau,
)
from .errors import NotInDomainError, PoleError, PreconditionError, TetrablockError
from .foliation import (
    BetaLeaf,
    LeafTransport,
    beta_coords,
    canonical_radius,
    leaf_eval,
    normal_params,
    normalizing_automorphism,
    same_orbit,
    transport_left,
    transport_right,
)
from .membership import MembershipReport, classify
from .numerics import (
    ORIGIN,
    CircleImage,
    DiscAutomorphism,
    Matrix2,
    TetraPoint,
    disc_apply,
    disc_compose,
    disc_inverse,
    lft_sup_on_circle,
    mobius_matrix,
    op_norm,
    psd_sqrt,
    psi,
)
from .schwarz import (
    SchwarzSolution,
    TangentTarget,
    build_matricial,
    c_coefficient,
    f_eval,
    feasible,
    indicatrix_norm,
    mu_feasible,
    phi_eval,
)

__version__ = "0.1.0"
