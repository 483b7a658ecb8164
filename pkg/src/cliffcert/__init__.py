"""Exact Clifford indices of curves on K3 surfaces and Mercat counterexample certificates."""

from .cliffmin import (
    CliffordSearchResult,
    ConstraintRegion,
    cliff_of_class,
    closed_form_cliff,
    minimize_cliff,
    minimize_cliff_rank1,
)
from .errors import CeilingExceeded, CliffcertError, InvariantViolation, ParameterError
from .lattice import (
    DivisorClass,
    FarkasOrtega,
    Generic,
    PicardLattice,
    build_lattice,
    genus_of,
    intersect,
    rr_chi,
)
from .lmbundle import BrillNoetherInput, lm_invariants, restricted_bundle
from .mercat import MercatCertificate, certify, certify_rank1, certify_rank2_picard2
from .sweep import SweepConfig, run_sweep

__version__ = "0.1.0"
