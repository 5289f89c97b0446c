"""Exact arithmetic in cyclotomic fields over the real/imaginary basis D_n,
a rationality classifier for ratios of sines at rational angles, and an exact
verifier for n*tan(pi*rho) = tan(n*pi*rho) at rational rho."""

from .arith import crt_components, euler_phi, factorize, mod_inverse, NotInvertible
from .basis import (
    Atom,
    BasisDescriptor,
    CoordVector,
    ZeroDenominatorVector,
    build_basis,
    decompose_prime_power,
    decompose_root,
    decompose_two_power,
    proportionality,
)

__version__ = "0.1.0"
