"""Gysin functors on finite G-sets and their categories of correspondences."""

from gysin.burnside import BurnsideFunctor
from gysin.correspondence import (Correspondence, compose, dual_star, identity, lift_d,
                                  lift_i, lift_r, tensor_corr)
from gysin.gset import FiniteGroup, GMap, GSet
from gysin.gw import FiniteFieldGW, RealComplexGW

__version__ = "0.1.0"

__all__ = ["BurnsideFunctor", "Correspondence", "FiniteFieldGW", "FiniteGroup", "GMap",
           "GSet", "RealComplexGW", "compose", "dual_star", "identity", "lift_d", "lift_i",
           "lift_r", "tensor_corr"]
