"""Exact combinatorics behind the torsion order of powers of the Euler class.

Surface-group words, mapping classes as automorphisms, inversives, bi-graded
chains on oriented simplices, the transition cycle and its integer detection.
"""
__version__ = "0.1.0"

from .words import GenusContext, parse, serialize
from .mapping import (Automorphism, abelianization, compose, equal_auto, from_expr, gen_d,
                      gen_S, gen_T, gen_w, inverse, order_of, power)
from .inversives import Inversive, act, basic, basics, inversive_of
from .chains import (BiGradedChain, OrientedSimplex, boundary_h, boundary_v, boundary_v2,
                     dump_chain, load_chain, orbit_augmentation, orbit_partition, simplex)
from .transition import chain_c1, chain_e_g, chain_e_g_half, chain_L, transition_cycle
from .detection import (Connector, connect, detect_cycle, holonomy, k_form, lifting_obstruction,
                        phi, phi_of, torsion_bound)

__all__ = [
    "GenusContext", "parse", "serialize",
    "Automorphism", "abelianization", "compose", "equal_auto", "from_expr", "gen_d", "gen_S",
    "gen_T", "gen_w", "inverse", "order_of", "power",
    "Inversive", "act", "basic", "basics", "inversive_of",
    "BiGradedChain", "OrientedSimplex", "boundary_h", "boundary_v", "boundary_v2", "dump_chain",
    "load_chain", "orbit_augmentation", "orbit_partition", "simplex",
    "chain_c1", "chain_e_g", "chain_e_g_half", "chain_L", "transition_cycle",
    "Connector", "connect", "detect_cycle", "holonomy", "k_form", "lifting_obstruction", "phi",
    "phi_of", "torsion_bound",
]
