"""Planar semimodular lattices with prescribed congruence lattices.

Builds, for a finite distributive lattice ``D``, a planar semimodular lattice
whose congruence lattice is isomorphic to ``D`` and in which every congruence
is principal, and certifies the result with brute-force checks.
"""

from .order import (
    Embedding,
    FiniteLattice,
    Poset,
    chain,
    direct_product,
    downset_lattice,
    glued_sum,
    isolated_elements,
    ji_poset,
    join_irreducibles,
    lattice_isomorphic,
    make_poset,
    poset_isomorphic,
    validate_lattice,
)
from .congruence import (
    ConLattice,
    Congruence,
    all_principal,
    brute_force_congruences,
    congruence_lattice,
    is_principal,
    prime_interval_congruences,
    principal_congruence,
)

__version__ = "0.1.0"
