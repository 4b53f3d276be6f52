"""Cell decompositions of marked cycle curves over two quadratic families.

The package computes, validates and exports the canonical polygon-gluing
structure of the curves that parameterize marked period-p cycles, and
reproduces all of their cell counts (vertices, edges, faces, genus) by
independent closed-form arithmetic.
"""

from .angles import RationalAngle, angle, binary_cycle, conjugate, double, exact_period, orbit
from .builders import BuildError, bar_per1, telephone_per1, telephone_per2
from .cellcomplex import CellComplex, canonical_form, isomorphic, validate
from .components import (
    HyperbolicComponent,
    all_components,
    display_label,
    lavaurs_pairs,
    odd_label,
    primitive_components,
)
from .counting import (
    CountRow,
    Family,
    capital_phi,
    count_row,
    cyc,
    dirichlet,
    faces,
    genus,
    hyp,
    mobius,
    points_div,
    points_exact,
    prim,
    q,
    sat,
    totient,
)
from .cycles import (
    BinaryNecklace,
    CycleClass,
    Kneading,
    TernaryNecklace,
    antidoubling_label,
    basilica_label,
    binary_necklace,
    complement,
    duo,
    enumerate_binary,
    enumerate_ternary,
    is_reflexive,
    is_rot_invariant,
    kneading_of_angle,
    perturbations,
    rotate_digits,
    ternary_necklace,
    trio,
)

__version__ = "0.1.0"
