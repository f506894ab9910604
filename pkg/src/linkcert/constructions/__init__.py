"""Constructions of links with prescribed linking numbers in embedded K_n."""

from .certificate import (
    THEOREMS,
    BudgetError,
    LinkCertificate,
    SearchExhausted,
    Verification,
    make_certificate,
    parse_theorem_id,
    theorem_id,
    theorem_problems,
    verify_certificate,
)
from .lemma import bridge_family, even_link_construct, iterated_doubling, oriented_positive
from .mod2 import all_even, mod2_keys, mod2_whitehead, three_component_core, three_component_mod
from .mod3 import figure_four_cycles, mod3_casework, mod3_core, mod3_keys, mod3_two_component
from .recursion import KeyRing, choose_merge, even_step, odd_step, ring_of_keys, split_blocks, star_recursion
from .search import (
    EdgeSpace,
    SearchBudget,
    find_nonsplit_pair,
    find_three_component_base,
    find_triangle_mcycle,
    search_mod4,
)
