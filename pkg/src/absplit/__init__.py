"""Exact splitness analysis for finitely generated abelian groups."""

__version__ = "0.1.0"

from .groups import (
    FgAbGroup,
    Morphism,
    GroupSpecError,
    biproduct,
    compose,
    cokernel,
    format_group,
    group,
    hom_group,
    kernel,
    parse_group_spec,
    pullback,
    pushout,
)
from .subgroups import (
    Subgroup,
    all_subgroups,
    fi_ses,
    inclusion,
    is_fully_invariant,
    quotient,
    sub_from_gens,
)
from .preradicals import Preradical, evaluate, parse_preradical
from .splitness import (
    Caps,
    SplitVerdict,
    is_dual_M_F_split,
    is_dual_self_F_split_theorem,
    is_dual_self_rickart,
    is_M_F_split,
    is_self_F_split_theorem,
    is_self_rickart,
)
from .harness import enumerate_groups, run_verification, worked_examples_report

__all__ = [
    "__version__",
    "FgAbGroup",
    "Morphism",
    "GroupSpecError",
    "Subgroup",
    "Preradical",
    "Caps",
    "SplitVerdict",
    "biproduct",
    "compose",
    "cokernel",
    "kernel",
    "pullback",
    "pushout",
    "group",
    "format_group",
    "parse_group_spec",
    "hom_group",
    "all_subgroups",
    "sub_from_gens",
    "inclusion",
    "quotient",
    "fi_ses",
    "is_fully_invariant",
    "evaluate",
    "parse_preradical",
    "is_M_F_split",
    "is_dual_M_F_split",
    "is_self_rickart",
    "is_dual_self_rickart",
    "is_self_F_split_theorem",
    "is_dual_self_F_split_theorem",
    "enumerate_groups",
    "run_verification",
    "worked_examples_report",
]
