"""Exact commuting probabilities of finite groups."""

from .descriptors import DescriptorError, build, parse
from .groups import Group, GroupError, Subgroup
from .probability import commuting_probability, coset_pair_table

__all__ = [
    "DescriptorError",
    "Group",
    "GroupError",
    "Subgroup",
    "build",
    "commuting_probability",
    "coset_pair_table",
    "parse",
]
