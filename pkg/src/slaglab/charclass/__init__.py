"""Characteristic classes and numbers for a small catalog of manifolds."""

from .catalog import ClassData, NumberTable, RingModel, class_data
from .graded import GradedClass, Ring
from .numbers import (
    Bounds,
    Component,
    DoesNotBound,
    EulerReport,
    ImmersionReport,
    Undecided,
    components,
    euler_characteristic,
    euler_embedding_obstruction,
    is_nullcobordant,
    is_orientable,
    lagrangian_immersion_obstructions,
    pontrjagin_numbers,
    sw_numbers,
    total_pontrjagin_class,
    total_sw_class,
)
from .parser import Atom, DisjointUnion, Product, Reverse, parse_manifold_expr

__all__ = [
    "Atom",
    "Bounds",
    "ClassData",
    "Component",
    "DisjointUnion",
    "DoesNotBound",
    "EulerReport",
    "GradedClass",
    "ImmersionReport",
    "NumberTable",
    "Product",
    "Reverse",
    "Ring",
    "RingModel",
    "Undecided",
    "class_data",
    "components",
    "euler_characteristic",
    "euler_embedding_obstruction",
    "is_nullcobordant",
    "is_orientable",
    "lagrangian_immersion_obstructions",
    "parse_manifold_expr",
    "pontrjagin_numbers",
    "sw_numbers",
    "total_pontrjagin_class",
    "total_sw_class",
]
