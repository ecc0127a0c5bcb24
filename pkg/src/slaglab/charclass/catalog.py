"""Characteristic data for the catalog atoms.

Each atom carries either a ``RingModel`` (a truncated cohomology ring with
its total Stiefel-Whitney and Pontrjagin classes) or a ``NumberTable`` that
lists characteristic numbers directly when no ring structure is recorded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import InvalidParameter
from .graded import GradedClass, Ring, binomial_class
from .parser import Atom


@dataclass(frozen=True)
class RingModel:
    ring: Ring
    top: tuple[int, ...]  # monomial paired to 1 against the fundamental class
    sw: GradedClass  # mod 2
    pontrjagin: GradedClass | None  # over Z; None when the integral model has torsion
    rational_pontrjagin_trivial: bool = True


@dataclass(frozen=True)
class NumberTable:
    sw_numbers: dict[str, int]
    pontrjagin_numbers: dict[str, int] | None
    sw_square_trivial: bool | None = None
    pontrjagin_trivial: bool | None = None


@dataclass(frozen=True)
class ClassData:
    dim: int
    orientable: bool
    euler: int
    model: RingModel | NumberTable
    stably_parallelizable: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)


def _trivial_model(ring: Ring, top: tuple[int, ...]) -> RingModel:
    return RingModel(ring, top, GradedClass.one(ring, 2), GradedClass.one(ring))


def _sphere(n: int) -> ClassData:
    ring = Ring((f"s{n}",), (n,), (2,), n)
    return ClassData(n, True, 1 + (-1) ** n, _trivial_model(ring, (1,)), stably_parallelizable=True)


def _torus(n: int) -> ClassData:
    ring = Ring(tuple(f"t{i + 1}" for i in range(n)), (1,) * n, (2,) * n, n)
    return ClassData(n, True, 0, _trivial_model(ring, (1,) * n), stably_parallelizable=True)


def _real_projective(n: int) -> ClassData:
    ring = Ring(("a",), (1,), (n + 1,), n)
    sw = binomial_class(ring, 0, n + 1, modulus=2)
    model = RingModel(ring, (n,), sw, None, rational_pontrjagin_trivial=True)
    return ClassData(n, n % 2 == 1, 0 if n % 2 else 1, model)


def _complex_projective(n: int) -> ClassData:
    ring = Ring(("a",), (2,), (n + 1,), 2 * n)
    sw = binomial_class(ring, 0, n + 1, modulus=2)
    pont = binomial_class(ring, 0, n + 1, step=2)
    return ClassData(2 * n, True, n + 1, RingModel(ring, (n,), sw, pont))


def _special_unitary(n: int) -> ClassData:
    degrees = tuple(range(3, 2 * n, 2))
    ring = Ring(tuple(f"x{d}" for d in degrees), degrees, (2,) * len(degrees), n * n - 1)
    # a Lie group is parallelizable
    return ClassData(
        n * n - 1, True, 1 if n == 1 else 0, _trivial_model(ring, (1,) * len(degrees)), stably_parallelizable=True
    )


def _point() -> ClassData:
    return ClassData(0, True, 1, _trivial_model(Ring.point(), ()), stably_parallelizable=True)


def _wu() -> ClassData:
    table = NumberTable(
        sw_numbers={"w1^5": 0, "w1^3w2": 0, "w1^2w3": 0, "w1w2^2": 0, "w1w4": 0, "w2w3": 1, "w5": 0},
        pontrjagin_numbers={},
    )
    return ClassData(5, True, 0, table, notes=("SU(3)/SO(3); only the number w2w3 is recorded",))


def _hypersurface(d: int) -> ClassData:
    """Degree-``d`` hypersurface in CP^3."""
    parity = d % 2
    table = NumberTable(
        sw_numbers={"w1^4": 0, "w1^2w2": 0, "w1w3": 0, "w2^2": parity, "w4": parity},
        pontrjagin_numbers={"p1": (4 - d * d) * d},
        sw_square_trivial=parity == 0,
        pontrjagin_trivial=(4 - d * d) * d == 0,
    )
    return ClassData(4, True, d**3 - 4 * d**2 + 6 * d, table)


@lru_cache(maxsize=None)
def class_data(atom: Atom) -> ClassData:
    """Characteristic data of a catalog atom."""
    builders = {
        "S": _sphere,
        "T": _torus,
        "RP": _real_projective,
        "CP": _complex_projective,
        "SU": _special_unitary,
        "SigmaD": _hypersurface,
    }
    if atom.name == "Wu":
        return _wu()
    if atom.name == "Point":
        return _point()
    if atom.name not in builders:
        raise InvalidParameter(f"no catalog entry for {atom}")
    return builders[atom.name](atom.param)
