"""Truncated graded-commutative polynomial rings and their elements."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Mapping

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Ring:
    """Polynomial ring on named generators with ``g**power = 0`` for each generator.

    Elements are additionally truncated above ``dim``.  Odd generators only
    ever appear with power 2 here, so products of even-degree classes never
    meet a sign.
    """

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    powers: tuple[int, ...]
    dim: int

    def __post_init__(self):
        if not len(self.names) == len(self.degrees) == len(self.powers):
            raise ValueError("generator names, degrees and powers must have equal length")

    @classmethod
    def point(cls) -> "Ring":
        return cls((), (), (), 0)

    def degree(self, e: Exponent) -> int:
        return sum(k * d for k, d in zip(e, self.degrees))

    def allowed(self, e: Exponent) -> bool:
        return all(k < p for k, p in zip(e, self.powers)) and self.degree(e) <= self.dim

    def tensor(self, other: "Ring") -> "Ring":
        return Ring(
            self.names + other.names,
            self.degrees + other.degrees,
            self.powers + other.powers,
            self.dim + other.dim,
        )

    def monomials(self, degree: int):
        for e in iproduct(*[range(p) for p in self.powers]):
            if self.degree(e) == degree:
                yield e


@dataclass(frozen=True)
class GradedClass:
    """Element of a truncated ring with coefficients in Z (``modulus=0``) or Z/2."""

    ring: Ring
    coeffs: Mapping[Exponent, int]
    modulus: int = 0

    def __post_init__(self):
        clean = {}
        for e, c in self.coeffs.items():
            e = tuple(e)
            if len(e) != len(self.ring.names):
                raise ValueError("exponent length does not match the ring")
            c = c % self.modulus if self.modulus else c
            if c and self.ring.allowed(e):
                clean[e] = clean.get(e, 0) + c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def one(cls, ring: Ring, modulus: int = 0) -> "GradedClass":
        return cls(ring, {(0,) * len(ring.names): 1}, modulus)

    @classmethod
    def from_polynomial(cls, ring: Ring, coeffs: Mapping[Exponent, int], modulus: int = 0) -> "GradedClass":
        return cls(ring, dict(coeffs), modulus)

    def _check(self, other: "GradedClass"):
        if self.ring != other.ring or self.modulus != other.modulus:
            raise ValueError("classes live in different rings")

    def __add__(self, other: "GradedClass") -> "GradedClass":
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return GradedClass(self.ring, out, self.modulus)

    def __mul__(self, other: "GradedClass") -> "GradedClass":
        self._check(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if self.ring.allowed(e):
                    out[e] = out.get(e, 0) + c1 * c2
        return GradedClass(self.ring, out, self.modulus)

    def __pow__(self, k: int) -> "GradedClass":
        result = GradedClass.one(self.ring, self.modulus)
        for _ in range(k):
            result = result * self
        return result

    def __neg__(self) -> "GradedClass":
        return GradedClass(self.ring, {e: -c for e, c in self.coeffs.items()}, self.modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.ring == other.ring and self.modulus == other.modulus and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.modulus, tuple(sorted(self.coeffs.items()))))

    def tensor(self, other: "GradedClass") -> "GradedClass":
        """External product in the tensor ring (cross product of classes)."""
        if self.modulus != other.modulus:
            raise ValueError("cannot tensor classes with different coefficients")
        ring = self.ring.tensor(other.ring)
        out = {e1 + e2: c1 * c2 for e1, c1 in self.coeffs.items() for e2, c2 in other.coeffs.items()}
        return GradedClass(ring, out, self.modulus)

    def reduce_mod2(self) -> "GradedClass":
        return GradedClass(self.ring, self.coeffs, 2)

    def homogeneous(self, degree: int) -> "GradedClass":
        return GradedClass(
            self.ring, {e: c for e, c in self.coeffs.items() if self.ring.degree(e) == degree}, self.modulus
        )

    def coefficient(self, e: Exponent) -> int:
        return self.coeffs.get(tuple(e), 0)

    @property
    def is_one(self) -> bool:
        return self.coeffs == {(0,) * len(self.ring.names): 1}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs, key=lambda e: (self.ring.degree(e), e)):
            c = self.coeffs[e]
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.ring.names, e) if k
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def binomial_class(ring: Ring, gen: int, exponent: int, step: int = 1, modulus: int = 0) -> GradedClass:
    """``(1 + g**step) ** exponent`` for generator index ``gen``."""
    zero = [0] * len(ring.names)
    e = list(zero)
    e[gen] = step
    base = GradedClass.one(ring, modulus) + GradedClass(ring, {tuple(e): 1}, modulus)
    return base**exponent
