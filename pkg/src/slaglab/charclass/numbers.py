"""Characteristic numbers, cobordism verdicts and immersion obstructions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from math import prod
from typing import Union

from ..errors import NonOrientable, NoRingModel, Unsupported
from .catalog import ClassData, NumberTable, RingModel, class_data
from .graded import GradedClass, Ring
from .parser import Atom, DisjointUnion, Expr, Product, Reverse, parse_manifold_expr

# oriented cobordism is trivial in these dimensions
TRIVIAL_COBORDISM_DIMS = frozenset({1, 2, 3, 6, 7})


@dataclass(frozen=True)
class Component:
    """A connected product of atoms with an orientation sign."""

    sign: int
    atoms: tuple[Atom, ...]

    @property
    def dim(self) -> int:
        return sum(a.dim for a in self.atoms)

    def __str__(self) -> str:
        body = " * ".join(str(a) for a in self.atoms) or "Point"
        return body if self.sign > 0 else f"-({body})"


def components(e: Expr | str) -> list[Component]:
    """Flatten an expression into signed products of atoms, distributing ``*`` over ``+``."""
    if isinstance(e, str):
        e = parse_manifold_expr(e)
    if isinstance(e, Atom):
        return [Component(1, () if e.name == "Point" else (e,))]
    if isinstance(e, Reverse):
        return [Component(-c.sign, c.atoms) for c in components(e.inner)]
    if isinstance(e, DisjointUnion):
        return [c for t in e.terms for c in components(t)]
    if isinstance(e, Product):
        parts = [components(f) for f in e.factors]
        out = [Component(1, ())]
        for part in parts:
            out = [Component(a.sign * b.sign, a.atoms + b.atoms) for a in out for b in part]
        return out
    raise TypeError(f"not a manifold expression: {e!r}")


def _as_expr(e):
    return parse_manifold_expr(e) if isinstance(e, str) else e


def partitions(n: int, max_part: int | None = None):
    """Partitions of ``n`` as nonincreasing tuples."""
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def monomial_name(prefix: str, parts) -> str:
    if not parts:
        return "1"
    counts = sorted(Counter(parts).items())
    return "".join(f"{prefix}{i}" if k == 1 else f"{prefix}{i}^{k}" for i, k in counts)


def _ring_models(comp: Component) -> list[RingModel]:
    models = []
    for atom in comp.atoms:
        model = class_data(atom).model
        if not isinstance(model, RingModel):
            raise NoRingModel(f"{atom} only has a table of characteristic numbers, no cohomology ring")
        models.append(model)
    return models


def _product_model(models: list[RingModel], kind: str) -> tuple[Ring, tuple[int, ...], GradedClass]:
    ring, top = Ring.point(), ()
    total = GradedClass.one(ring, 2 if kind == "sw" else 0)
    for m in models:
        cls = m.sw if kind == "sw" else m.pontrjagin
        ring, top = ring.tensor(m.ring), top + m.top
        total = total.tensor(cls)
    return ring, top, total


def _single_table(comp: Component) -> NumberTable | None:
    if len(comp.atoms) == 1:
        model = class_data(comp.atoms[0]).model
        if isinstance(model, NumberTable):
            return model
    return None


def total_sw_class(e: Expr | str) -> Union[GradedClass, list[GradedClass]]:
    """Total Stiefel-Whitney class; a list with one class per component for disjoint unions."""
    e = _as_expr(e)
    out = []
    for comp in components(e):
        _, _, total = _product_model(_ring_models(comp), "sw")
        out.append(total)
    return out[0] if len(out) == 1 else out


def total_pontrjagin_class(e: Expr | str) -> Union[GradedClass, list[GradedClass]]:
    e = _as_expr(e)
    out = []
    for comp in components(e):
        models = _ring_models(comp)
        if any(m.pontrjagin is None for m in models):
            raise Unsupported(f"{comp} has torsion in its integral cohomology model")
        _, _, total = _product_model(models, "p")
        out.append(total)
    return out[0] if len(out) == 1 else out


def _component_sw_numbers(comp: Component) -> dict[str, int]:
    dim = comp.dim
    table = _single_table(comp)
    if table is not None:
        return dict(table.sw_numbers)
    ring, top, w = _product_model(_ring_models(comp), "sw")
    pieces = [w.homogeneous(k) for k in range(dim + 1)]
    numbers = {}
    for part in partitions(dim):
        value = reduce(lambda x, y: x * y, (pieces[k] for k in part), GradedClass.one(ring, 2))
        numbers[monomial_name("w", part)] = value.coefficient(top) % 2
    return numbers


def sw_numbers(e: Expr | str) -> dict[str, int]:
    """Stiefel-Whitney numbers ``{monomial: 0 or 1}`` keyed like ``"w2w3"`` or ``"w2^2"``."""
    e = _as_expr(e)
    total: dict[str, int] = {}
    for comp in components(e):
        for k, v in _component_sw_numbers(comp).items():
            total[k] = (total.get(k, 0) + v) % 2
    return dict(sorted(total.items()))


def _component_pontrjagin_numbers(comp: Component) -> dict[str, int]:
    dim = comp.dim
    table = _single_table(comp)
    if table is not None:
        if table.pontrjagin_numbers is None:
            raise Unsupported(f"no Pontrjagin numbers recorded for {comp}")
        return {k: comp.sign * v for k, v in table.pontrjagin_numbers.items()}
    models = _ring_models(comp)
    if any(m.pontrjagin is None for m in models):
        raise Unsupported(f"{comp} has torsion in its integral cohomology model")
    ring, top, p = _product_model(models, "p")
    pieces = {k: p.homogeneous(4 * k) for k in range(dim // 4 + 1)}
    numbers = {}
    for part in partitions(dim // 4):
        value = reduce(lambda x, y: x * y, (pieces[k] for k in part), GradedClass.one(ring))
        numbers[monomial_name("p", part)] = comp.sign * value.coefficient(top)
    return numbers


def _check_orientable(e: Expr, what: str):
    for comp in components(e):
        for atom in comp.atoms:
            if not class_data(atom).orientable:
                raise NonOrientable(f"{what} needs an orientable manifold, {atom} is not")


def is_orientable(e: Expr | str) -> bool:
    e = _as_expr(e)
    return all(class_data(a).orientable for c in components(e) for a in c.atoms)


def pontrjagin_numbers(e: Expr | str) -> dict[str, int]:
    """Pontrjagin numbers ``{monomial: integer}``; orientation reversal flips their sign."""
    e = _as_expr(e)
    if not is_orientable(e):
        raise Unsupported("Pontrjagin numbers need an orientable manifold")
    if e.dim % 4:
        raise Unsupported(f"no Pontrjagin numbers in dimension {e.dim}")
    total: dict[str, int] = {}
    for comp in components(e):
        for k, v in _component_pontrjagin_numbers(comp).items():
            total[k] = total.get(k, 0) + v
    return dict(sorted(total.items()))


@dataclass(frozen=True)
class Bounds:
    reason: str = "all characteristic numbers vanish"

    def to_json(self) -> dict:
        return {"verdict": "Bounds", "reason": self.reason}


@dataclass(frozen=True)
class DoesNotBound:
    witness: str
    value: int

    def to_json(self) -> dict:
        return {"verdict": "DoesNotBound", "witness": self.witness, "value": self.value}


@dataclass(frozen=True)
class Undecided:
    missing: tuple[str, ...]

    def to_json(self) -> dict:
        return {"verdict": "Undecided", "missing": list(self.missing)}


CobordismVerdict = Union[Bounds, DoesNotBound, Undecided]


def is_nullcobordant(e: Expr | str) -> CobordismVerdict:
    """Decide whether an oriented closed manifold bounds, from its characteristic numbers.

    A nonzero Pontrjagin or Stiefel-Whitney number is returned as the
    witness.  If some numbers are unavailable and the rest vanish the
    verdict is ``Undecided`` unless the dimension alone settles it.
    """
    e = _as_expr(e)
    _check_orientable(e, "oriented cobordism")
    missing = []
    if e.dim % 4 == 0:
        try:
            for k, v in pontrjagin_numbers(e).items():
                if v:
                    return DoesNotBound(k, v)
        except (NoRingModel, Unsupported) as err:
            missing.append(f"Pontrjagin numbers: {err}")
    try:
        for k, v in sw_numbers(e).items():
            if v:
                return DoesNotBound(k, v)
    except (NoRingModel, Unsupported) as err:
        missing.append(f"Stiefel-Whitney numbers: {err}")
    if not missing:
        return Bounds()
    if e.dim in TRIVIAL_COBORDISM_DIMS:
        return Bounds(f"every closed oriented {e.dim}-manifold bounds")
    if all(_has_bounding_factor(c) for c in components(e)):
        # M = boundary of W implies M x N = boundary of W x N
        return Bounds("every component has a factor that bounds")
    return Undecided(tuple(missing))


def _has_bounding_factor(comp: Component) -> bool:
    for atom in comp.atoms:
        data = class_data(atom)
        if data.dim in TRIVIAL_COBORDISM_DIMS or (data.stably_parallelizable and data.dim > 0):
            return True
    return False


@dataclass(frozen=True)
class ImmersionReport:
    sw_square_ok: bool | None
    pontrjagin_trivial_ok: bool | None
    verdict: str  # Obstructed, NecessaryConditionsPass, ImmersionExists or Undecided
    reasons: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "sw_square_ok": self.sw_square_ok,
            "pontrjagin_trivial_ok": self.pontrjagin_trivial_ok,
            "verdict": self.verdict,
            "reasons": list(self.reasons),
        }


def _component_immersion_tests(comp: Component) -> tuple[bool | None, bool | None]:
    table = _single_table(comp)
    if table is not None:
        return table.sw_square_trivial, table.pontrjagin_trivial
    try:
        models = _ring_models(comp)
    except NoRingModel:
        return None, None
    _, _, w = _product_model(models, "sw")
    sw_ok = (w * w).is_one
    # a tensor product of total classes is 1 iff every factor is; torsion models are judged rationally
    p_ok = all(m.rational_pontrjagin_trivial if m.pontrjagin is None else m.pontrjagin.is_one for m in models)
    return sw_ok, p_ok


def _all(values) -> bool | None:
    values = list(values)
    if any(v is False for v in values):
        return False
    if any(v is None for v in values):
        return None
    return True


def lagrangian_immersion_obstructions(e: Expr | str) -> ImmersionReport:
    """Test the necessary conditions ``w(TL)^2 = 1`` and ``p(TL) = 1`` for a Lagrangian immersion.

    Passing both is not sufficient in general; existence is only asserted
    when every component is stably parallelizable, in which case the
    complexified tangent bundle is trivial.
    """
    e = _as_expr(e)
    comps = components(e)
    tests = [_component_immersion_tests(c) for c in comps]
    sw_ok = _all(t[0] for t in tests)
    p_ok = _all(t[1] for t in tests)
    reasons = []
    if sw_ok is False:
        reasons.append("w(TL)^2 != 1")
    if p_ok is False:
        reasons.append("p(TL) != 1")
    if reasons:
        return ImmersionReport(sw_ok, p_ok, "Obstructed", tuple(reasons))
    if all(class_data(a).stably_parallelizable for c in comps for a in c.atoms):
        return ImmersionReport(
            True, True, "ImmersionExists", ("stably parallelizable, so the complexified tangent bundle is trivial",)
        )
    if sw_ok is None or p_ok is None:
        return ImmersionReport(sw_ok, p_ok, "Undecided", ("characteristic classes not recorded",))
    return ImmersionReport(sw_ok, p_ok, "NecessaryConditionsPass")


@dataclass(frozen=True)
class EulerReport:
    chi: int
    embedding_possible: bool
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {"chi": self.chi, "embedding_possible": self.embedding_possible, "notes": list(self.notes)}


def euler_characteristic(e: Expr | str) -> int:
    e = _as_expr(e)
    return sum(prod(class_data(a).euler for a in c.atoms) for c in components(e))


def euler_embedding_obstruction(e: Expr | str) -> EulerReport:
    """A Lagrangian embedding in C^n needs Euler characteristic zero."""
    chi = euler_characteristic(e)
    notes = ["chi = 0 is necessary for an embedding, not sufficient"]
    if chi == 0:
        notes.append("there are no exact Lagrangian embeddings of closed manifolds in C^n")
    return EulerReport(chi, chi == 0, tuple(notes))


def describe(e: Expr | str) -> ClassData | None:
    """Catalog data of a single-atom expression, else ``None``."""
    e = _as_expr(e)
    return class_data(e) if isinstance(e, Atom) else None
