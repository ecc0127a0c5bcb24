"""Decision procedure for the prescribed boundary problem over topological data.

An instance records the cohomology of a compact oriented ``L`` with
boundary ``Sigma``, the restriction maps ``i1: H^1(L) -> H^1(Sigma)`` and
``i3: H^3(L) -> H^3(Sigma)``, the Maslov class ``mu`` of the boundary data
in ``H^1(Sigma)`` and its SU class ``theta`` in ``H^3(Sigma)``.  The engine
only reads these groups; it never computes them from geometry.

Rules by complex dimension ``n``:

* ``n = 2, 3``: solvable iff ``mu`` is in the image of ``i1``; for ``n = 2``
  with connected ``Sigma`` this strengthens to ``mu = 0``;
* ``n = 4, 5``: additionally ``theta`` must be in the image of ``i3``; for
  ``n = 4`` with connected ``Sigma`` this strengthens to ``theta = 0``;
* ``n >= 6``: undecided, since higher obstructions are not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidParameter, MissingField, NotExact, NotOrientable, UnsupportedDimension
from .intalg import FgAbelianGroup, GroupHom

INSTANCE_VERSION = 1


@dataclass(frozen=True)
class PbpInstance:
    n: int
    sigma_connected: bool
    h1_L: FgAbelianGroup
    h1_Sigma: FgAbelianGroup
    i1: GroupHom
    maslov_class: tuple[int, ...]
    l_orientable: bool = True
    exact_data: bool = True
    h3_L: FgAbelianGroup | None = None
    h3_Sigma: FgAbelianGroup | None = None
    i3: GroupHom | None = None
    su_class: tuple[int, ...] | None = None
    h1_rel: FgAbelianGroup | None = None
    b1_Sigma: int | None = None

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParameter(f"complex dimension must be at least 2, got {self.n}")
        if self.i1.domain != self.h1_L or self.i1.codomain != self.h1_Sigma:
            raise InvalidParameter("i1 must map h1_L to h1_Sigma")
        object.__setattr__(self, "maslov_class", self.h1_Sigma.element(self.maslov_class))
        if self.i3 is not None:
            if self.h3_L is None or self.h3_Sigma is None:
                raise MissingField("i3 given without h3_L and h3_Sigma")
            if self.i3.domain != self.h3_L or self.i3.codomain != self.h3_Sigma:
                raise InvalidParameter("i3 must map h3_L to h3_Sigma")
        if self.su_class is not None:
            if self.h3_Sigma is None:
                raise MissingField("su_class given without h3_Sigma")
            object.__setattr__(self, "su_class", self.h3_Sigma.element(self.su_class))
        if self.b1_Sigma is not None and self.b1_Sigma < 0:
            raise InvalidParameter("b1_Sigma must be nonnegative")

    @classmethod
    def from_json(cls, doc: dict) -> "PbpInstance":
        """Build from the JSON layout: groups ``{"rank", "torsion"}``, maps ``{"matrix"}``, integer arrays."""

        def need(key):
            if key not in doc:
                raise MissingField(f"missing field {key!r}")
            return doc[key]

        def group(key, required=True):
            if key not in doc:
                if required:
                    raise MissingField(f"missing field {key!r}")
                return None
            g = doc[key]
            return FgAbelianGroup(int(g.get("rank", 0)), tuple(g.get("torsion", ())))

        if need("version") != INSTANCE_VERSION:
            raise InvalidParameter(f"unsupported instance version {doc['version']!r}")
        h1_L, h1_Sigma = group("h1_L"), group("h1_Sigma")
        h3_L, h3_Sigma = group("h3_L", False), group("h3_Sigma", False)
        i3 = None
        if "i3" in doc:
            if h3_L is None or h3_Sigma is None:
                raise MissingField("i3 given without h3_L and h3_Sigma")
            i3 = GroupHom.from_matrix(h3_L, h3_Sigma, doc["i3"]["matrix"])
        return cls(
            n=int(need("n")),
            sigma_connected=bool(need("sigma_connected")),
            h1_L=h1_L,
            h1_Sigma=h1_Sigma,
            i1=GroupHom.from_matrix(h1_L, h1_Sigma, need("i1")["matrix"]),
            maslov_class=tuple(need("maslov_class")),
            l_orientable=bool(doc.get("l_orientable", True)),
            exact_data=bool(doc.get("exact_data", True)),
            h3_L=h3_L,
            h3_Sigma=h3_Sigma,
            i3=i3,
            su_class=tuple(doc["su_class"]) if "su_class" in doc else None,
            h1_rel=group("h1_rel", False),
            b1_Sigma=doc.get("b1_Sigma"),
        )

    def to_json(self) -> dict:
        doc = {
            "version": INSTANCE_VERSION,
            "n": self.n,
            "sigma_connected": self.sigma_connected,
            "l_orientable": self.l_orientable,
            "exact_data": self.exact_data,
            "h1_L": self.h1_L.to_json(),
            "h1_Sigma": self.h1_Sigma.to_json(),
            "i1": self.i1.to_json(),
            "maslov_class": list(self.maslov_class),
        }
        optional = {
            "h3_L": self.h3_L,
            "h3_Sigma": self.h3_Sigma,
            "i3": self.i3,
            "h1_rel": self.h1_rel,
        }
        doc.update({k: v.to_json() for k, v in optional.items() if v is not None})
        if self.su_class is not None:
            doc["su_class"] = list(self.su_class)
        if self.b1_Sigma is not None:
            doc["b1_Sigma"] = self.b1_Sigma
        return doc


def disk_instance(n: int, maslov: int = 0, su: int = 0) -> PbpInstance:
    """``L = D^n`` with boundary ``S^(n-1)``: all groups vanish except ``H^(n-1)`` of the sphere."""
    zero, z = FgAbelianGroup(), FgAbelianGroup(1)
    h1_Sigma = z if n == 2 else zero
    h3_Sigma = z if n == 4 else zero
    return PbpInstance(
        n=n,
        sigma_connected=True,
        h1_L=zero,
        h1_Sigma=h1_Sigma,
        i1=GroupHom.from_matrix(zero, h1_Sigma, [[]] * h1_Sigma.ngens),
        maslov_class=(maslov,) if n == 2 else (),
        h3_L=zero,
        h3_Sigma=h3_Sigma,
        i3=GroupHom.from_matrix(zero, h3_Sigma, [[]] * h3_Sigma.ngens),
        su_class=(su,) if n == 4 else (),
        h1_rel=zero,
    )


# -- verdicts -------------------------------------------------------------------

@dataclass(frozen=True)
class Solvable:
    maslov_zero_possible: bool
    notes: tuple[str, ...] = ()

    kind = "Solvable"

    def to_json(self) -> dict:
        return {"verdict": self.kind, "maslov_zero_possible": self.maslov_zero_possible, "notes": list(self.notes)}


@dataclass(frozen=True)
class Unsolvable:
    failed_condition: str  # "maslov" or "su"
    detail: str
    notes: tuple[str, ...] = ()

    kind = "Unsolvable"

    def to_json(self) -> dict:
        return {
            "verdict": self.kind,
            "failed_condition": self.failed_condition,
            "detail": self.detail,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class Undecided:
    reason: str
    notes: tuple[str, ...] = ()

    kind = "Undecided"

    def to_json(self) -> dict:
        return {"verdict": self.kind, "reason": self.reason, "notes": list(self.notes)}


Verdict = Solvable | Unsolvable | Undecided


def _check_preconditions(inst: PbpInstance) -> None:
    if not inst.exact_data:
        raise NotExact("the boundary data must be exact")
    if not inst.l_orientable:
        raise NotOrientable("only orientable L is supported")


def decide_pbp(inst: PbpInstance) -> Verdict:
    """Decide solvability from the image conditions listed in the module docstring."""
    _check_preconditions(inst)
    n = inst.n
    if n >= 6:
        return Undecided("higher obstructions", (f"n = {n}: obstructions beyond H^1 and H^3 are not modelled",))
    if n in (4, 5) and (inst.i3 is None or inst.su_class is None):
        raise MissingField(f"n = {n} needs i3 and su_class")

    notes = []
    mu = inst.maslov_class
    if n == 2 and inst.sigma_connected:
        notes.append("connected boundary: Maslov class must vanish")
        if any(mu):
            return Unsolvable("maslov", f"Maslov class {list(mu)} is nonzero", tuple(notes))
    elif not inst.i1.in_image(mu):
        return Unsolvable("maslov", f"Maslov class {list(mu)} is not restricted from H^1(L)", tuple(notes))

    if n in (4, 5):
        theta = inst.su_class
        if n == 4 and inst.sigma_connected:
            notes.append("connected boundary: SU class must vanish")
            if any(theta):
                return Unsolvable("su", f"SU class {list(theta)} is nonzero", tuple(notes))
        elif not inst.i3.in_image(theta):
            return Unsolvable("su", f"SU class {list(theta)} is not restricted from H^3(L)", tuple(notes))

    if any(t for g in (inst.h1_L, inst.h1_Sigma, inst.h3_L, inst.h3_Sigma) if g is not None for t in g.torsion):
        notes.append("torsion handled by exact image membership; beyond the torsion-free setting")
    return Solvable(not any(mu), tuple(notes))


@dataclass(frozen=True)
class DiskVerdict:
    n: int
    verdict: str  # AlwaysSolvable, ConditionalOnMaslov or ConditionalOnClass
    obstruction_group: str

    def to_json(self) -> dict:
        return {"n": self.n, "verdict": self.verdict, "obstruction_group": self.obstruction_group}


def decide_disk(n: int) -> DiskVerdict:
    """Initial data on ``(D^n, S^(n-1))``: the obstruction lives in ``pi_(n-1)(U(n))``, 0 for odd n and Z for even n."""
    if n < 2:
        raise InvalidParameter(f"complex dimension must be at least 2, got {n}")
    if n % 2:
        return DiskVerdict(n, "AlwaysSolvable", "0")
    if n == 2:
        return DiskVerdict(n, "ConditionalOnMaslov", "Z")
    return DiskVerdict(n, "ConditionalOnClass", "Z")


def count_extensions(inst: PbpInstance) -> FgAbelianGroup:
    """Group parametrizing compatible trivializations: ``H^1(L, Sigma) ⊕ (0 for n = 2, Z for n = 3)``."""
    if inst.n not in (2, 3):
        raise UnsupportedDimension(f"extension count is available for n = 2, 3, got {inst.n}")
    if inst.h1_rel is None:
        raise MissingField("count_extensions needs h1_rel")
    verdict = decide_pbp(inst)
    if not isinstance(verdict, Solvable):
        raise InvalidParameter(f"instance is {verdict.kind}; there is nothing to count")
    return inst.h1_rel.direct_sum(FgAbelianGroup(1 if inst.n == 3 else 0))


@dataclass(frozen=True)
class Finding:
    kind: str  # "inconsistent" or "note"
    message: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": self.message}


def validate_instance(inst: PbpInstance) -> list[Finding]:
    """Consistency checks and notes on which rules apply; never raises."""
    out = []
    b1 = inst.b1_Sigma if inst.b1_Sigma is not None else inst.h1_Sigma.rank
    if inst.b1_Sigma is not None and inst.b1_Sigma != inst.h1_Sigma.rank:
        out.append(Finding("inconsistent", f"b1_Sigma = {inst.b1_Sigma} but h1_Sigma has rank {inst.h1_Sigma.rank}"))
    if inst.n == 3 and inst.sigma_connected and 2 * inst.h1_L.rank < b1:
        out.append(
            Finding(
                "inconsistent",
                f"rank H^1(L) = {inst.h1_L.rank} is below half of b1(Sigma) = {b1}; no such filling exists",
            )
        )
    if inst.l_orientable and inst.sigma_connected and inst.n in (2, 4):
        which = "Maslov" if inst.n == 2 else "SU"
        out.append(Finding("note", f"orientable L with connected boundary: strengthened {which} rule active"))
    if inst.n >= 6:
        out.append(Finding("note", "n >= 6: verdict will be Undecided"))
    if not inst.exact_data:
        out.append(Finding("inconsistent", "boundary data is not exact; decide will refuse it"))
    if not inst.l_orientable:
        out.append(Finding("inconsistent", "L is not orientable; decide will refuse it"))
    if inst.n in (4, 5) and (inst.i3 is None or inst.su_class is None):
        out.append(Finding("inconsistent", f"n = {inst.n} needs i3 and su_class"))
    return out


# -- desingularization ---------------------------------------------------------------

AC_EXACT_NOTE = "asymptotically conical ends with negative rate give exact initial data automatically"


@dataclass(frozen=True)
class SingularityModel:
    label: str
    link: PbpInstance
    local_exact: bool = True
    local_maslov_zero: bool = True
    link_connected: bool = True
    is_SL: bool = False


@dataclass(frozen=True)
class DesingularizationReport:
    n: int
    per_model: tuple[tuple[str, Verdict], ...]
    aggregate: str
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "models": [{"label": label, **v.to_json()} for label, v in self.per_model],
            "aggregate": self.aggregate,
            "notes": list(self.notes),
        }


def desingularization_advisor(models: Sequence[SingularityModel], n: int) -> DesingularizationReport:
    """Run each singularity's link data through :func:`decide_pbp` and combine.

    A Maslov-zero desingularization is reported when every model is
    solvable, locally Maslov zero, and has a connected link or is special
    Lagrangian.
    """
    if n < 2:
        raise UnsupportedDimension(f"complex dimension must be at least 2, got {n}")
    for m in models:
        if not m.local_exact:
            raise NotExact(f"singularity {m.label!r} is not locally exact")
    if n >= 4:
        pending = Undecided("requires SU-class data for each link")
        return DesingularizationReport(
            n, tuple((m.label, pending) for m in models), "Undecided", ("supply i3 and su_class and use decide_pbp",)
        )
    per_model = tuple((m.label, decide_pbp(m.link)) for m in models)
    if any(isinstance(v, Unsolvable) for _, v in per_model):
        aggregate = "Unsolvable"
    elif all((m.link_connected or m.is_SL) and m.local_maslov_zero for m in models):
        aggregate = "MaslovZeroDesingularizationExists"
    else:
        aggregate = "DesingularizationExists"
    return DesingularizationReport(n, per_model, aggregate, (AC_EXACT_NOTE,))
