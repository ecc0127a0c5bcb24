"""Catalog of explicit special Lagrangian and Lagrangian cones.

Every cone is ``C = {r * sigma : r > 0, sigma in Sigma}`` over a Legendrian
link ``Sigma`` in the unit sphere of C^N.  The group cones are orbits:

* ``su(n)``: ``A / sqrt(n)`` for ``A`` in SU(n), in C^(n^2) = gl(n, C);
* ``su-so(n)``: ``A A^T / sqrt(n)``, in the symmetric matrices Sym(n, C);
* ``su-sp(n)``: ``A J_n A^T / sqrt(2n)`` for ``A`` in SU(2n), in so(2n, C).

Matrix spaces carry the inner product ``Tr(A B*)`` and fixed orthonormal
coordinates: entries for gl(n), ``{E_ii} u {(E_ij + E_ji)/sqrt 2}`` for Sym
and ``{(E_ij - E_ji)/sqrt 2}`` for so.  ``sw(p, q)`` is the cone over the
curve ``(sqrt q e^{i p t}, i sqrt p e^{-i q t}) / sqrt(p + q)`` in C^2 and
``clifford(n)`` the cone over ``(e^{i t_1}, ..., e^{i t_n}) / sqrt n`` with
``sum t = 0``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq

from .cxmat import orthonormalize, to_real
from .errors import DegenerateFrame, DimensionMismatch, InsufficientRange, InvalidParameter, NoBranchSolution
from .symplectic import ParametricLoop, isotropy_residual, legendrian_residual, phase, su_basis

NONSMOOTHABLE = (
    "no asymptotically conical special Lagrangian smoothing with decay exists for this cone "
    "(from the classification of homogeneous special Lagrangian cones)"
)

KINDS = ("su", "su-so", "su-sp", "sw", "clifford")


@dataclass(frozen=True)
class ConeSpec:
    kind: str
    n: int = 0
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown cone kind {self.kind!r}")
        if self.kind == "sw":
            if self.p < 1 or self.q < 1:
                raise InvalidParameter(f"sw(p,q) needs p, q >= 1, got ({self.p},{self.q})")
            if gcd(self.p, self.q) != 1:
                raise InvalidParameter(f"sw(p,q) needs coprime p and q, got ({self.p},{self.q})")
        elif self.n < 2:
            raise InvalidParameter(f"{self.kind}(n) needs n >= 2, got {self.n}")

    @property
    def id(self) -> str:
        return f"sw({self.p},{self.q})" if self.kind == "sw" else f"{self.kind}({self.n})"

    @property
    def ambient_dim(self) -> int:
        """Complex dimension N of the ambient space; also the real dimension of the cone."""
        n = self.n
        return {
            "su": n * n,
            "su-so": n * (n + 1) // 2,
            "su-sp": n * (2 * n - 1),
            "sw": 2,
            "clifford": n,
        }[self.kind]

    @property
    def dim(self) -> int:
        return self.ambient_dim

    @property
    def link_dim(self) -> int:
        return self.ambient_dim - 1

    @property
    def is_special_lagrangian(self) -> bool:
        return self.kind != "sw" or self.p == self.q

    @property
    def notes(self) -> tuple[str, ...]:
        notes = []
        if self.kind in ("su", "su-so", "su-sp"):
            notes.append(NONSMOOTHABLE)
        if self.kind == "su" and self.n == 2:
            notes.append("su(2) is below the range n >= 3 of the group cone family")
        if self.kind == "clifford":
            notes.append("link parametrized as (e^{i t_1}, ..., e^{i t_n}) / sqrt(n) with sum t = 0")
        return tuple(notes)


def SuCone(n: int) -> ConeSpec:
    return ConeSpec("su", n)


def SuSoCone(n: int) -> ConeSpec:
    return ConeSpec("su-so", n)


def SuSpCone(n: int) -> ConeSpec:
    return ConeSpec("su-sp", n)


def SchoenWolfson(p: int, q: int) -> ConeSpec:
    return ConeSpec("sw", p=p, q=q)


def CliffordTorusCone(n: int) -> ConeSpec:
    return ConeSpec("clifford", n)


_ID = re.compile(r"^\s*(su-so|su-sp|su|sw|clifford)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


def parse_cone_id(text: str) -> ConeSpec:
    """``"su(3)"``, ``"su-so(3)"``, ``"su-sp(2)"``, ``"sw(1,2)"`` or ``"clifford(3)"``."""
    m = _ID.match(text)
    if not m:
        raise InvalidParameter(f"cannot read cone id {text!r}; expected one of su(n), su-so(n), su-sp(n), sw(p,q), clifford(n)")
    kind, a, b = m.group(1), int(m.group(2)), m.group(3)
    if kind == "sw":
        if b is None:
            raise InvalidParameter("sw needs two parameters, e.g. sw(1,2)")
        return SchoenWolfson(a, int(b))
    if b is not None:
        raise InvalidParameter(f"{kind} takes one parameter")
    return ConeSpec(kind, a)


# -- ambient coordinates ------------------------------------------------------

def _sym_coords(S: np.ndarray) -> np.ndarray:
    n = S.shape[0]
    diag = [S[i, i] for i in range(n)]
    off = [np.sqrt(2) * S[i, j] for i, j in itertools.combinations(range(n), 2)]
    return np.array(diag + off, dtype=complex)


def _antisym_coords(M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    return np.array([np.sqrt(2) * M[i, j] for i, j in itertools.combinations(range(n), 2)], dtype=complex)


def _from_sym_coords(z: np.ndarray, n: int) -> np.ndarray:
    S = np.zeros((n, n), dtype=complex)
    S[np.arange(n), np.arange(n)] = z[:n]
    for k, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        S[i, j] = S[j, i] = z[n + k] / np.sqrt(2)
    return S


def _from_antisym_coords(z: np.ndarray, n: int) -> np.ndarray:
    M = np.zeros((n, n), dtype=complex)
    for k, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        M[i, j] = z[k] / np.sqrt(2)
        M[j, i] = -M[i, j]
    return M


def symplectic_form(n: int) -> np.ndarray:
    """``J_n = [[0, I_n], [-I_n, 0]]``."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


# -- group parameters -----------------------------------------------------------

def random_special_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(n): QR of a complex Gaussian, phase-fixed, first column divided by det."""
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(Z)
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))
    Q[:, 0] /= np.linalg.det(Q)
    return Q


def _group_size(cone: ConeSpec) -> int:
    return 2 * cone.n if cone.kind == "su-sp" else cone.n


def random_parameter(cone: ConeSpec, rng: np.random.Generator):
    """A random link parameter: SU matrix, angle, or angle vector."""
    if cone.kind in ("su", "su-so", "su-sp"):
        return random_special_unitary(_group_size(cone), rng)
    if cone.kind == "sw":
        return float(rng.uniform(0, 2 * np.pi))
    return rng.uniform(0, 2 * np.pi, size=cone.n - 1)


def _check_group_element(cone: ConeSpec, A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    m = _group_size(cone)
    if A.shape != (m, m):
        raise InvalidParameter(f"{cone.id} needs an element of SU({m})")
    if np.max(np.abs(A @ A.conj().T - np.eye(m))) > 1e-9 or abs(np.linalg.det(A) - 1) > 1e-9:
        raise InvalidParameter(f"parameter is not in SU({m})")
    return A


def _clifford_angles(cone: ConeSpec, param) -> np.ndarray:
    t = np.atleast_1d(np.asarray(param, dtype=float))
    if t.shape != (cone.n - 1,):
        raise InvalidParameter(f"{cone.id} needs {cone.n - 1} angles")
    return np.append(t, -t.sum())


def sample_link_point(cone: ConeSpec, param) -> np.ndarray:
    """Point of the link in C^N for the given group element or angle(s)."""
    if cone.kind == "su":
        A = _check_group_element(cone, param)
        return A.reshape(-1) / np.sqrt(cone.n)
    if cone.kind == "su-so":
        A = _check_group_element(cone, param)
        return _sym_coords(A @ A.T) / np.sqrt(cone.n)
    if cone.kind == "su-sp":
        A = _check_group_element(cone, param)
        return _antisym_coords(A @ symplectic_form(cone.n) @ A.T) / np.sqrt(2 * cone.n)
    if cone.kind == "sw":
        t = float(param)
        p, q = cone.p, cone.q
        return np.array([np.sqrt(q) * np.exp(1j * p * t), 1j * np.sqrt(p) * np.exp(-1j * q * t)]) / np.sqrt(p + q)
    theta = _clifford_angles(cone, param)
    return np.exp(1j * theta) / np.sqrt(cone.n)


def _traceless_real_symmetric(n: int) -> list[np.ndarray]:
    out = []
    for j in range(n - 1):
        S = np.zeros((n, n))
        S[j, j], S[n - 1, n - 1] = 1.0, -1.0
        out.append(S)
    for i, j in itertools.combinations(range(n), 2):
        S = np.zeros((n, n))
        S[i, j] = S[j, i] = 1.0
        out.append(S)
    return out


_COMPLEMENT_CACHE: dict[int, list[np.ndarray]] = {}


def symplectic_complement(n: int) -> list[np.ndarray]:
    """Elements of su(2n) whose images ``X J + J X^T`` span the orbit tangent space at ``J``.

    The kernel of ``X -> X J + J X^T`` on su(2n) is sp(n); the singular
    value decomposition of the map, taken once at the identity, gives a
    fixed complementary basis, so frames pushed around the orbit keep a
    consistent orientation.
    """
    if n not in _COMPLEMENT_CACHE:
        J = symplectic_form(n)
        basis = su_basis(2 * n)
        # columns are images of the basis; left singular vectors mix the basis elements
        images = np.array([to_real(_antisym_coords(X @ J + J @ X.T)) for X in basis]).T
        _, s, Vt = np.linalg.svd(images, full_matrices=False)
        rank = int(np.sum(s > 1e-10 * s[0]))
        _COMPLEMENT_CACHE[n] = [sum(c * X for c, X in zip(row, basis)) for row in Vt[:rank]]
    return _COMPLEMENT_CACHE[n]


def orbit_tangents(cone: ConeSpec, param) -> np.ndarray:
    """Link tangent vectors (complex, one per row) before orthonormalization."""
    if cone.kind == "su":
        A = _check_group_element(cone, param)
        return np.array([(X @ A).reshape(-1) for X in su_basis(cone.n)]) / np.sqrt(cone.n)
    if cone.kind == "su-so":
        A = _check_group_element(cone, param)
        # X = iS with S real symmetric traceless; X + X^T = 2iS
        return np.array([_sym_coords(A @ (2j * S) @ A.T) for S in _traceless_real_symmetric(cone.n)]) / np.sqrt(
            cone.n
        )
    if cone.kind == "su-sp":
        A = _check_group_element(cone, param)
        J = symplectic_form(cone.n)
        rows = [_antisym_coords(A @ (X @ J + J @ X.T) @ A.T) for X in symplectic_complement(cone.n)]
        return np.array(rows) / np.sqrt(2 * cone.n)
    if cone.kind == "sw":
        t = float(param)
        p, q = cone.p, cone.q
        v = np.array([1j * p * np.sqrt(q) * np.exp(1j * p * t), q * np.sqrt(p) * np.exp(-1j * q * t)])
        return (v / np.sqrt(p + q))[None, :]
    z = sample_link_point(cone, param)
    rows = []
    for k in range(cone.n - 1):
        v = np.zeros(cone.n, dtype=complex)
        v[k] = 1j * z[k]
        v[-1] = -1j * z[-1]
        rows.append(v)
    return np.array(rows)


def tangent_frame(cone: ConeSpec, param) -> np.ndarray:
    """Orthonormal real frame of the cone at the link point: orbit directions, then radial."""
    point = sample_link_point(cone, param)
    rows = np.vstack([to_real(orbit_tangents(cone, param)), to_real(point)[None, :]])
    try:
        return orthonormalize(rows)
    except DimensionMismatch as err:
        raise DegenerateFrame(f"{cone.id}: tangent vectors have rank below {cone.dim}") from err


def link_loop(cone: ConeSpec, param=None) -> ParametricLoop:
    """A closed loop in the link through ``param`` with frames along it.

    Group cones move along ``A exp(t X)`` for a generator with period
    ``2 pi``; ``sw`` follows its curve and ``clifford`` rotates the first
    and last coordinates against each other.
    """
    if cone.kind in ("su", "su-so", "su-sp"):
        m = _group_size(cone)
        A = np.eye(m, dtype=complex) if param is None else _check_group_element(cone, param)
        X = np.zeros((m, m), dtype=complex)
        X[0, 0], X[-1, -1] = 1j, -1j

        def at(t):
            return A @ expm(t * X)

    elif cone.kind == "sw":
        offset = 0.0 if param is None else float(param)

        def at(t):
            return offset + t

    else:
        base = np.zeros(cone.n - 1) if param is None else np.asarray(param, dtype=float)
        step = np.zeros(cone.n - 1)
        step[0] = 1.0

        def at(t):
            return base + t * step

    return ParametricLoop(lambda t: sample_link_point(cone, at(t)), lambda t: tangent_frame(cone, at(t)))


# -- verification ----------------------------------------------------------------

@dataclass(frozen=True)
class ConeReport:
    cone: str
    samples: int
    seed: int
    sphere_residual: float
    legendrian_residual: float
    isotropy_residual: float
    phase_mean: complex
    phase_stddev: float
    verdict: str
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def matches_catalog(self) -> bool:
        expected = "SpecialLagrangian" if parse_cone_id(self.cone).is_special_lagrangian else "LagrangianOnly"
        return self.verdict == expected

    def to_json(self) -> dict:
        return {
            "cone": self.cone,
            "samples": self.samples,
            "seed": self.seed,
            "sphere_residual": self.sphere_residual,
            "legendrian_residual": self.legendrian_residual,
            "isotropy_residual": self.isotropy_residual,
            "phase_mean": [self.phase_mean.real, self.phase_mean.imag],
            "phase_stddev": self.phase_stddev,
            "verdict": self.verdict,
            "matches_catalog": self.matches_catalog,
            "notes": list(self.notes),
        }


def verify_cone(cone: ConeSpec, samples: int = 200, tol: float = 1e-8, seed: int = 0) -> ConeReport:
    """Check sphere, Legendrian, isotropy and phase-constancy conditions at random link points.

    Verdict ``SpecialLagrangian`` when every residual and the phase spread
    are within ``tol``, ``LagrangianOnly`` when only the phase varies and
    ``NotLagrangian`` otherwise.
    """
    if samples < 10:
        raise ValueError("verify_cone needs at least 10 samples")
    rng = np.random.default_rng(seed)
    sphere = legendre = iso = 0.0
    phases = []
    for _ in range(samples):
        param = random_parameter(cone, rng)
        point = sample_link_point(cone, param)
        frame = tangent_frame(cone, param)
        sphere = max(sphere, abs(float(np.linalg.norm(point)) - 1.0))
        legendre = max(legendre, legendrian_residual(point, frame[:-1], tol=1e-6))
        iso = max(iso, isotropy_residual(point, frame))
        phases.append(phase(point, frame, tol=max(tol, 1e-6)) if iso <= max(tol, 1e-6) else np.nan)
    phases = np.array(phases)
    mean = complex(np.mean(phases))
    stddev = float(np.sqrt(np.mean(np.abs(phases - mean) ** 2)))
    lagrangian = max(sphere, legendre, iso) <= tol
    if lagrangian and stddev <= tol:
        verdict = "SpecialLagrangian"
    elif lagrangian:
        verdict = "LagrangianOnly"
    else:
        verdict = "NotLagrangian"
    return ConeReport(cone.id, samples, seed, sphere, legendre, iso, mean, stddev, verdict, cone.notes)


# -- symmetries and moment maps ---------------------------------------------------

def _linear_map_matrix(cone: ConeSpec, act) -> np.ndarray:
    """Matrix on C^N of the complex-linear map ``act`` on the ambient matrix space."""
    N = cone.ambient_dim
    cols = []
    for k in range(N):
        e = np.zeros(N, dtype=complex)
        e[k] = 1.0
        cols.append(act(e))
    return np.array(cols).T


def symmetry_generators(cone: ConeSpec) -> list[np.ndarray]:
    """Infinitesimal symmetries of the cone as N x N anti-Hermitian matrices on C^N."""
    n = cone.n
    if cone.kind == "su":
        return [np.kron(X, np.eye(n)) for X in su_basis(n)]
    if cone.kind == "su-so":
        return [
            _linear_map_matrix(cone, lambda z, X=X: _sym_coords(X @ _from_sym_coords(z, n) + _from_sym_coords(z, n) @ X.T))
            for X in su_basis(n)
        ]
    if cone.kind == "su-sp":
        m = 2 * n
        return [
            _linear_map_matrix(
                cone, lambda z, X=X: _antisym_coords(X @ _from_antisym_coords(z, m) + _from_antisym_coords(z, m) @ X.T)
            )
            for X in su_basis(m)
        ]
    if cone.kind == "sw":
        return [np.diag([1j * cone.p, -1j * cone.q])]
    out = []
    for k in range(n - 1):
        d = np.zeros(n, dtype=complex)
        d[k], d[-1] = 1j, -1j
        out.append(np.diag(d))
    return out


def translation_generators(cone: ConeSpec) -> list[np.ndarray]:
    """The 2N unit translations ``e_k`` and ``i e_k`` of C^N."""
    N = cone.ambient_dim
    eye = np.eye(N, dtype=complex)
    return [unit * eye[k] for k in range(N) for unit in (1.0, 1j)]


def linear_moment(X: np.ndarray, z: np.ndarray) -> float:
    """Moment map of ``z -> X z`` normalized to vanish at 0: ``-Im(z* X z) / 2``."""
    return -0.5 * float(np.imag(np.vdot(z, X @ z)))


def translation_moment(v: np.ndarray, z: np.ndarray) -> float:
    """Moment map of the constant field ``v``, vanishing at 0: ``Im <v, z>``."""
    return float(np.imag(np.vdot(v, z)))


def moment_level_check(
    cone: ConeSpec, generators: str | Sequence[np.ndarray] = "symmetry", samples: int = 100, seed: int = 0
) -> float:
    """Largest ``|mu|`` over random cone points and generators.

    ``generators`` is ``"symmetry"`` (the cone's own symmetry algebra),
    ``"translations"``, or a list of anti-Hermitian matrices.  Points are
    taken at random radii in ``(0, 2]`` along the cone.
    """
    rng = np.random.default_rng(seed)
    if isinstance(generators, str):
        if generators == "translations":
            gens, moment = translation_generators(cone), translation_moment
        elif generators == "symmetry":
            gens, moment = symmetry_generators(cone), linear_moment
        else:
            raise InvalidParameter(f"unknown generator set {generators!r}")
    else:
        gens, moment = [np.asarray(X, dtype=complex) for X in generators], linear_moment
    worst = 0.0
    for _ in range(samples):
        z = rng.uniform(0, 2) * sample_link_point(cone, random_parameter(cone, rng))
        worst = max(worst, max(abs(moment(X, z)) for X in gens))
    return worst


# -- two-ended smoothings -----------------------------------------------------------

@dataclass(frozen=True)
class SmoothingFamily:
    """``L_t = {z sigma : sigma in link, Im z^n = t, arg z in (0, pi/n)}`` for a cone of dimension n.

    For ``t > 0`` it is asymptotic to ``C`` and ``e^{i pi/n} C`` at rate
    ``2 - n``.
    """

    cone: ConeSpec
    t: float

    @property
    def n(self) -> int:
        return self.cone.dim

    @property
    def rate(self) -> int:
        return 2 - self.n


def branch_angle(n: int, t: float, r: float, branch: int) -> float:
    """Solve ``r^n sin(n a) = t`` for ``a`` on a branch of ``(0, pi/n)``.

    Branch 0 has ``a`` in ``(0, pi/(2n)]`` (near ``C``), branch 1 has ``a`` in
    ``[pi/(2n), pi/n)`` (near ``e^{i pi/n} C``).
    """
    if branch not in (0, 1):
        raise InvalidParameter("branch must be 0 or 1")
    if t <= 0:
        raise NoBranchSolution(f"Im z^n = {t} has no solution with arg z in (0, pi/n)")
    rn = r**n
    if rn < t:
        raise NoBranchSolution(f"radius {r} is below the neck radius {t ** (1 / n):.6g}")
    top = np.pi / (2 * n)
    if rn == t:
        return top

    def g(a):
        return rn * np.sin(n * a) - t

    if branch == 0:
        return brentq(g, 0.0, top, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return brentq(g, top, np.pi / n, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def smoothing_point(family: SmoothingFamily, r: float, branch: int, param) -> np.ndarray:
    """``z sigma`` with ``|z| = r`` and ``Im z^n = t`` on the chosen branch."""
    a = branch_angle(family.n, family.t, r, branch)
    return r * np.exp(1j * a) * sample_link_point(family.cone, param)


def smoothing_frame(family: SmoothingFamily, r: float, branch: int, param) -> np.ndarray:
    """Orthonormal frame of ``L_t``: ``z`` times the link tangents, then ``conj(z)^(n-1) sigma``."""
    n = family.n
    z = r * np.exp(1j * branch_angle(n, family.t, r, branch))
    sigma = sample_link_point(family.cone, param)
    rows = [z * v for v in orbit_tangents(family.cone, param)]
    # along Im z^n = t the velocity of z is a real multiple of conj(z)^(n-1)
    rows.append(np.conj(z) ** (n - 1) * sigma)
    try:
        return orthonormalize(to_real(np.array(rows)))
    except DimensionMismatch as err:
        raise DegenerateFrame("degenerate frame on the smoothing") from err


def _distance_to_ray(x: np.ndarray, u: np.ndarray) -> float:
    c = float(np.real(np.vdot(u, x)))
    return float(np.linalg.norm(x - c * u)) if c > 0 else float(np.linalg.norm(x))


def cone_distance(family: SmoothingFamily, x: np.ndarray, sigma: np.ndarray) -> float:
    """Distance from ``x`` to the nearer of the rays through ``sigma`` and ``e^{i pi/n} sigma``."""
    return min(_distance_to_ray(x, sigma), _distance_to_ray(x, np.exp(1j * np.pi / family.n) * sigma))


def decay_rate_fit(family: SmoothingFamily, radii: Sequence[float], param=None, branch: int = 0) -> float:
    """Log-log slope of the distance from ``L_t`` to its asymptotic cones against ``r``.

    Needs at least five radii spanning two decades; the expected slope is
    ``rate - 1 = 1 - n``.
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size < 5 or radii.max() / radii.min() < 100:
        raise InsufficientRange("need at least 5 radii spanning two decades")
    if param is None:
        param = random_parameter(family.cone, np.random.default_rng(0))
    sigma = sample_link_point(family.cone, param)
    dist = [cone_distance(family, smoothing_point(family, r, branch, param), sigma) for r in radii]
    slope, _ = np.polyfit(np.log(radii), np.log(dist), 1)
    return float(slope)


@dataclass(frozen=True)
class SmoothingReport:
    cone: str
    t: float
    rate: int
    slope: float
    level_residual: float
    isotropy_residual: float
    phase_stddev: float
    samples: int

    def to_json(self) -> dict:
        return {
            "cone": self.cone,
            "t": self.t,
            "rate": self.rate,
            "slope": self.slope,
            "level_residual": self.level_residual,
            "isotropy_residual": self.isotropy_residual,
            "phase_stddev": self.phase_stddev,
            "samples": self.samples,
        }


def check_smoothing(
    family: SmoothingFamily, radii: Sequence[float] | None = None, samples: int = 100, seed: int = 0
) -> SmoothingReport:
    """Sample ``L_t`` on both branches: level-set residual, isotropy, phase spread and decay slope."""
    rng = np.random.default_rng(seed)
    radii = np.geomspace(10.0, 1000.0, 7) if radii is None else np.asarray(radii, dtype=float)
    n = family.n
    neck = family.t ** (1.0 / n) if family.t > 0 else 0.0
    level = iso = 0.0
    phases = []
    for _ in range(samples):
        param = random_parameter(family.cone, rng)
        r = neck * float(rng.uniform(1.0, 4.0))
        branch = int(rng.integers(2))
        a = branch_angle(n, family.t, r, branch)
        level = max(level, abs(r**n * np.sin(n * a) - family.t) / max(1.0, abs(family.t)))
        frame = smoothing_frame(family, r, branch, param)
        iso = max(iso, isotropy_residual(None, frame))
        phases.append(phase(None, frame, tol=1e-6))
    phases = np.array(phases)
    stddev = float(np.sqrt(np.mean(np.abs(phases - phases.mean()) ** 2)))
    slope = decay_rate_fit(family, radii)
    return SmoothingReport(family.cone.id, family.t, family.rate, slope, level, iso, stddev, samples)
