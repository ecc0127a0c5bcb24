"""Numerical symplectic and contact geometry in C^n.

Tangent vectors are real interleaved 2n-vectors (see :mod:`slaglab.cxmat`)
and points are complex n-vectors.  The forms used throughout:

* ``omega(u, v) = Im <u, v>`` with ``<u, v> = sum conj(u_k) v_k``, i.e.
  ``sum dx_k ^ dy_k``;
* the Liouville form ``lambda = 1/2 sum (x_k dy_k - y_k dx_k)`` with
  ``d lambda = omega``;
* the contact form on the unit sphere ``sum (x_k dy_k - y_k dx_k)``, which
  is ``2 lambda``.  Both conventions are exposed under separate names;
* ``Omega = dz_1 ^ ... ^ dz_n``, evaluated on n vectors as a determinant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cxmat import complex_determinant, orthonormalize, to_complex, to_real
from .errors import DimensionMismatch, NotClosed, NotLagrangian, NotOnSphere, RefinementExhausted

TOL_LAGRANGIAN = 1e-8


# -- forms ------------------------------------------------------------------

def _cplx(v) -> np.ndarray:
    v = np.asarray(v)
    return v.astype(complex) if np.iscomplexobj(v) else to_complex(v)


def omega(u, v) -> float:
    """Standard symplectic form on real 2n-vectors (or complex n-vectors)."""
    return float(np.imag(np.vdot(_cplx(u), _cplx(v))))


def liouville(point, v) -> float:
    """``lambda(point)(v)`` with ``lambda = 1/2 sum (x dy - y dx)``."""
    return 0.5 * float(np.imag(np.vdot(_cplx(point), _cplx(v))))


def contact_form(point, v) -> float:
    """``sum (x dy - y dx)`` evaluated at ``point`` on ``v``; twice :func:`liouville`."""
    return float(np.imag(np.vdot(_cplx(point), _cplx(v))))


def holomorphic_volume(vectors) -> complex:
    """``Omega(u_1, ..., u_n)`` for n real 2n-vectors."""
    return complex_determinant(vectors)


def isotropy_residual(point, frame) -> float:
    """``max_{i<j} |omega(v_i, v_j)|`` over the frame vectors."""
    Z = to_complex(np.array(frame, dtype=float, ndmin=2))
    if Z.shape[0] < 2:
        return 0.0
    gram = np.imag(Z.conj() @ Z.T)
    return float(np.max(np.abs(np.triu(gram, 1))))


def phase(point, frame, tol: float = TOL_LAGRANGIAN) -> complex:
    """Phase ``e^{i theta}`` of the oriented Lagrangian plane spanned by ``frame``.

    The frame is orthonormalized (orientation preserving) first, so only
    the oriented plane matters.
    """
    F = np.array(frame, dtype=float, ndmin=2)
    if F.shape[1] != 2 * F.shape[0]:
        raise DimensionMismatch("phase needs n vectors in R^(2n)")
    Q = orthonormalize(F)
    if isotropy_residual(point, Q) > tol:
        raise NotLagrangian(f"frame is not Lagrangian (isotropy residual {isotropy_residual(point, Q):.3g})")
    return complex_determinant(Q)


def legendrian_residual(point, frame, tol: float = 1e-8) -> float:
    """``max_i |contact_form(point)(v_i)|`` for a point of the unit sphere."""
    p = _cplx(point)
    if abs(np.linalg.norm(p) - 1.0) > tol:
        raise NotOnSphere(f"|point| = {np.linalg.norm(p):.12g}, expected 1")
    Z = to_complex(np.array(frame, dtype=float, ndmin=2))
    return float(np.max(np.abs(np.imag(Z @ p.conj()))))


# -- loops ------------------------------------------------------------------

@dataclass(frozen=True)
class ParametricLoop:
    """A loop ``theta -> point`` on ``[0, 2 pi]``, optionally with a Lagrangian frame.

    ``frame(theta)`` should return n real 2n-vectors spanning the
    Lagrangian plane at ``point(theta)``.
    """

    point: Callable[[float], np.ndarray]
    frame: Callable[[float], np.ndarray] | None = None

    def reversed(self) -> "ParametricLoop":
        frame = None if self.frame is None else (lambda t: self.frame(2 * np.pi - t))
        return ParametricLoop(lambda t: self.point(2 * np.pi - t), frame)

    def scaled(self, r: float) -> "ParametricLoop":
        return ParametricLoop(lambda t: r * np.asarray(self.point(t)), self.frame)

    def sample(self, m: int) -> "LoopTrace":
        thetas = np.linspace(0.0, 2 * np.pi, m + 1)
        points = np.array([self.point(t) for t in thetas], dtype=complex)
        points[-1] = points[0]
        frames = None
        if self.frame is not None:
            frames = np.array([self.frame(t) for t in thetas], dtype=float)
            frames[-1] = frames[0]
        return LoopTrace(points, frames)


@dataclass(frozen=True)
class LoopTrace:
    """Samples of a closed loop on the uniform grid ``2 pi k / m``, ``k = 0..m``.

    ``points`` has shape ``(m + 1, n)`` and repeats its first sample at the
    end; ``frames`` (optional) has shape ``(m + 1, n, 2n)``.
    """

    points: np.ndarray
    frames: np.ndarray | None = None
    tol: float = 1e-9

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        if pts.ndim != 2 or pts.shape[0] < 3:
            raise DimensionMismatch("a loop needs at least three samples of shape (m + 1, n)")
        scale = max(1.0, float(np.max(np.abs(pts))))
        if np.max(np.abs(pts[0] - pts[-1])) > self.tol * scale:
            raise NotClosed("first and last samples differ")
        object.__setattr__(self, "points", pts)
        if self.frames is not None:
            frames = np.asarray(self.frames, dtype=float)
            n = pts.shape[1]
            if frames.shape != (pts.shape[0], n, 2 * n):
                raise DimensionMismatch(f"frames must have shape {(pts.shape[0], n, 2 * n)}, got {frames.shape}")
            object.__setattr__(self, "frames", frames)

    @property
    def m(self) -> int:
        return self.points.shape[0] - 1

    def reversed(self) -> "LoopTrace":
        frames = None if self.frames is None else self.frames[::-1]
        return LoopTrace(self.points[::-1], frames, self.tol)

    def every_other(self) -> "LoopTrace":
        frames = None if self.frames is None else self.frames[::2]
        return LoopTrace(self.points[::2], frames, self.tol)


@dataclass(frozen=True)
class LiouvilleIntegral:
    value: float
    error: float
    exact: bool
    samples: int

    def to_json(self) -> dict:
        return {"value": self.value, "error": self.error, "exact": self.exact, "samples": self.samples}


def _polygon_liouville(points: np.ndarray) -> float:
    # lambda summed over chords; for a smooth periodic loop the error expands in even powers of h
    p = points[:-1]
    q = points[1:]
    return 0.5 * float(np.sum(np.imag(np.sum(p.conj() * q, axis=1))))


def chord_rule(loop, m: int) -> float:
    """Second-order chord (polygon) rule for ``\\oint lambda`` with ``m`` chords."""
    param = loop if isinstance(loop, ParametricLoop) else ParametricLoop(loop)
    return _polygon_liouville(param.sample(m).points)


def loop_liouville_integral(loop, m: int = 1024, atol: float = 1e-10) -> LiouvilleIntegral:
    """``\\oint lambda`` by Richardson extrapolation of the chord rule.

    ``loop`` is a :class:`LoopTrace`, a :class:`ParametricLoop` or a
    callable ``theta -> point``; ``m`` (a multiple of 4, at least 64) is
    the number of chords.  The chord sums on ``m``, ``m/2`` and ``m/4``
    chords are combined by two Richardson steps; the error estimate is the
    size of the last correction.  The loop counts as exact when ``|value|``
    is below ten times the error estimate (or ``atol`` times the squared
    size of the loop, to absorb round-off).
    """
    if isinstance(loop, LoopTrace):
        trace = loop
    else:
        param = loop if isinstance(loop, ParametricLoop) else ParametricLoop(loop)
        trace = param.sample(m)
    if trace.m < 64 or trace.m % 4:
        raise ValueError(f"need a chord count that is a multiple of 4 and at least 64, got {trace.m}")
    half = trace.every_other()
    s1, s2, s4 = (_polygon_liouville(t.points) for t in (trace, half, half.every_other()))
    r_fine = s1 + (s1 - s2) / 3.0
    r_coarse = s2 + (s2 - s4) / 3.0
    value = r_fine + (r_fine - r_coarse) / 15.0
    error = abs(r_fine - r_coarse) / 15.0
    scale = float(np.max(np.abs(trace.points))) ** 2
    exact = abs(value) <= max(10.0 * error, atol * scale)
    return LiouvilleIntegral(value, error, bool(exact), trace.m)


def _phases(trace: LoopTrace) -> np.ndarray:
    if trace.frames is None:
        raise DimensionMismatch("the loop has no frames")
    return np.array([phase(p, F) for p, F in zip(trace.points, trace.frames)])


def _winding(phases: np.ndarray) -> tuple[float, float]:
    steps = np.angle(phases[1:] / phases[:-1])
    return float(np.sum(steps)) / (2 * np.pi), float(np.max(np.abs(steps)))


def maslov_index(loop, m: int = 256, max_samples: int = 1 << 16) -> int:
    """Winding number of the phase along a loop of Lagrangian planes.

    A :class:`ParametricLoop` is resampled with doubled ``m`` until every
    consecutive phase step is below ``pi / 2``; a fixed :class:`LoopTrace`
    must already satisfy that.
    """
    if isinstance(loop, LoopTrace):
        total, jump = _winding(_phases(loop))
        if jump >= np.pi / 2:
            raise RefinementExhausted(f"phase jumps by {jump:.3f} between samples; resample the loop")
        return int(round(total))
    if loop.frame is None:
        raise DimensionMismatch("the loop has no frames")
    while True:
        total, jump = _winding(_phases(loop.sample(m)))
        if jump < np.pi / 2:
            return int(round(total))
        m *= 2
        if m > max_samples:
            raise RefinementExhausted(f"phase still jumps by {jump:.3f} at {m // 2} samples")


# -- Hamiltonian functions ---------------------------------------------------

@dataclass(frozen=True)
class HermQuad:
    """``f(z) = c + sum (b_j z_j + conj) + sum a_jk z_j conj(z_k)``, ``a`` Hermitian and traceless."""

    c: float
    b: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.b, dtype=complex).reshape(-1)
        a = np.asarray(self.a, dtype=complex)
        n = b.shape[0]
        if a.shape != (n, n):
            raise DimensionMismatch(f"a must be {n}x{n}")
        scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
        if np.max(np.abs(a - a.conj().T), initial=0.0) > 1e-12 * scale:
            raise ValueError("a must be Hermitian")
        if abs(np.trace(a)) > 1e-12 * scale:
            raise ValueError("a must be traceless")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", float(self.c))

    @property
    def n(self) -> int:
        return self.b.shape[0]

    @classmethod
    def from_linear_field(cls, X) -> "HermQuad":
        """Moment function of the linear field ``z -> X z`` for ``X`` in su(n), vanishing at 0."""
        X = np.asarray(X, dtype=complex)
        return cls(0.0, np.zeros(X.shape[0], dtype=complex), -0.5j * X.conj())

    @classmethod
    def from_translation(cls, v) -> "HermQuad":
        """Moment function of the constant field ``v``, vanishing at 0."""
        v = np.asarray(v, dtype=complex)
        return cls(0.0, -0.5j * v.conj(), np.zeros((v.shape[0], v.shape[0]), dtype=complex))

    def __call__(self, z) -> float:
        z = np.asarray(z, dtype=complex)
        return float(self.c + 2 * np.real(self.b @ z) + np.real(z @ self.a @ z.conj()))

    def gradient(self, z) -> np.ndarray:
        """Gradient as a complex vector: ``df(v) = Re <grad, v>``."""
        z = np.asarray(z, dtype=complex)
        return 2 * (self.b.conj() + self.a.conj() @ z)

    def field(self, z) -> np.ndarray:
        """Hamiltonian field ``X_f = -J grad f`` as a complex vector."""
        return -1j * self.gradient(z)


def _numeric_field(f: Callable, z: np.ndarray, step: float = 1e-5) -> np.ndarray:
    x = to_real(z)
    grad = np.empty_like(x)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = step
        grad[k] = (f(to_complex(x + e)) - f(to_complex(x - e))) / (2 * step)
    return -1j * to_complex(grad)


def _field_of(f) -> Callable[[np.ndarray], np.ndarray]:
    if hasattr(f, "field"):
        return f.field
    return lambda z: _numeric_field(f, z)


def hamiltonian_field(f, z) -> np.ndarray:
    """``X_f = -J grad f`` at ``z`` as a real 2n-vector; ``df = omega(X_f, .)``.

    ``f`` is a :class:`HermQuad` (closed-form gradient) or any smooth
    callable on complex vectors (central-difference gradient).
    """
    z = np.asarray(z, dtype=complex)
    return to_real(_field_of(f)(z))


def hermquad_basis(n: int) -> list[HermQuad]:
    """Basis of the ``n(n + 2)`` harmonic Hermitian quadratics on C^n.

    Order: the constant, the ``2n`` moment functions of translations and
    the ``n^2 - 1`` moment functions of an su(n) basis.
    """
    zero_b = np.zeros(n, dtype=complex)
    zero_a = np.zeros((n, n), dtype=complex)
    basis = [HermQuad(1.0, zero_b, zero_a)]
    for j in range(n):
        for unit in (1.0, 1j):
            v = np.zeros(n, dtype=complex)
            v[j] = unit
            basis.append(HermQuad.from_translation(v))
    basis.extend(HermQuad.from_linear_field(X) for X in su_basis(n))
    return basis


def su_basis(n: int) -> list[np.ndarray]:
    """Basis of su(n): ``i(E_jj - E_nn)``, ``E_jk - E_kj`` and ``i(E_jk + E_kj)``."""
    out = []
    for j in range(n - 1):
        X = np.zeros((n, n), dtype=complex)
        X[j, j], X[n - 1, n - 1] = 1j, -1j
        out.append(X)
    for j, k in itertools.combinations(range(n), 2):
        X = np.zeros((n, n), dtype=complex)
        X[j, k], X[k, j] = 1, -1
        out.append(X)
        Y = np.zeros((n, n), dtype=complex)
        Y[j, k] = Y[k, j] = 1j
        out.append(Y)
    return out


def random_hermquad(n: int, rng: np.random.Generator) -> HermQuad:
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    a = (A + A.conj().T) / 2
    a -= np.trace(a).real / n * np.eye(n)
    b = rng.normal(size=n) + 1j * rng.normal(size=n)
    return HermQuad(float(rng.normal()), b, a)


# -- the harmonicity condition -------------------------------------------------

def _eta(field: Callable, z: np.ndarray, vectors: np.ndarray) -> float:
    """``(iota_{X_f} Im Omega)(vectors)`` for n - 1 real vectors."""
    X = to_real(field(z))
    return float(np.imag(complex_determinant(np.vstack([X[None, :], vectors]))))


def fu_condition_form(f, z, h: float = 1e-3) -> np.ndarray:
    """Central-difference values of ``d(iota_{X_f} Im Omega)`` at ``z``.

    One entry per n-element subset of the real coordinate basis, in
    ``itertools.combinations`` order.  Uses
    ``d eta(u_1..u_n) = sum_i (-1)^(i+1) D_{u_i} eta(u_1..^u_i..u_n)`` on
    constant fields, for which the bracket terms vanish.
    """
    z = np.asarray(z, dtype=complex)
    n = z.shape[0]
    field = _field_of(f)
    basis = np.eye(2 * n)
    x0 = to_real(z)
    values = []
    for combo in itertools.combinations(range(2 * n), n):
        total = 0.0
        for i, k in enumerate(combo):
            rest = basis[[c for c in combo if c != k]]
            e = basis[k] * h
            plus = _eta(field, to_complex(x0 + e), rest)
            minus = _eta(field, to_complex(x0 - e), rest)
            total += (-1) ** i * (plus - minus) / (2 * h)
        values.append(total)
    return np.array(values)


def fu_condition_residual(f, z, h: float = 1e-3) -> float:
    """Largest entry of :func:`fu_condition_form`.

    Zero up to round-off exactly when ``f`` is a harmonic Hermitian
    quadratic (their fields are affine, so the differences are exact);
    stays away from zero otherwise.
    """
    return float(np.max(np.abs(fu_condition_form(f, z, h))))


# -- moment conditions on closed (n-1)-manifolds -------------------------------

@dataclass(frozen=True)
class SurfaceSample:
    """Quadrature data for a closed oriented (n - 1)-manifold in C^n.

    ``frames[k]`` holds the partial derivatives of a parametrization at
    ``points[k]`` (in orientation order) and ``weights[k]`` the parameter
    cell volume, so ``sum_k weights[k] * form(frames[k])`` integrates a
    form.
    """

    points: np.ndarray
    frames: np.ndarray
    weights: np.ndarray


def _values_batch(f, X: np.ndarray) -> np.ndarray:
    if isinstance(f, HermQuad):
        return f.c + 2 * np.real(X @ f.b) + np.real(np.einsum("kj,jl,kl->k", X, f.a, X.conj()))
    return np.array([f(x) for x in X])


def _fields_batch(f, X: np.ndarray) -> np.ndarray:
    if isinstance(f, HermQuad):
        return -2j * (f.b.conj()[None, :] + X @ f.a.T.conj())
    field = _field_of(f)
    return np.array([field(x) for x in X])


def _det_columns(*cols) -> np.ndarray:
    return np.linalg.det(np.stack(cols, axis=-1))


def _omega_batch(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    return np.imag(np.sum(U.conj() * V, axis=-1))


def sl_moment_residuals(sampler, basis: Sequence | None = None, nodes: int = 8) -> np.ndarray:
    """Moment integrals of an isotropic closed (n - 1)-manifold, one per basis function.

    For a harmonic Hermitian quadratic ``f`` the n-form
    ``sigma_f = f Im(Omega) + omega ^ theta_f``, with ``theta_f`` the radial
    primitive of the closed form ``iota_{X_f} Im(Omega)``, is closed, and
    its radial primitive ``alpha_f`` satisfies ``d alpha_f = sigma_f``.
    The residual is ``integral over Sigma of alpha_f``, evaluated as the
    integral of ``sigma_f`` over the cone from the origin to Sigma.  Any
    Lagrangian filling ``L`` gives the same value ``integral over L of
    f Im(Omega)``, so every residual vanishes when Sigma bounds a special
    Lagrangian.

    ``sampler`` is a :class:`SurfaceSample` or a zero-argument callable
    returning one; the default basis is :func:`hermquad_basis`.  The radial
    integrals use Gauss-Legendre rules with ``nodes`` points, exact for
    the polynomial integrands that quadratic ``f`` produce.
    """
    sample = sampler() if callable(sampler) else sampler
    P = np.asarray(sample.points, dtype=complex)
    K, n = P.shape
    F = to_complex(np.asarray(sample.frames, dtype=float))  # (K, n - 1, n)
    weights = np.asarray(sample.weights, dtype=float)
    basis = hermquad_basis(n) if basis is None else list(basis)
    g, gw = np.polynomial.legendre.leggauss(nodes)
    g, gw = (g + 1) / 2, gw / 2
    pairs = list(itertools.combinations(range(n), 2))

    out = np.zeros(len(basis))
    for j, f in enumerate(basis):
        total = np.zeros(K)
        for t, wt in zip(g, gw):
            X = t * P
            W = [P] + [t * F[:, i] for i in range(n - 1)]
            integrand = _values_batch(f, X) * np.imag(_det_columns(*W))
            for a, b in pairs:
                rest = [W[i] for i in range(n) if i not in (a, b)]
                theta = np.zeros(K)
                for s, ws in zip(g, gw):
                    theta += ws * s ** (n - 2) * np.imag(_det_columns(_fields_batch(f, s * X), X, *rest))
                integrand += (-1) ** (a + b + 1) * _omega_batch(W[a], W[b]) * theta
            total += wt * integrand
        out[j] = float(np.sum(weights * total))
    return out


def clifford_torus_sample(n: int = 3, grid: int = 24, shift=None, rotation: float = 0.0) -> SurfaceSample:
    """The link ``(e^{i t_1}, ..., e^{i t_n}) / sqrt(n)``, ``sum t = 0``, on a periodic grid.

    ``shift`` translates the torus and ``rotation`` multiplies it by
    ``e^{i rotation}``; both are for producing comparison surfaces.
    """
    h = 2 * np.pi / grid
    shift = np.zeros(n, dtype=complex) if shift is None else np.asarray(shift, dtype=complex)
    rot = np.exp(1j * rotation)
    points, frames = [], []
    for idx in itertools.product(range(grid), repeat=n - 1):
        t = np.array(idx, dtype=float) * h
        theta = np.append(t, -t.sum())
        z = np.exp(1j * theta) / np.sqrt(n)
        tangents = []
        for j in range(n - 1):
            v = np.zeros(n, dtype=complex)
            v[j] = 1j * z[j]
            v[n - 1] = -1j * z[n - 1]
            tangents.append(to_real(rot * v))
        points.append(rot * z + shift)
        frames.append(tangents)
    weights = np.full(len(points), h ** (n - 1))
    return SurfaceSample(np.array(points), np.array(frames), weights)
