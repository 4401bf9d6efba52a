"""Finite-dimensional real C*-algebras.

Two concrete families are supported:

* ``matrix``: the full algebra M_n(R) with matrix product and transpose as
  involution;
* ``componentwise``: R^k with pointwise product and trivial involution.

Elements are immutable. Everything that needs a spectrum goes through the
cyclic Jacobi eigensolver in :func:`jacobi_eigh`.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DescriptorMismatch, NotSelfAdjoint

MATRIX = "matrix"
COMPONENTWISE = "componentwise"

JACOBI_OFF_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Tolerance:
    eps: float = 1e-9

    def __post_init__(self):
        if not self.eps >= 0:
            raise ValueError(f"tolerance must be nonnegative, got {self.eps}")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class AlgebraDescriptor:
    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in (MATRIX, COMPONENTWISE):
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError(f"algebra dimension must be >= 1, got {self.dim}")
        shape = (self.dim, self.dim) if self.kind == MATRIX else (self.dim,)
        object.__setattr__(self, "_shape", shape)
        object.__setattr__(self, "_size", self.dim * self.dim if self.kind == MATRIX else self.dim)
        unit = np.eye(self.dim) if self.kind == MATRIX else np.ones(self.dim)
        unit.flags.writeable = False
        object.__setattr__(self, "_unit", unit)

    @property
    def shape(self) -> tuple[int, ...]:
        return self._shape

    @property
    def size(self) -> int:
        return self._size

    def element(self, entries) -> "AlgebraElement":
        return AlgebraElement(self, entries)

    @functools.cache
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, np.zeros(self.shape))

    @functools.cache
    def unit(self) -> "AlgebraElement":
        return AlgebraElement(self, self._unit)

    def scalar(self, c: float) -> "AlgebraElement":
        """``c`` times the unit."""
        c = float(c)
        if not math.isfinite(c):
            raise ValueError("algebra element entries must be finite")
        return _new(self, c * self._unit)

    def diag(self, values: Sequence[float]) -> "AlgebraElement":
        if self.kind == MATRIX:
            return AlgebraElement(self, np.diag(np.asarray(values, dtype=float)))
        return AlgebraElement(self, np.asarray(values, dtype=float))


def matrix_algebra(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor(MATRIX, n)


def componentwise_algebra(k: int) -> AlgebraDescriptor:
    return AlgebraDescriptor(COMPONENTWISE, k)


class AlgebraElement:
    """An immutable element of a concrete algebra.

    ``*`` is the algebra product when both operands are elements and the
    scalar action when one is a real number.
    """

    __slots__ = ("descriptor", "entries")

    def __init__(self, descriptor: AlgebraDescriptor, entries):
        arr = np.array(entries, dtype=float)
        if arr.size != descriptor.size:
            raise ValueError(
                f"{descriptor.kind} algebra of dim {descriptor.dim} needs "
                f"{descriptor.size} entries, got {arr.size}"
            )
        if arr.shape != descriptor.shape:
            arr = arr.reshape(descriptor.shape)
        # a finite sum rules out NaN/inf entries; overflow falls through to the full test
        if not math.isfinite(np.add.reduce(arr, axis=None)) and not np.isfinite(arr).all():
            raise ValueError("algebra element entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    def _check(self, other: "AlgebraElement"):
        if self.descriptor is not other.descriptor and self.descriptor != other.descriptor:
            raise DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        return _new(self.descriptor, self.entries + other.entries)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        return _new(self.descriptor, self.entries - other.entries)

    def __neg__(self):
        return _new(self.descriptor, -self.entries)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            if self.descriptor.kind == MATRIX:
                out = self.entries @ other.entries
            else:
                out = self.entries * other.entries
            return _new(self.descriptor, out)
        if isinstance(other, (int, float, np.floating, np.integer)):
            return AlgebraElement(self.descriptor, self.entries * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return AlgebraElement(self.descriptor, self.entries * float(other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.descriptor == other.descriptor and np.array_equal(
            self.entries, other.entries
        )

    def __hash__(self):
        return hash((self.descriptor, self.entries.tobytes()))

    def __repr__(self):
        return f"AlgebraElement({self.descriptor.kind}, {self.entries.tolist()})"

    def tolist(self):
        return self.entries.tolist()


_set_descriptor = AlgebraElement.descriptor.__set__
_set_entries = AlgebraElement.entries.__set__


def _new(descriptor, arr):
    # trusted constructor for results of arithmetic on valid elements
    obj = object.__new__(AlgebraElement)
    arr.flags.writeable = False
    _set_descriptor(obj, descriptor)
    _set_entries(obj, arr)
    return obj


def jacobi_eigh(a: np.ndarray, want_vectors: bool = True):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Returns ``(w, v)`` with ascending eigenvalues ``w`` and orthonormal
    eigenvector columns ``v`` (``v`` is None when not requested). Sweeps stop
    once the off-diagonal Frobenius mass is at most ``1e-12 * ||a||_F``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n) if want_vectors else None
    # work on a / max|a_ij| so tiny and huge inputs neither underflow nor overflow
    mag = float(np.abs(a).max()) if a.size else 0.0
    if mag > 0.0:
        a /= mag
    if n > 1 and mag > 0.0:
        offmask = ~np.eye(n, dtype=bool)
        scale = float(np.sqrt((a * a).sum()))
        for _ in range(JACOBI_MAX_SWEEPS):
            off = float(np.sqrt((a[offmask] ** 2).sum()))
            if off <= JACOBI_OFF_TOL * scale:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    diff = a[q, q] - a[p, p]
                    if abs(diff) > 1e150 * abs(apq):
                        t = apq / diff
                    else:
                        theta = diff / (2.0 * apq)
                        t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                    c = 1.0 / math.hypot(t, 1.0)
                    s = t * c
                    ap = a[:, p].copy()
                    aq = a[:, q].copy()
                    a[:, p] = c * ap - s * aq
                    a[:, q] = s * ap + c * aq
                    rp = a[p, :].copy()
                    rq = a[q, :].copy()
                    a[p, :] = c * rp - s * rq
                    a[q, :] = s * rp + c * rq
                    a[p, q] = a[q, p] = 0.0
                    if v is not None:
                        vp = v[:, p].copy()
                        v[:, p] = c * vp - s * v[:, q]
                        v[:, q] = s * vp + c * v[:, q]
    w = np.diag(a) * mag if mag > 0.0 else np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    if v is not None:
        v = v[:, order]
    return w, v


def adjoint(z: AlgebraElement) -> AlgebraElement:
    if z.descriptor.kind == MATRIX:
        return _new(z.descriptor, z.entries.T.copy())
    return z


def _is_diagonal(m: np.ndarray) -> bool:
    return np.count_nonzero(m) == np.count_nonzero(m.diagonal())


def _asymmetry(z: AlgebraElement) -> float:
    if z.descriptor.kind != MATRIX:
        return 0.0
    d = z.entries - z.entries.T
    if not d.any():
        return 0.0
    return operator_norm(_new(z.descriptor, d))


def is_self_adjoint(z: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> bool:
    return _asymmetry(z) <= tol.eps


def _spectrum_unchecked(h: AlgebraElement) -> list[float]:
    m = h.entries
    if h.descriptor.kind == COMPONENTWISE:
        return sorted(m.tolist())
    if _is_diagonal(m):
        return sorted(m.diagonal().tolist())
    w, _ = jacobi_eigh(0.5 * (m + m.T), want_vectors=False)
    return w.tolist()


def spectrum(h: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> list[float]:
    """Sorted spectrum of a self-adjoint element."""
    asym = _asymmetry(h)
    if asym > tol.eps:
        raise NotSelfAdjoint(f"||h - h*|| = {asym:.3e} exceeds eps = {tol.eps:.3e}")
    return _spectrum_unchecked(h)


def min_eigenvalue(h: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> float:
    return spectrum(h, tol)[0]


def _signed_min(z: AlgebraElement, tol: Tolerance) -> float:
    # smallest eigenvalue, or minus the asymmetry when z is not self-adjoint
    m = z.entries
    if z.descriptor.kind == COMPONENTWISE:
        return float(m.min())
    dg = m.diagonal()
    if np.count_nonzero(m) == np.count_nonzero(dg):
        return float(dg.min())
    asym = _asymmetry(z)
    if asym > tol.eps:
        return -asym
    return _spectrum_unchecked(z)[0]


def is_positive(z: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> bool:
    return _signed_min(z, tol) >= -tol.eps


def leq(z: AlgebraElement, w: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``z`` precedes ``w`` in the order induced by the positive cone."""
    z._check(w)
    return is_positive(w - z, tol)


def order_margin(z: AlgebraElement, w: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> float:
    """Smallest eigenvalue of ``w - z``; negative means ``z`` does not precede ``w``.

    A non-self-adjoint difference returns minus its asymmetry.
    """
    z._check(w)
    return _signed_min(w - z, tol)


def operator_norm(z: AlgebraElement) -> float:
    if z.descriptor.kind == COMPONENTWISE:
        return float(np.abs(z.entries).max())
    m = z.entries
    if _is_diagonal(m):
        return float(np.abs(np.diagonal(m)).max())
    w, _ = jacobi_eigh(m.T @ m, want_vectors=False)
    return math.sqrt(max(float(w[-1]), 0.0))


def abs_element(z: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    """The positive square root of ``z* z``."""
    if z.descriptor.kind == COMPONENTWISE:
        return _new(z.descriptor, np.abs(z.entries))
    m = z.entries
    w, v = jacobi_eigh(m.T @ m)
    root = np.sqrt(np.clip(w, 0.0, None))
    out = (v * root) @ v.T
    return _new(z.descriptor, 0.5 * (out + out.T))


def sqrt_positive(z: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    """Positive square root of a positive element."""
    if not is_positive(z, tol):
        raise ValueError("square root requires a positive element")
    if z.descriptor.kind == COMPONENTWISE:
        return _new(z.descriptor, np.sqrt(np.clip(z.entries, 0.0, None)))
    w, v = jacobi_eigh(0.5 * (z.entries + z.entries.T))
    out = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T
    return _new(z.descriptor, 0.5 * (out + out.T))


# generator sets are reused across many samples
_cached_norm = functools.lru_cache(maxsize=1024)(operator_norm)


def commutator_norm(z: AlgebraElement, g: AlgebraElement) -> float:
    z._check(g)
    if z.descriptor.kind == COMPONENTWISE:
        return 0.0
    return operator_norm(z * g - g * z)


def is_admissible_control_value(
    z: AlgebraElement,
    generators: Iterable[AlgebraElement],
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """``z`` is central (tested against ``generators``) and dominates the unit."""
    generators = list(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    for g in generators:
        z._check(g)
    if not leq(z.descriptor.unit(), z, tol):
        return False
    if z.descriptor.kind == COMPONENTWISE:
        return True
    stack = np.stack([g.entries for g in generators])
    if not (z.entries @ stack - stack @ z.entries).any():
        return True
    zn = operator_norm(z)
    return all(
        commutator_norm(z, g) <= tol.eps * (1.0 + zn * _cached_norm(g)) for g in generators
    )


def admissibility_margin(
    z: AlgebraElement, generators: Iterable[AlgebraElement], tol: Tolerance = DEFAULT_TOL
) -> float:
    """Severity of an admissibility failure; exceeds eps exactly when ``z`` is not admissible.

    The larger of the unit-dominance deficit and the scaled commutator norms.
    """
    worst = -order_margin(z.descriptor.unit(), z, tol)
    if z.descriptor.kind == MATRIX:
        zn = operator_norm(z)
        for g in generators:
            worst = max(worst, commutator_norm(z, g) / (1.0 + zn * _cached_norm(g)))
    return worst


def basis(descriptor: AlgebraDescriptor) -> list[AlgebraElement]:
    """Matrix units (or coordinate vectors) spanning the algebra."""
    out = []
    for idx in np.ndindex(*descriptor.shape):
        e = np.zeros(descriptor.shape)
        e[idx] = 1.0
        out.append(AlgebraElement(descriptor, e))
    return out


def random_element(descriptor: AlgebraDescriptor, rng: np.random.Generator, scale=1.0):
    return AlgebraElement(descriptor, rng.normal(scale=scale, size=descriptor.shape))
