"""Proper rotations of R^d that fix the axis (1, ..., 1)/sqrt(d)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .numerics import DEFAULT_TOLERANCES, ValidationError

AXIS_D3 = np.ones(3) / np.sqrt(3)


def rodrigues(axis, theta: float) -> np.ndarray:
    """Rotation by ``theta`` about the unit vector ``axis`` (right-hand rule)."""
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,):
        raise ValueError("axis must be a 3-vector")
    if abs(np.linalg.norm(n) - 1) > 1e-12:
        raise ValidationError(f"axis must be a unit vector, |n| = {np.linalg.norm(n)!r}")
    c, s = math.cos(theta), math.sin(theta)
    cross = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return c * np.eye(3) + (1 - c) * np.outer(n, n) + s * cross


def circulant_coefficients(theta: float) -> tuple[float, float, float]:
    c1 = 2 / 3 * math.cos(theta) + 1 / 3
    c2 = 2 / 3 * math.cos(theta - 2 * math.pi / 3) + 1 / 3
    c3 = 2 / 3 * math.cos(theta + 2 * math.pi / 3) + 1 / 3
    return c1, c2, c3


def axis_circulant_d3(theta: float) -> np.ndarray:
    """Circulant ``[[c1, c2, c3], [c3, c1, c2], [c2, c3, c1]]``.

    Equal to ``rodrigues(AXIS_D3, -theta)``; the witness family uses
    :func:`axis_rotation_d3`, its transpose.
    """
    c1, c2, c3 = circulant_coefficients(theta)
    return np.array([[c1, c2, c3], [c3, c1, c2], [c2, c3, c1]])


def axis_rotation_d3(theta: float) -> np.ndarray:
    """Canonical d = 3 witness rotation: ``rodrigues((1,1,1)/sqrt3, theta)``."""
    return axis_circulant_d3(theta).T


def identity_rotations(d: int, L: int) -> "RotationSet":
    if L < 1:
        raise ValueError("L must be >= 1")
    return RotationSet(d=d, rotations=np.broadcast_to(np.eye(d), (L, d, d)).copy())


def hyperplane_basis(d: int) -> np.ndarray:
    """Orthonormal basis (rows) of the complement of (1,...,1), from
    Gram-Schmidt on ``e_k - e_{k+1}``."""
    vecs = np.zeros((d - 1, d))
    for k in range(d - 1):
        vecs[k, k], vecs[k, k + 1] = 1.0, -1.0
    out = np.zeros_like(vecs)
    for k, v in enumerate(vecs):
        w = v - out[:k].T @ (out[:k] @ v)
        out[k] = w / np.linalg.norm(w)
    return out


def planar_axis_rotation(d: int, theta: float, plane: tuple[int, int]) -> np.ndarray:
    """Rotate by ``theta`` in ``span(u_i, u_j)`` of the hyperplane basis (1-based ``i < j <= d-1``)."""
    if d < 3:
        raise ValueError("planar rotations need d >= 3")
    i, j = plane
    if not (1 <= i < j <= d - 1):
        raise ValueError(f"plane indices must satisfy 1 <= i < j <= {d - 1}, got {plane}")
    u = hyperplane_basis(d)
    ui, uj = u[i - 1], u[j - 1]
    c, s = math.cos(theta), math.sin(theta)
    return (
        np.eye(d)
        + (c - 1) * (np.outer(ui, ui) + np.outer(uj, uj))
        + s * (np.outer(uj, ui) - np.outer(ui, uj))
    )


def random_axis_rotation(d: int, rng: np.random.Generator) -> np.ndarray:
    """A random proper rotation fixing the axis (product of planar rotations)."""
    o = np.eye(d)
    if d < 3:
        return o
    for i in range(1, d):
        for j in range(i + 1, d):
            o = planar_axis_rotation(d, rng.uniform(-np.pi, np.pi), (i, j)) @ o
    return o


@dataclass
class RotationReport:
    orthogonality: float
    axis_fixing: float
    determinant: float
    passed: bool


def verify_rotation(o, d: int | None = None, tol: float = DEFAULT_TOLERANCES.ortho_tol) -> RotationReport:
    o = np.asarray(o, dtype=float)
    if o.ndim != 2 or o.shape[0] != o.shape[1]:
        raise ValueError("rotation must be a square matrix")
    d = o.shape[0] if d is None else d
    if o.shape != (d, d):
        raise ValueError(f"expected a {d}x{d} matrix, got {o.shape}")
    n = np.ones(d) / np.sqrt(d)
    ortho = float(np.max(np.abs(o.T @ o - np.eye(d))))
    axis = float(np.max(np.abs(o @ n - n)))
    det = float(np.linalg.det(o))
    passed = ortho <= tol and axis <= tol and abs(det - 1) <= 1e-9
    return RotationReport(ortho, axis, det, passed)


@dataclass(frozen=True)
class RotationSet:
    d: int
    rotations: np.ndarray = field(repr=False)
    angles: tuple | None = None

    def __post_init__(self):
        rots = np.asarray(self.rotations, dtype=float)
        if rots.ndim != 3 or rots.shape[1:] != (self.d, self.d):
            raise ValidationError(f"rotations must have shape (L, {self.d}, {self.d})")
        for k, o in enumerate(rots):
            rep = verify_rotation(o, self.d, tol=1e-9)
            if not rep.passed:
                raise ValidationError(f"rotation {k + 1} is not a proper axis-fixing rotation: {rep}")
        object.__setattr__(self, "rotations", rots)

    @property
    def L(self) -> int:
        return self.rotations.shape[0]

    @classmethod
    def from_angles_d3(cls, angles) -> "RotationSet":
        """One :func:`axis_rotation_d3` per angle (radians, or strings like ``"pi/3"``)."""
        thetas = [parse_angle(a) if isinstance(a, str) else float(a) for a in angles]
        return cls(d=3, rotations=np.array([axis_rotation_d3(t) for t in thetas]), angles=tuple(angles))

    @classmethod
    def random(cls, d: int, L: int, seed: int) -> "RotationSet":
        rng = np.random.default_rng(seed)
        return cls(d=d, rotations=np.array([random_axis_rotation(d, rng) for _ in range(L)]))

    def to_json(self) -> dict:
        return {"d": self.d, "rotations": self.rotations.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "RotationSet":
        return cls(d=obj["d"], rotations=np.array(obj["rotations"], dtype=float))


def parse_angle(text: str) -> float:
    """Parse ``"pi/3"``, ``"-2pi/3"``, ``"2*pi/3"``, ``"0"`` or a plain float.

    Multiples of pi are handled as exact fractions before the single final
    multiplication by ``math.pi``.
    """
    s = text.strip().lower().replace(" ", "").replace("*", "").replace("π", "pi")
    if "pi" not in s:
        return float(s)
    num, _, den = s.partition("pi")
    if num in ("", "+"):
        coef = Fraction(1)
    elif num == "-":
        coef = Fraction(-1)
    else:
        coef = Fraction(num)
    if den:
        if not den.startswith("/"):
            raise ValueError(f"cannot parse angle {text!r}")
        coef /= Fraction(den[1:])
    return float(coef) * math.pi if coef.denominator == 1 else coef.numerator * math.pi / coef.denominator
