"""Dense complex-matrix kernel shared by every other module.

Matrices are plain :class:`numpy.ndarray` objects. "Hermitian operator" in
this package means a square complex array that passed
:func:`validate_hermitian` (or was built Hermitian by construction).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg


class ValidationError(ValueError):
    """An input matrix, state or measurement failed a structural check."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances used across the package.

    ``fixture_tol`` is the regime for matrices transcribed at three decimals;
    the others govern exact constructions.
    """

    herm_tol: float = 1e-10
    psd_tol: float = 1e-9
    ortho_tol: float = 1e-10
    fixture_tol: float = 2e-3

    def __post_init__(self):
        for name in ("herm_tol", "psd_tol", "ortho_tol", "fixture_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOLERANCES = ToleranceConfig()

#: Environment variable selecting the default tolerance profile.
PROFILE_ENV = "MUMWITNESS_TOLERANCE_PROFILE"


def tolerance_profile(name: str | None = None) -> ToleranceConfig:
    """Return the tolerance set for ``"strict"`` or ``"fixture"``.

    The fixture profile widens every check to ``fixture_tol`` so rounded
    transcriptions can be validated with the same code paths. With no
    argument the profile is read from ``$MUMWITNESS_TOLERANCE_PROFILE``.
    """
    if name is None:
        name = os.environ.get(PROFILE_ENV, "strict")
    if name == "strict":
        return DEFAULT_TOLERANCES
    if name == "fixture":
        f = DEFAULT_TOLERANCES.fixture_tol
        return ToleranceConfig(herm_tol=f, psd_tol=f, ortho_tol=f, fixture_tol=f)
    raise ValueError(f"unknown tolerance profile {name!r} (expected 'strict' or 'fixture')")


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-D complex array with at least one row and column."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValidationError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry ``(i*rb + k, j*cb + l)`` is ``a[i, j] * b[k, l]``."""
    return np.kron(as_matrix(a), as_matrix(b))


def hs_inner(a, b, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Hilbert-Schmidt pairing ``Tr(a b)`` of two Hermitian operators.

    Raises :class:`ValidationError` on a dimension mismatch or when the raw
    trace has an imaginary part above ``cfg.herm_tol`` (a sign that one of
    the inputs is not Hermitian).
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValidationError(f"dimension mismatch: {a.shape} vs {b.shape}")
    # Tr(ab) = sum_ij a_ij b_ji
    tr = np.sum(a * b.T)
    if abs(tr.imag) > cfg.herm_tol:
        raise ValidationError(f"Tr(ab) has imaginary part {tr.imag:.3g}; inputs are not Hermitian")
    return float(tr.real)


def symmetrize(m) -> np.ndarray:
    m = as_matrix(m)
    return (m + m.conj().T) / 2


def hermitian_deviation(m) -> float:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValidationError(f"matrix is not square: {m.shape}")
    return float(np.max(np.abs(m - m.conj().T)))


def eigvalsh(a) -> np.ndarray:
    """Ascending eigenvalues of the Hermitian part of ``a``."""
    a = symmetrize(a)
    try:
        return scipy.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ArithmeticError(f"Hermitian eigensolver did not converge: {exc}") from exc


def min_eigenvalue(a) -> float:
    """Smallest eigenvalue of ``(a + a^dagger)/2``."""
    return float(eigvalsh(a)[0])


def validate_hermitian(
    m, cfg: ToleranceConfig = DEFAULT_TOLERANCES, fixture: bool = False
) -> tuple[np.ndarray, float]:
    """Check that ``m`` is Hermitian and return ``((m + m^dagger)/2, deviation)``.

    ``deviation`` is ``max|m - m^dagger|`` before symmetrization. It may be at
    most ``100 * cfg.herm_tol``; with ``fixture=True`` the limit is
    ``cfg.fixture_tol`` instead, which admits three-decimal transcriptions.
    """
    m = as_matrix(m)
    dev = hermitian_deviation(m)
    limit = cfg.fixture_tol if fixture else 100 * cfg.herm_tol
    if dev > limit:
        raise ValidationError(f"matrix deviates from Hermitian by {dev:.3g} (limit {limit:.3g})")
    return symmetrize(m), dev


def partial_trace(rho, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Reduce a bipartite operator on ``dims[0] x dims[1]`` to factor ``keep`` (0 or 1)."""
    da, db = dims
    r = as_matrix(rho).reshape(da, db, da, db)
    if keep == 0:
        return np.einsum("ijkj->ik", r)
    if keep == 1:
        return np.einsum("ijil->jl", r)
    raise ValueError("keep must be 0 or 1")


# -- JSON -------------------------------------------------------------------


def matrix_to_json(m) -> dict:
    m = as_matrix(m)
    out = {"re": m.real.tolist(), "im": m.imag.tolist()}
    if m.shape[0] == m.shape[1]:
        out = {"dim": m.shape[0], **out}
    else:
        out = {"rows": m.shape[0], "cols": m.shape[1], **out}
    return out


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        m = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    except KeyError as exc:
        raise ValidationError(f"matrix JSON is missing field {exc}") from None
    m = as_matrix(m)
    dim = obj.get("dim")
    if dim is not None and m.shape != (dim, dim):
        raise ValidationError(f"matrix JSON declares dim={dim} but holds shape {m.shape}")
    return m


def vector_to_json(v) -> dict:
    v = np.asarray(v, dtype=complex)
    return {"re": v.real.tolist(), "im": v.imag.tolist()}


def vector_from_json(obj: dict) -> np.ndarray:
    return np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
