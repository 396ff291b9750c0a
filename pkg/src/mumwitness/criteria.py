"""Detection criteria compared against the MUM witness."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .measurements import MUM
from .numerics import ValidationError, as_matrix
from .states import DensityMatrix
from .witness import Witness, evaluate_witness

DETECTION_MARGIN = 1e-9

#: Convention that reproduces the reference J value for the d = 3 example.
DEFAULT_J_CONVENTION = "conjugated"


@dataclass
class DetectionReport:
    criterion: str
    value: float
    threshold: float
    detected: bool
    mum_id: str | None = None
    angles: list | None = None
    extra: dict | None = None

    def to_json(self) -> dict:
        out = asdict(self)
        if out["extra"] is None:
            del out["extra"]
        return out


def _matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)


def j_index(rho, mum: MUM, convention: str = DEFAULT_J_CONVENTION) -> float:
    """``J(rho) = sum_b sum_n Tr((A_n^b (x) P_n^b) rho) / Tr(rho)``.

    ``A = conj(P)`` for ``convention="conjugated"``, ``A = P`` for
    ``"plain"``. Separable states satisfy ``J <= 1 + kappa``. The division by
    ``Tr(rho)`` makes the bound meaningful for rounded states whose trace is
    not exactly one.
    """
    if convention not in ("plain", "conjugated"):
        raise ValueError(f"unknown convention {convention!r}")
    if mum.L != mum.d + 1:
        raise ValidationError(f"J needs a complete set of d+1 measurements, got L={mum.L}")
    d = mum.d
    m = _matrix(rho)
    if m.shape != (d * d, d * d):
        raise ValidationError(f"state has shape {m.shape}, expected {(d * d, d * d)}")
    P = mum.elements
    A = P.conj() if convention == "conjugated" else P
    r4 = m.reshape(d, d, d, d)
    # Tr((A (x) P) rho) = sum A_ij P_kl rho_(jl),(ik)
    total = np.einsum("bnij,bnkl,jlik->", A, P, r4)
    return float(total.real / np.trace(m).real)


def j_report(rho, mum: MUM, convention: str = DEFAULT_J_CONVENTION) -> DetectionReport:
    value = j_index(rho, mum, convention)
    threshold = 1 + mum.kappa
    return DetectionReport(
        criterion="J",
        value=value,
        threshold=threshold,
        detected=value > threshold + DETECTION_MARGIN,
        mum_id=mum.name,
        extra={"convention": convention, "margin": value - threshold},
    )


def isotropic_witness_value(d: int, alpha: float, kappa: float) -> float:
    """Closed form of ``Tr(W rho_iso)`` for ``L = d + 1`` and identity rotations."""
    if not 0 <= alpha < 1:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    if not 1 / d < kappa <= 1:
        raise ValueError(f"kappa must lie in (1/d, 1], got {kappa}")
    return (1 + kappa) - (d + 1) * (alpha * kappa + (1 - alpha) / d)


def coincidence_sum(phi, mum: MUM) -> tuple[float, float]:
    """Index of coincidence ``sum_a sum_l <phi|P^a_l|phi>^2`` and its upper bound
    ``(L - 1)/d + (1 - kappa + kappa (d - 1))/(d - 1)``."""
    v = np.asarray(phi, dtype=complex).ravel()
    if v.shape != (mum.d,):
        raise ValidationError(f"state vector must have length {mum.d}")
    if abs(np.linalg.norm(v) - 1) > 1e-10:
        raise ValidationError("state vector is not normalized")
    probs = np.einsum("i,alij,j->al", v.conj(), mum.elements, v).real
    d, L, k = mum.d, mum.L, mum.kappa
    bound = (L - 1) / d + (1 - k + k * (d - 1)) / (d - 1)
    return float(np.sum(probs**2)), float(bound)


def detect(rho, w: Witness, margin: float = DETECTION_MARGIN) -> DetectionReport:
    """Witness test: entangled iff ``Tr(W rho) < -margin``."""
    value = evaluate_witness(w, rho)
    return DetectionReport(
        criterion="witness",
        value=value,
        threshold=0.0,
        detected=value < -margin,
        mum_id=w.mum_id,
        angles=None if w.angles is None else [str(a) for a in w.angles],
    )
