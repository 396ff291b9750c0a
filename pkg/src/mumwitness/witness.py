"""The MUM positive map and the entanglement witnesses built from it."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import data
from .measurements import MUM
from .numerics import DEFAULT_TOLERANCES, ValidationError, as_matrix, matrix_from_json, matrix_to_json, min_eigenvalue
from .rotations import RotationSet
from .states import DensityMatrix


@dataclass(frozen=True)
class Witness:
    d: int
    L: int
    kappa: float
    matrix: np.ndarray = field(repr=False)
    route: str = "direct"
    mum_id: str | None = None
    angles: tuple | None = None

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def to_json(self) -> dict:
        return {
            **matrix_to_json(self.matrix),
            "d": self.d,
            "L": self.L,
            "kappa": self.kappa,
            "route": self.route,
            "mum_id": self.mum_id,
            "angles": None if self.angles is None else [str(a) for a in self.angles],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Witness":
        m = matrix_from_json(obj)
        d = obj["d"]
        if m.shape != (d * d, d * d):
            raise ValidationError(f"witness matrix has shape {m.shape}, expected {(d * d, d * d)}")
        angles = obj.get("angles")
        return cls(
            d=d,
            L=obj["L"],
            kappa=float(obj["kappa"]),
            matrix=m,
            route=obj.get("route", "direct"),
            mum_id=obj.get("mum_id"),
            angles=None if angles is None else tuple(angles),
        )


def load_witness(path) -> Witness:
    with open(path) as fh:
        return Witness.from_json(json.load(fh))


def printed_witness_d3() -> tuple[tuple[str, ...], np.ndarray]:
    """The printed d = 3 witness (three decimals) and the angles it was built with."""
    obj = data.load("witness_d3_printed.json")
    return tuple(obj["angles"]), matrix_from_json(obj["matrix"])


def _check_inputs(mum: MUM, rots: RotationSet, singular_ok: bool):
    if rots.d != mum.d:
        raise ValidationError(f"rotation dimension {rots.d} != measurement dimension {mum.d}")
    if rots.L != mum.L:
        raise ValidationError(f"need one rotation per POVM: got {rots.L} rotations for L={mum.L}")
    if not singular_ok and mum.d * mum.kappa - 1 <= mum.d * DEFAULT_TOLERANCES.psd_tol:
        raise ValidationError(f"kappa={mum.kappa:.6g} is too close to 1/d; the map is singular")


def apply_positive_map(mum: MUM, rots: RotationSet, x) -> np.ndarray:
    """Apply the trace-preserving positive map of the MUM to ``x``.

    ``Phi(X) = I Tr(X)/d - 1/(d kappa - 1) sum_a sum_kl O^a_kl Tr(X~ P^a_l) P^a_k``
    with ``X~ = X - I Tr(X)/d``.
    """
    _check_inputs(mum, rots, singular_ok=False)
    d = mum.d
    x = as_matrix(x)
    if x.shape != (d, d):
        raise ValidationError(f"input has shape {x.shape}, expected {(d, d)}")
    tr = np.trace(x)
    xt = x - np.eye(d) * tr / d
    # probs[a, l] = Tr(X~ P^a_l)
    probs = np.einsum("ij,alji->al", xt, mum.elements)
    coef = np.einsum("akl,al->ak", rots.rotations, probs)
    out = np.eye(d) * tr / d - np.einsum("ak,akij->ij", coef, mum.elements) / (d * mum.kappa - 1)
    return out


def build_witness_choi(mum: MUM, rots: RotationSet) -> Witness:
    """``(d kappa - 1) sum_ij |i><j| (x) Phi(|i><j|)``."""
    d = mum.d
    w = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            unit = np.zeros((d, d))
            unit[i, j] = 1
            w[i * d : (i + 1) * d, j * d : (j + 1) * d] = apply_positive_map(mum, rots, unit)
    w *= d * mum.kappa - 1
    return Witness(d, mum.L, mum.kappa, w, "choi", mum.name, rots.angles)


def build_witness_direct(mum: MUM, rots: RotationSet) -> Witness:
    """``(d kappa + L - 1)/d I (x) I - sum_a sum_kl O^a_kl conj(P^a_l) (x) P^a_k``.

    Well defined at ``kappa = 1/d``, unlike the Choi route.
    """
    _check_inputs(mum, rots, singular_ok=True)
    d, L = mum.d, mum.L
    P = mum.elements
    # mixed[a, l] = sum_k O^a_kl P^a_k
    mixed = np.einsum("akl,akij->alij", rots.rotations, P)
    # sum_{a,l} conj(P^a_l) (x) mixed[a, l], assembled as a 4-index tensor
    t = np.einsum("alij,alkm->ikjm", P.conj(), mixed).reshape(d * d, d * d)
    w = (d * mum.kappa + L - 1) / d * np.eye(d * d) - t
    return Witness(d, L, mum.kappa, w, "direct", mum.name, rots.angles)


def evaluate_witness(w: Witness, rho) -> float:
    """``Tr(W rho)``; negative certifies entanglement."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
    if m.shape != w.matrix.shape:
        raise ValidationError(f"state has shape {m.shape}, witness acts on {w.matrix.shape}")
    val = np.sum(w.matrix * m.T)
    if abs(val.imag) > DEFAULT_TOLERANCES.herm_tol:
        raise ValidationError(f"Tr(W rho) has imaginary part {val.imag:.3g}")
    return float(val.real)


@dataclass
class ScanReport:
    samples: int
    seed: int
    product_minimum: float
    min_eigenvalue: float

    @property
    def block_positive(self) -> bool:
        return self.product_minimum >= -1e-6

    @property
    def is_witness(self) -> bool:
        return self.block_positive and self.min_eigenvalue < 0


def _product_values(w4: np.ndarray, d: int, seed: int, indices: range) -> np.ndarray:
    vecs = np.empty((len(indices), 2, d), dtype=complex)
    for row, i in enumerate(indices):
        rng = np.random.default_rng((seed, i))
        g = rng.standard_normal((2, d)) + 1j * rng.standard_normal((2, d))
        vecs[row] = g / np.linalg.norm(g, axis=1, keepdims=True)
    a, b = vecs[:, 0], vecs[:, 1]
    vals = np.einsum("si,sj,ijkl,sk,sl->s", a.conj(), b.conj(), w4, a, b, optimize=True)
    return vals.real


def block_positivity_scan(w: Witness, samples: int = 10_000, seed: int = 0, workers: int = 1) -> ScanReport:
    """Sample Haar-random product vectors and report ``min <ab|W|ab>``.

    Sample ``i`` draws from ``default_rng((seed, i))``, so the result does not
    depend on ``workers``. Sampling can refute block positivity but never
    prove it.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    d = w.d
    w4 = w.matrix.reshape(d, d, d, d)
    chunk = max(1, -(-samples // max(1, workers)))
    ranges = [range(s, min(s + chunk, samples)) for s in range(0, samples, chunk)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: _product_values(w4, d, seed, r), ranges))
    else:
        parts = [_product_values(w4, d, seed, r) for r in ranges]
    prod_min = float(min(p.min() for p in parts))
    return ScanReport(samples, seed, prod_min, min_eigenvalue(w.matrix))

