"""Mutually unbiased measurements (MUMs) and mutually unbiased bases (MUBs).

A MUM here is ``L`` POVMs of ``d`` elements each, stored as a complex array of
shape ``(L, d, d, d)``: ``elements[b - 1, n - 1]`` is the operator
:math:`P^{(b)}_n`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from . import data
from .generators import GeneratorBasis, generator_basis, verify_generator_axioms
from .numerics import (
    DEFAULT_TOLERANCES,
    ToleranceConfig,
    ValidationError,
    eigvalsh,
    matrix_from_json,
    matrix_to_json,
    vector_from_json,
    vector_to_json,
)

#: Construction parameter that reproduces the printed d = 3 measurements (kappa = 0.358).
T_D3_PRINTED = 0.04066
#: Construction parameter that reproduces the printed d = 6 measurements.
T_D6_PRINTED = 0.047 * np.sqrt(2) / (1 + np.sqrt(6))


@dataclass(frozen=True)
class MUM:
    d: int
    kappa: float
    elements: np.ndarray = field(repr=False)
    t: float | None = None
    name: str | None = None

    @property
    def L(self) -> int:
        return self.elements.shape[0]

    def element(self, b: int, n: int) -> np.ndarray:
        """:math:`P^{(b)}_n` with 1-based indices."""
        return self.elements[b - 1, n - 1]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "L": self.L,
            "t": self.t,
            "kappa": self.kappa,
            "elements": [
                {"b": b + 1, "n": n + 1, "matrix": matrix_to_json(self.elements[b, n])}
                for b in range(self.L)
                for n in range(self.d)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, name: str | None = None) -> "MUM":
        elements = _elements_from_json(obj["d"], obj["elements"])
        if elements.shape[0] != obj.get("L", elements.shape[0]):
            raise ValidationError("MUM JSON 'L' does not match its elements")
        kappa = obj.get("kappa")
        if kappa is None:
            kappa = _mean_purity(elements)
        return cls(d=obj["d"], kappa=float(kappa), elements=elements, t=obj.get("t"), name=name)


def _elements_from_json(d: int, items) -> np.ndarray:
    L = max(e["b"] for e in items)
    elements = np.zeros((L, d, d, d), dtype=complex)
    seen = set()
    for e in items:
        elements[e["b"] - 1, e["n"] - 1] = matrix_from_json(e["matrix"])
        seen.add((e["b"], e["n"]))
    if len(seen) != L * d:
        raise ValidationError(f"expected {L * d} MUM elements, found {len(seen)}")
    return elements


def _purities(elements: np.ndarray) -> np.ndarray:
    # Tr(P^2) = sum |P_ij|^2 for Hermitian P
    return np.einsum("bnij,bnij->bn", elements.conj(), elements).real


def _mean_purity(elements: np.ndarray) -> float:
    return float(np.mean(_purities(elements)))


# -- construction -----------------------------------------------------------


def _direction_operators(basis: GeneratorBasis) -> np.ndarray:
    """The traceless parts ``F_n^(b)``, shape ``(d+1, d, d, d)``."""
    d = basis.d
    sq = np.sqrt(d)
    out = np.zeros((d + 1, d, d, d), dtype=complex)
    for b in range(1, d + 2):
        group = basis.group(b)
        total = np.sum(group, axis=0)
        for n in range(d - 1):
            out[b - 1, n] = total - (d + sq) * group[n]
        out[b - 1, d - 1] = (1 + sq) * total
    return out


def max_feasible_t(basis: GeneratorBasis) -> float:
    """Largest ``t`` for which every ``I/d + t F_n^(b)`` is positive semidefinite."""
    d = basis.d
    lam = min(eigvalsh(f)[0] for f in _direction_operators(basis).reshape(-1, d, d))
    if lam >= 0:  # pragma: no cover - traceless nonzero operators always have lam < 0
        return np.inf
    return float(1 / (d * abs(lam)))


def build_mums(
    basis: GeneratorBasis, t: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES, name: str | None = None
) -> MUM:
    """The ``d + 1`` MUMs ``P_n^(b) = I/d + t F_n^(b)``.

    ``F_n^(b) = F^(b) - (d + sqrt(d)) F_{n,b}`` for ``n < d`` and
    ``(1 + sqrt(d)) F^(b)`` for ``n = d``, where ``F^(b)`` sums group ``b``.
    Raises :class:`ValidationError` if ``t`` is outside ``(0, t*]``.
    """
    report = verify_generator_axioms(basis, cfg)
    if not report.passed:
        raise ValidationError(f"generator basis fails its axioms: {report}")
    if not t > 0:
        raise ValidationError(f"t must be positive, got {t}")
    d = basis.d
    elements = np.eye(d) / d + t * _direction_operators(basis)
    worst = min(eigvalsh(p)[0] for p in elements.reshape(-1, d, d))
    if worst < -cfg.psd_tol:
        raise ValidationError(
            f"t={t:.6g} is infeasible: an element has eigenvalue {worst:.3g} (t* = {max_feasible_t(basis):.6g})"
        )
    return MUM(d=d, kappa=kappa_of_elements(elements, cfg), elements=elements, t=float(t), name=name)


def constructed_mums(d: int, t: float | None = None, scheme: str = "default", name: str | None = None) -> MUM:
    """Convenience wrapper: Gell-Mann basis, partition ``scheme``, ``t`` defaulting to ``t*``."""
    basis = generator_basis(d, scheme)
    if t is None:
        t = max_feasible_t(basis)
    return build_mums(basis, t, name=name)


def kappa_of_elements(elements: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    d = elements.shape[-1]
    pur = _purities(elements)
    spread = float(pur.max() - pur.min())
    if spread > 100 * cfg.ortho_tol:
        raise ValidationError(f"element purities differ by {spread:.3g}; kappa is not uniform")
    kappa = float(pur.mean())
    # kappa = 1/d (the trivial POVM) is admitted up to rounding
    slack = 100 * cfg.ortho_tol
    if not (1 / d - slack <= kappa <= 1 + slack):
        raise ValidationError(f"kappa={kappa:.6g} outside [1/d, 1]")
    return kappa


def kappa_of(mum: MUM, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Efficiency parameter: the common purity ``Tr(P^2)`` of the elements."""
    return kappa_of_elements(mum.elements, cfg)


@dataclass
class MUMReport:
    psd: float
    completeness: float
    unit_trace: float
    cross_basis: float
    same_basis: float
    kappa: float
    passed: bool


def verify_mum_axioms(mum: MUM, cfg: ToleranceConfig = DEFAULT_TOLERANCES, fixture: bool = False) -> MUMReport:
    """Worst-case deviations from positivity, completeness, unit trace, and the
    cross-/same-basis overlap pattern.

    With ``fixture=True`` every check runs at ``cfg.fixture_tol``, widened to
    ``d * fixture_tol / 2`` for the two checks that sum ``d`` printed entries.
    """
    d, L = mum.d, mum.L
    E = mum.elements
    psd = max(0.0, -min(eigvalsh(p)[0] for p in E.reshape(-1, d, d)))
    completeness = float(np.max(np.abs(E.sum(axis=1) - np.eye(d))))
    unit_trace = float(np.max(np.abs(np.einsum("bnii->bn", E) - 1)))
    flat = E.reshape(L * d, d, d)
    # gram[x, y] = Tr(P_x P_y)
    gram = np.einsum("xij,yji->xy", flat, flat).real.reshape(L, d, L, d)
    kappa = mum.kappa
    same_target = np.full((d, d), (1 - kappa) / (d - 1))
    np.fill_diagonal(same_target, kappa)
    same = max(float(np.max(np.abs(gram[b, :, b, :] - same_target))) for b in range(L))
    cross = 0.0
    for a, b in itertools.combinations(range(L), 2):
        cross = max(cross, float(np.max(np.abs(gram[a, :, b, :] - 1 / d))))
    if fixture:
        tols = dict.fromkeys(("psd", "cross", "same"), cfg.fixture_tol)
        # completeness and trace sum d rounded entries
        summed = max(cfg.fixture_tol, d * cfg.fixture_tol / 2)
        tols.update(completeness=summed, unit_trace=summed)
    else:
        tols = dict(
            psd=cfg.psd_tol,
            completeness=cfg.herm_tol,
            unit_trace=cfg.herm_tol,
            cross=10 * cfg.ortho_tol,
            same=10 * cfg.ortho_tol,
        )
    passed = (
        psd <= tols["psd"]
        and completeness <= tols["completeness"]
        and unit_trace <= tols["unit_trace"]
        and cross <= tols["cross"]
        and same <= tols["same"]
    )
    return MUMReport(psd, completeness, unit_trace, cross, same, kappa, passed)


# -- MUBs -------------------------------------------------------------------


@dataclass(frozen=True)
class MUBSet:
    """Orthonormal bases; ``bases[b, n]`` is the ``n``-th vector of basis ``b``."""

    d: int
    bases: np.ndarray = field(repr=False)

    @property
    def L(self) -> int:
        return self.bases.shape[0]

    def overlaps(self) -> np.ndarray:
        """``|<b,i|c,j>|`` for all pairs, shape ``(L, d, L, d)``."""
        v = self.bases.reshape(self.L * self.d, self.d)
        return np.abs(v.conj() @ v.T).reshape(self.L, self.d, self.L, self.d)

    def check(self, tol: float) -> tuple[float, float]:
        """Return ``(orthonormality deviation, unbiasedness deviation)``; raise if above ``tol``/``10 tol``."""
        ov = self.overlaps()
        ortho = max(float(np.max(np.abs(ov[b, :, b, :] - np.eye(self.d)))) for b in range(self.L))
        unbiased = 0.0
        for a, b in itertools.combinations(range(self.L), 2):
            unbiased = max(unbiased, float(np.max(np.abs(ov[a, :, b, :] - 1 / np.sqrt(self.d)))))
        if ortho > tol:
            raise ValidationError(f"basis not orthonormal (deviation {ortho:.3g})")
        if unbiased > 10 * tol:
            raise ValidationError(f"bases not mutually unbiased (deviation {unbiased:.3g})")
        return ortho, unbiased

    def to_json(self) -> dict:
        return {"d": self.d, "bases": [[vector_to_json(v) for v in basis] for basis in self.bases]}

    @classmethod
    def from_json(cls, obj: dict) -> "MUBSet":
        bases = np.array([[vector_from_json(v) for v in basis] for basis in obj["bases"]])
        return cls(d=obj["d"], bases=bases)


def fourier_mub_pair(d: int) -> MUBSet:
    """Computational basis and the discrete Fourier basis ``(1/sqrt d) sum_j w^{jk} |j>``."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    jk = np.outer(np.arange(d), np.arange(d))
    fourier = np.exp(2j * np.pi * jk / d) / np.sqrt(d)
    bases = np.array([np.eye(d, dtype=complex), fourier.T])
    mubs = MUBSet(d=d, bases=bases)
    mubs.check(DEFAULT_TOLERANCES.ortho_tol)
    return mubs


def mub_to_mum(mubs: MUBSet, cfg: ToleranceConfig = DEFAULT_TOLERANCES, fixture: bool = False, name=None) -> MUM:
    """Rank-one projectors onto every basis vector, so kappa = 1.

    Vectors are rescaled to unit norm first; for rounded, printed bases this
    removes the ~1e-3 norm error that would otherwise leak into kappa.
    """
    mubs.check(cfg.fixture_tol if fixture else cfg.ortho_tol)
    v = mubs.bases / np.linalg.norm(mubs.bases, axis=-1, keepdims=True)
    elements = np.einsum("bni,bnj->bnij", v, v.conj())
    return MUM(d=mubs.d, kappa=_mean_purity(elements), elements=elements, t=None, name=name)


# -- printed fixtures -------------------------------------------------------


def _load(name: str) -> dict:
    return data.load(name)


def resolve_printed_conflicts(raw: np.ndarray, tol: float) -> tuple[np.ndarray, list[tuple[int, int, int, int]]]:
    """Make printed POVM elements Hermitian, repairing sign/phase misprints.

    ``raw`` has shape ``(L, d, d, d)``. Where ``raw[.., i, j]`` and
    ``conj(raw[.., j, i])`` disagree by more than ``tol`` the two candidate
    values are tried and the combination closest to completeness
    (``sum_n P_n = I`` at that entry) is kept. Consistent pairs are averaged.
    Returns the repaired elements and the list of ``(b, n, i, j)`` repairs
    (1-based).
    """
    L, d = raw.shape[0], raw.shape[-1]
    out = (raw + np.conj(np.swapaxes(raw, -1, -2))) / 2
    repairs = []
    for b in range(L):
        for i, j in itertools.combinations(range(d), 2):
            upper = raw[b, :, i, j]
            lower = np.conj(raw[b, :, j, i])
            bad = [n for n in range(d) if abs(upper[n] - lower[n]) > tol]
            if not bad:
                continue
            best = None
            for choice in itertools.product((0, 1), repeat=len(bad)):
                vals = out[b, :, i, j].copy()
                for n, c in zip(bad, choice):
                    vals[n] = upper[n] if c == 0 else lower[n]
                resid = abs(vals.sum())
                if best is None or resid < best[0]:
                    best = (resid, vals)
            out[b, :, i, j] = best[1]
            out[b, :, j, i] = np.conj(best[1])
            repairs.extend((b + 1, n + 1, i + 1, j + 1) for n in bad)
    return out, repairs


def _printed_mum(filename: str, name: str, cfg: ToleranceConfig) -> MUM:
    obj = _load(filename)
    raw = _elements_from_json(obj["d"], obj["elements"])
    elements, _ = resolve_printed_conflicts(raw, cfg.fixture_tol)
    return MUM(d=obj["d"], kappa=_mean_purity(elements), elements=elements, t=None, name=name)


def mum_fixture_d3(cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> MUM:
    """The four printed d = 3 measurements (three-decimal transcription)."""
    return _printed_mum("mum_d3_printed.json", "mum-d3-printed", cfg)


def mum_fixture_d6(cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> MUM:
    """The seven printed d = 6 measurements (three-decimal transcription).

    Seven of the printed matrices are not Hermitian as typeset; they are
    repaired by :func:`resolve_printed_conflicts`.
    """
    return _printed_mum("mum_d6_printed.json", "mum-d6-printed", cfg)


def printed_mum_d6_repairs(cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> list[tuple[int, int, int, int]]:
    obj = _load("mum_d6_printed.json")
    return resolve_printed_conflicts(_elements_from_json(6, obj["elements"]), cfg.fixture_tol)[1]


def _mub_d6_bases(apply_errata: bool) -> np.ndarray:
    obj = _load("mub_d6_printed.json")
    mats = [matrix_from_json(m) for m in obj["matrices"]]
    if apply_errata:
        for e in obj["errata"]:
            rows = np.array(e["rows"]) - 1
            cols = np.array(e["cols"]) - 1
            mats[e["basis"] - 1][np.ix_(rows, cols)] = matrix_from_json(e["corrected"])
    # printed columns are basis vectors
    return np.array([m.T for m in mats])


def mub_fixture_d6(apply_errata: bool = True, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> MUBSet:
    """The three printed d = 6 MUBs.

    As typeset, the lower-right 3x3 block of the third matrix has sign errors
    that break orthonormality; the stored erratum restores the product
    structure ``(1, -i)/sqrt2 (x) v``. ``apply_errata=False`` returns the
    verbatim transcription, which does not validate.
    """
    mubs = MUBSet(d=6, bases=_mub_d6_bases(apply_errata).copy())
    if apply_errata:
        mubs.check(cfg.fixture_tol)
    return mubs


def exact_mums(d: int) -> MUM:
    """Exact constructions behind the printed measurements (d = 3 or 6)."""
    if d == 3:
        return constructed_mums(3, T_D3_PRINTED, scheme="paper-d3", name="mum-d3")
    if d == 6:
        return constructed_mums(6, T_D6_PRINTED, scheme="default", name="mum-d6")
    raise ValueError("printed measurements exist only for d = 3 and d = 6")


def load_mum(path) -> MUM:
    with open(path) as fh:
        return MUM.from_json(json.load(fh), name=str(path))


def _mub_d6_mum() -> MUM:
    return mub_to_mum(mub_fixture_d6(), fixture=True, name="mub-d6")


NAMED_MUMS = {
    "mum-d3": lambda: exact_mums(3),
    "mum-d3-printed": mum_fixture_d3,
    "mum-d6": lambda: exact_mums(6),
    "mum-d6-printed": mum_fixture_d6,
    "mub-d6": _mub_d6_mum,
}


def named_mum(name: str) -> MUM:
    """Look up a shipped measurement set by name (see ``NAMED_MUMS``)."""
    try:
        return NAMED_MUMS[name]()
    except KeyError:
        raise ValueError(f"unknown measurement fixture {name!r}; choose from {sorted(NAMED_MUMS)}") from None
