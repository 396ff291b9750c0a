"""Traceless Hermitian orthonormal operator bases and their (n, b) partition."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import DEFAULT_TOLERANCES, ToleranceConfig, ValidationError, matrix_from_json, matrix_to_json

# A generator label is ("sym", j, k), ("asym", j, k) with 1 <= j < k <= d,
# or ("diag", l) with 1 <= l <= d-1.
Label = tuple


def gellmann_labels(d: int) -> list[Label]:
    """Labels of :func:`gellmann_generators` in output order."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    pairs = [(j, k) for j in range(1, d + 1) for k in range(j + 1, d + 1)]
    return (
        [("sym", j, k) for j, k in pairs]
        + [("asym", j, k) for j, k in pairs]
        + [("diag", l) for l in range(1, d)]
    )


def gellmann_matrix(label: Label, d: int) -> np.ndarray:
    """A single generalized Gell-Mann operator, normalized to ``Tr(F^2) = 1``."""
    m = np.zeros((d, d), dtype=complex)
    kind = label[0]
    if kind == "sym":
        j, k = label[1] - 1, label[2] - 1
        m[j, k] = m[k, j] = 1 / np.sqrt(2)
    elif kind == "asym":
        j, k = label[1] - 1, label[2] - 1
        m[j, k] = -1j / np.sqrt(2)
        m[k, j] = 1j / np.sqrt(2)
    elif kind == "diag":
        l = label[1]
        m[np.arange(l), np.arange(l)] = 1
        m[l, l] = -l
        m /= np.sqrt(l * (l + 1))
    else:
        raise ValueError(f"unknown generator label {label!r}")
    return m


def gellmann_generators(d: int) -> list[np.ndarray]:
    """The ``d**2 - 1`` generalized Gell-Mann operators.

    Order: symmetric pairs, antisymmetric pairs (both over ``j < k``), then
    the ``d - 1`` diagonal operators. See :func:`gellmann_labels`.
    """
    return [gellmann_matrix(lab, d) for lab in gellmann_labels(d)]


# -- partition schemes --------------------------------------------------------


def _hub_scheme(d: int) -> dict[tuple[int, int], Label]:
    # Group b <= d collects every off-diagonal generator touching row/column b:
    # sym(i, b) for i < b, then asym(b, k) for k > b. Group d+1 is diagonal.
    cells = {}
    for b in range(1, d + 1):
        group = [("sym", i, b) for i in range(1, b)] + [("asym", b, k) for k in range(b + 1, d + 1)]
        for n, lab in enumerate(group, start=1):
            cells[(b, n)] = lab
    for l in range(1, d):
        cells[(d + 1, l)] = ("diag", l)
    return cells


def _paper_d3_scheme(d: int) -> dict[tuple[int, int], Label]:
    if d != 3:
        raise ValueError("scheme 'paper-d3' is only defined for d = 3")
    return {
        (1, 1): ("asym", 1, 2), (1, 2): ("asym", 1, 3),
        (2, 1): ("sym", 1, 2), (2, 2): ("asym", 2, 3),
        (3, 1): ("sym", 1, 3), (3, 2): ("sym", 2, 3),
        (4, 1): ("diag", 1), (4, 2): ("diag", 2),
    }  # fmt: skip


#: Named partition schemes, ``name -> (d -> {(b, n): label})``. "default"
#: reproduces the printed d = 6 measurements and coincides with "paper-d3"
#: at d = 3.
SCHEMES = {
    "default": _hub_scheme,
    "paper-d3": _paper_d3_scheme,
}
SCHEME_VERSION = 1


@dataclass(frozen=True)
class GeneratorBasis:
    """Orthonormal traceless Hermitian operators ``F[b, n]`` indexed by group ``b``
    (1..d+1) and position ``n`` (1..d-1)."""

    d: int
    scheme: str
    table: dict = field(repr=False)

    def group(self, b: int) -> list[np.ndarray]:
        return [self.table[(b, n)] for n in range(1, self.d)]

    @property
    def n_groups(self) -> int:
        return self.d + 1

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "scheme": self.scheme,
            "cells": [
                {"b": b, "n": n, "matrix": matrix_to_json(m)} for (b, n), m in sorted(self.table.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GeneratorBasis":
        table = {(c["b"], c["n"]): matrix_from_json(c["matrix"]) for c in obj["cells"]}
        return cls(d=obj["d"], scheme=obj["scheme"], table=table)


def _gram(ops) -> np.ndarray:
    stack = np.array(ops)
    # Tr(A B) for Hermitian A, B = sum conj(A) * B
    return np.einsum("aij,bij->ab", stack.conj(), stack).real


def partition_generators(gens, d: int, scheme: str = "default", cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> GeneratorBasis:
    """Assign ``d**2 - 1`` generators to the ``(b, n)`` grid.

    ``gens`` must be the output of :func:`gellmann_generators` (same order);
    schemes refer to generators by Gell-Mann label.
    """
    gens = [np.asarray(g, dtype=complex) for g in gens]
    if len(gens) != d * d - 1:
        raise ValidationError(f"expected {d * d - 1} generators for d={d}, got {len(gens)}")
    gram = _gram(gens)
    if np.max(np.abs(gram - np.eye(len(gens)))) > cfg.ortho_tol:
        raise ValidationError("generators are not orthonormal")
    try:
        layout = SCHEMES[scheme](d)
    except KeyError:
        raise ValueError(f"unknown partition scheme {scheme!r}; choose from {sorted(SCHEMES)}") from None
    index = {lab: i for i, lab in enumerate(gellmann_labels(d))}
    table = {cell: gens[index[lab]] for cell, lab in layout.items()}
    return GeneratorBasis(d=d, scheme=scheme, table=table)


def generator_basis(d: int, scheme: str = "default") -> GeneratorBasis:
    """Gell-Mann generators for ``d`` partitioned by ``scheme``."""
    return partition_generators(gellmann_generators(d), d, scheme)


@dataclass
class GeneratorReport:
    orthonormality: float
    trace: float
    hermiticity: float
    cell_count: int
    passed: bool


def verify_generator_axioms(basis: GeneratorBasis, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> GeneratorReport:
    """Worst-case deviations from tracelessness, Hermiticity and orthonormality."""
    cells = sorted(basis.table)
    ops = [np.asarray(basis.table[c]) for c in cells]
    ortho = float(np.max(np.abs(_gram(ops) - np.eye(len(ops))))) if ops else np.inf
    # the Gram uses the Hermitian pairing; also catch anti-Hermitian parts
    herm = max(float(np.max(np.abs(m - m.conj().T))) for m in ops)
    trace = max(abs(np.trace(m)) for m in ops)
    count_ok = len(cells) == basis.d**2 - 1
    passed = count_ok and ortho <= cfg.ortho_tol and trace <= cfg.herm_tol and herm <= cfg.herm_tol
    return GeneratorReport(ortho, float(trace), herm, len(cells), passed)
