import numpy as np
import pytest

from mumwitness.generators import (
    GeneratorBasis,
    gellmann_generators,
    generator_basis,
    partition_generators,
    verify_generator_axioms,
)
from mumwitness.numerics import ValidationError


def _gram(ops):
    a = np.array(ops)
    return np.einsum("aij,bji->ab", a, a)


def test_qubit_generators_are_paulis():
    gens = gellmann_generators(2)
    paulis = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    for p in paulis:
        assert any(np.allclose(g, p / np.sqrt(2)) or np.allclose(g, -p / np.sqrt(2)) for g in gens)


def test_d3_gram_identity():
    gens = gellmann_generators(3)
    assert len(gens) == 8
    np.testing.assert_allclose(_gram(gens), np.eye(8), atol=1e-14)


def test_d6_traceless():
    gens = gellmann_generators(6)
    assert len(gens) == 35
    assert max(abs(np.trace(g)) for g in gens) < 1e-14


def test_paper_d3_last_group_diagonal():
    basis = generator_basis(3, "paper-d3")
    for f in basis.group(4):
        np.testing.assert_array_equal(f, np.diag(np.diag(f)))


def test_d6_last_group_diagonal():
    basis = generator_basis(6)
    for f in basis.group(7):
        np.testing.assert_array_equal(f, np.diag(np.diag(f)))


def test_qubit_singleton_groups():
    for scheme in ("default",):
        basis = generator_basis(2, scheme)
        assert all(len(basis.group(b)) == 1 for b in range(1, 4))


def test_default_matches_paper_d3():
    a, b = generator_basis(3, "default"), generator_basis(3, "paper-d3")
    for cell in a.table:
        np.testing.assert_array_equal(a.table[cell], b.table[cell])


@pytest.mark.parametrize("d", range(2, 9))
def test_axioms_pass(d):
    rep = verify_generator_axioms(generator_basis(d))
    assert rep.passed
    assert rep.orthonormality < 1e-12 and rep.cell_count == d * d - 1


def test_scaled_generator_fails():
    basis = generator_basis(3)
    table = dict(basis.table)
    table[(1, 1)] = 1.01 * table[(1, 1)]
    rep = verify_generator_axioms(GeneratorBasis(3, "default", table))
    assert not rep.passed and rep.orthonormality > 1e-3


def test_identity_generator_fails_trace():
    basis = generator_basis(3)
    table = dict(basis.table)
    table[(4, 1)] = np.eye(3) / 3
    rep = verify_generator_axioms(GeneratorBasis(3, "default", table))
    assert not rep.passed and rep.trace > 0.5


def test_partition_errors():
    with pytest.raises(ValidationError):
        partition_generators(gellmann_generators(3)[:-1], 3)
    with pytest.raises(ValueError):
        generator_basis(4, "paper-d3")
    with pytest.raises(ValueError):
        generator_basis(3, "nope")


def test_basis_json_roundtrip():
    basis = generator_basis(4)
    back = GeneratorBasis.from_json(basis.to_json())
    for cell, m in basis.table.items():
        np.testing.assert_array_equal(back.table[cell], m)
