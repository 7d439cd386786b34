"""Structure-constant containers and the law checkers."""

from fractions import Fraction

import numpy as np
import pytest

from cpair.errors import InputError
from cpair.structures import (AssocAlgebra, CourantPair, Derivation,
                              LeibnizAlgebra, adjoint_module,
                              commutator_derivations_basis, hemisemidirect,
                              tensor, validate_module, validate_pair,
                              zero_tensor)

F = Fraction


def test_tensor_shape_checking():
    t = tensor([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], (2, 2, 2))
    assert t[0, 0, 0] == 1 and isinstance(t[0, 0, 0], Fraction)
    with pytest.raises(InputError):
        tensor([[1, 2]], (2, 2))


def test_validate_pair_passes_on_catalog(all_pairs):
    for name, pair in all_pairs:
        report = validate_pair(pair)
        assert report.ok, (name, str(report))


def test_validate_pair_names_the_offending_tuple(heis):
    # x * x^2 = 1 one-sided: then x.(x.x^2) = x but (x.x).x^2 = 0
    mul = np.array(heis.A.mul, dtype=object)
    mul[1, 2] = np.array([F(1), F(0), F(0)], dtype=object)
    bad = CourantPair(AssocAlgebra(3, mul, heis.A.basis_labels),
                      heis.L, heis.mu)
    report = validate_pair(bad)
    assert not report.ok
    failed = {c.name for c in report.failures}
    assert "associativity" in failed
    witness = next(c.witness for c in report.failures
                   if c.name == "associativity")
    assert "x" in witness


def test_anchor_must_land_in_derivations(heis):
    notder = Derivation.__new__(Derivation)
    object.__setattr__(notder, "matrix",
                       tensor([[1, 0, 0], [0, 0, 0], [0, 0, 0]], (3, 3)))
    bad = CourantPair(heis.A, heis.L, (notder,) + heis.mu[1:])
    report = validate_pair(bad)
    assert any(c.name == "anchor maps to derivations" for c in report.failures)


def test_commutator_derivations_of_truncated_line(heis):
    """Der of Q[x]/(x^3) is 2-dimensional: spans of x d/dx and x^2 d/dx."""
    ders = commutator_derivations_basis(heis.A)
    assert len(ders) == 2
    for d in ders:
        m = d.matrix
        for i in range(3):
            for j in range(3):
                lhs = sum(heis.A.mul[i, j, k] * m[k] for k in range(3))
                rhs = (sum(m[i, k] * heis.A.mul[k, j] for k in range(3))
                       + sum(m[j, k] * heis.A.mul[i, k] for k in range(3)))
                assert all(a == b for a, b in zip(lhs, rhs))
    # no derivation moves 1 (A is unital)
    for d in ders:
        assert not any(d.matrix[0])


def test_hemisemidirect_is_leibniz_but_not_lie(hemi):
    """[g, v] = g.v but [v, g] = 0, so the symmetrized bracket is nonzero
    (and [g+v, g+v] = g.v lands in the Leibniz kernel)."""
    assert validate_pair(hemi).ok
    br = hemi.L.bracket
    n = hemi.L.dim
    sym = [(x, y) for x in range(n) for y in range(n)
           if any(a + b for a, b in zip(br[x, y], br[y, x]))]
    assert sym, "expected a genuinely non-Lie bracket"


def test_hemisemidirect_bracket_blocks(hemi):
    """[(g,0),(0,v)] = (0, g.v) and [(0,v), anything] = 0."""
    br = hemi.L.bracket
    k = hemi.L.dim - 3  # three module coordinates appended after the g part
    for i in range(k, hemi.L.dim):
        for j in range(hemi.L.dim):
            assert not any(br[i, j]), (i, j)


def test_hemisemidirect_rejects_non_lie_base(heis):
    notlie = np.full((1, 1, 1), F(1), dtype=object)  # [e, e] = e
    with pytest.raises(InputError):
        hemisemidirect(LeibnizAlgebra(1, notlie), zero_tensor((1, 2, 2)), 2)


def test_hemisemidirect_rejects_non_representation(heis):
    # identity matrices cannot represent [e1, e3] = e2: [I, I] = 0 != I
    eye = tensor([[1, 0], [0, 1]], (2, 2))
    action = np.array([eye, eye, eye], dtype=object)
    with pytest.raises(InputError):
        hemisemidirect(heis.L, action, 2)


def test_adjoint_module_satisfies_module_laws(all_pairs):
    for name, pair in all_pairs:
        assert validate_module(pair, adjoint_module(pair)).ok, name


def test_law_check_str_mentions_witness(heis):
    mul = np.array(heis.A.mul, dtype=object)
    mul[2, 2] = np.array([F(1), F(0), F(0)], dtype=object)  # x^2*x^2 = 1
    bad = CourantPair(AssocAlgebra(3, mul, heis.A.basis_labels), heis.L, heis.mu)
    report = validate_pair(bad)
    text = str(report)
    assert "FAIL" in text and "x^2" in text
