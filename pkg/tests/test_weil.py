import itertools

import numpy as np
import pytest

from oracles import brute_split, theta
from seqlab.errors import FieldMismatch, InvalidMatrix
from seqlab.field import legendre, make_field
from seqlab.seqcore import F as Fop, N as Nop, fourier, inner_product, is_scalar_multiple, scale
from seqlab.weil import (
    coset_representatives,
    homomorphism_check,
    in_torus_normalizer,
    lower_unipotent,
    predicted_split_index,
    random_sl2,
    rho,
    same_coset,
    sl2,
    sl2_act_heisenberg,
    sl2_identity,
    sl2_inv,
    sl2_mul,
    split_system,
    split_system_indexed,
    standard_torus_basis,
    torus_element,
    verify_intertwining,
    verify_theorem2,
    weyl_element,
)


def close(a, b, tol=1e-9):
    return np.allclose(np.asarray(a), np.asarray(b), rtol=0, atol=tol)


def test_sl2_validation():
    with pytest.raises(InvalidMatrix):
        sl2(5, 1, 1, 1, 1)
    with pytest.raises(FieldMismatch):
        sl2_mul(sl2_identity(5), sl2_identity(7))


def test_sl2_group_laws(rng):
    p = 7
    w = weyl_element(p)
    assert sl2_mul(w, w) == sl2(p, -1, 0, 0, -1)
    for _ in range(20):
        g = random_sl2(p, rng)
        assert sl2_mul(g, sl2_identity(p)) == g
        assert sl2_mul(g, sl2_inv(g)) == sl2_identity(p)


def test_sl2_action():
    p = 5
    assert sl2_act_heisenberg(sl2_identity(p), (1, 2, 3)) == (1, 2, 3)
    assert sl2_act_heisenberg(weyl_element(p), (1, 0, 0)) == (0, 4, 0)
    assert sl2_act_heisenberg(sl2(p, 2, 1, 1, 1), (3, 4, 2))[2] == 2


def test_rho_on_generators(f5, rng):
    p = 5
    phi = np.random.default_rng(0).standard_normal(p) + 0j
    from seqlab.seqcore import Sequence
    phi = Sequence(p, phi)
    for a in range(1, p):
        assert close(rho(f5, torus_element(p, a))(phi).values, scale(phi, a).values)
    for b in range(p):
        assert close(rho(f5, lower_unipotent(p, b))(phi).values, Nop(b)(phi).values)
    U = rho(f5, weyl_element(p)).matrix(p)
    Fm = Fop().matrix(p)
    c = U[0, 0] / Fm[0, 0]
    assert abs(abs(c) - 1) <= 1e-12 and close(U, c * Fm)


@pytest.mark.parametrize("p", [5, 7])
def test_rho_unitary_for_random_elements(p):
    f = make_field(p)
    rng = np.random.default_rng(100 + p)
    for _ in range(50):
        U = rho(f, random_sl2(p, rng)).matrix(p)
        assert close(U.conj().T @ U, np.eye(p))


@pytest.mark.parametrize("p", [5, 7, 11])
def test_torus_basis(p):
    f = make_field(p)
    basis = standard_torus_basis(f)
    assert len(basis) == p - 2
    G = np.array([[inner_product(u, v) for v in basis] for u in basis])
    assert close(G, np.eye(p - 2))
    for x, phi in enumerate(basis, start=1):
        assert phi.values[0] == 0
        eig = theta(p, (p - 1) // 2 - x)
        assert close(scale(phi, f.a).values, eig * phi.values)


def test_torus_basis_example(f5):
    assert close(standard_torus_basis(f5)[0].values, 0.5 * np.array([0, 1, 1j, -1j, -1]), 1e-12)


@pytest.mark.parametrize("p", [5, 7])
def test_coset_representatives(p):
    f = make_field(p)
    reps = coset_representatives(f)
    assert len(reps) == p * (p + 1) // 2
    assert all((g.a * g.d - g.b * g.c) % p == 1 for g in reps)
    for g, h in itertools.combinations(reps, 2):
        assert not same_coset(g, h)


def test_normalizer_matches_brute_force():
    # N(A) computed directly: g with g A g^-1 = A
    p = 5
    A = {torus_element(p, a) for a in range(1, p)}
    allg = [sl2(p, a, b, c, d) for a, b, c, d in itertools.product(range(p), repeat=4)
            if (a * d - b * c) % p == 1]
    for g in allg:
        conj = {sl2_mul(sl2_mul(g, t), sl2_inv(g)) for t in A}
        assert (conj == A) == in_torus_normalizer(g)


def test_cosets_cover_group():
    p = 5
    reps = coset_representatives(make_field(p))
    allg = [sl2(p, a, b, c, d) for a, b, c, d in itertools.product(range(p), repeat=4)
            if (a * d - b * c) % p == 1]
    for g in allg:
        assert sum(same_coset(r, g) for r in reps) == 1


def test_split_system_basics(f5):
    seqs = split_system(f5)
    assert len(seqs) == 45
    assert all(abs(s.norm() - 1) <= 1e-9 for s in seqs)
    basis = standard_torus_basis(f5)
    assert all(close(seqs[k].values, basis[k].values) for k in range(3))


@pytest.mark.parametrize("p", [5, 7])
def test_split_system_blocks_orthonormal(p):
    f = make_field(p)
    triples = split_system_indexed(f)
    for k in range(0, len(triples), p - 2):
        block = np.array([s.values for _, _, s in triples[k:k + p - 2]])
        assert close(block.conj() @ block.T, np.eye(p - 2))


@pytest.mark.parametrize("p", [5, 7])
def test_split_system_predicted_indices(p):
    f = make_field(p)
    for g, x, s in split_system_indexed(f):
        (x2, y, b), sign = predicted_split_index(f, g, x)
        ref = np.array(brute_split(p, f.a, x2, y, b))
        assert close(s.values, sign * ref)


@pytest.mark.parametrize("p", [5, 7])
def test_theorem2(p):
    rep = verify_theorem2(make_field(p))
    assert rep.passed
    assert rep.count == p * (p + 1) * (p - 2) // 2
    assert rep.scalars_summary["other"] == 0
    assert rep.details["index_prediction_hits"] == rep.count


def test_intertwining_examples(f5):
    rep = verify_intertwining(f5, sl2_identity(5), (1, 2, 3))
    assert rep.passed and abs(complex(*rep.scalars_summary["scalar"]) - 1) <= 1e-12
    rep = verify_intertwining(f5, torus_element(5, 2), (1, 0, 0))
    assert rep.passed and rep.details["g_h"] == [2, 0, 0]
    rng = np.random.default_rng(3)
    for _ in range(10):
        rep = verify_intertwining(f5, random_sl2(5, rng), (0, 0, 2))
        assert rep.passed and rep.scalars_summary["exactly_one"]


def test_homomorphism_examples(f7):
    rng = np.random.default_rng(5)
    g = random_sl2(7, rng)
    rep = homomorphism_check(f7, g, sl2_identity(7))
    assert rep.passed and rep.scalars_summary["exactly_one"]
    u = lower_unipotent(7, 1)
    rep = homomorphism_check(f7, u, u)
    assert rep.passed and rep.scalars_summary["exactly_one"]
    for _ in range(20):
        rep = homomorphism_check(f7, random_sl2(7, rng), random_sl2(7, rng))
        assert rep.passed      # unit scalar, small residual; the scalar itself may differ from 1


def test_homomorphism_not_exact_lift_at_p7(f7):
    # w^2 = -I: rho(w)^2 = F^2 is the reflection, rho(-I) = S_{-1} = sigma(-1) * reflection
    w = weyl_element(7)
    rep = homomorphism_check(f7, w, w)
    assert rep.passed
    assert abs(complex(*rep.scalars_summary["scalar"]) - legendre(f7, 6)) <= 1e-9


def test_fourier_of_split_member_is_unit_multiple_of_member(f5):
    # Fourier images of split members stay in the split system up to a unit scalar
    seqs = split_system(f5)
    for s in seqs:
        fs = fourier(s)
        assert any(is_scalar_multiple(t, fs, unit_only=True) is not None for t in seqs)
