import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.optimize

from coxspec.coxeter import typeA, typeB, typeI
from coxspec.groups import enumerate_group, realize_generator, regular_representation
from coxspec.polyalg import MultiPoly, det_exact
from coxspec.reps import dihedral_two_dim, direct_sum, irrep_table, one_dim_reps, sign_rep, trivial_rep
from coxspec.spectra import (
    alpha_candidates,
    bivariate_slice,
    canonical_block,
    compare_spectra,
    curve_identity_check,
    decompose_involution_pair,
    dihedral_report,
    ellipse_point,
    in_candidates,
    joint_spectrum,
    joint_spectrum_float,
    kernel_dimension,
    proper_spectrum,
    random_orthogonal,
    scrambled_pair,
    signature_trace_sum,
    verify_relation_chebyshev,
)

A2, B2 = typeA(2), typeB(2)
x0, x1, x2 = (MultiPoly.var(3, k) for k in range(3))
X, Y = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
DIAG = [[1, 0], [0, -1]]
SWAP = [[0, 1], [1, 0]]


def reg(sys):
    return regular_representation(enumerate_group(sys))


def test_joint_spectrum_examples():
    assert joint_spectrum(trivial_rep(A2)).poly == x0 + x1 + x2
    assert joint_spectrum(sign_rep(A2)).poly == x0 - x1 - x2
    quad = x0 * x0 - x1 * x1 - x2 * x2 + x1 * x2
    sp = joint_spectrum(reg(A2))
    assert sp.poly == ((x0 + x1 + x2) * (x0 - x1 - x2) * quad * quad).normalize()
    assert sp.degree == 6


def test_joint_spectrum_requires_exact_rep():
    with pytest.raises(ValueError):
        joint_spectrum(dihedral_two_dim(5, 1))


@pytest.mark.parametrize("sys", [A2, B2])
def test_frobenius_consistency(sys):
    expected = MultiPoly.constant(3, 1)
    for r in irrep_table(sys):
        expected = expected * joint_spectrum(r).poly ** r.dim
    sp = joint_spectrum(reg(sys))
    assert sp.poly == expected.normalize()
    assert sp.degree == len(enumerate_group(sys))


def test_both_determinant_paths_agree_on_regular_reps():
    for sys in (A2, B2):
        r = reg(sys)
        assert joint_spectrum(r).poly == joint_spectrum(r, method="interpolate").poly


def test_float_path_close_to_exact():
    r = direct_sum(*irrep_table(B2))
    exact = joint_spectrum(r).poly.to_float().normalize()
    approx = joint_spectrum_float(r.to_float(), seed=3).poly
    assert exact.max_coefficient_distance(approx) <= 1e-9


def test_proper_spectrum_examples():
    p = MultiPoly.var(2, 0) + MultiPoly.var(2, 1)
    assert proper_spectrum(p) == MultiPoly.var(1, 0) - 1
    q = MultiPoly.var(2, 0) ** 2 - MultiPoly.var(2, 1) ** 2
    assert proper_spectrum(q) == MultiPoly.var(1, 0) ** 2 - 1


def test_proper_spectrum_matches_direct_determinants():
    r = reg(A2)
    f = proper_spectrum(joint_spectrum(r))
    a1, a2 = r.matrices
    ident = np.eye(6, dtype=int)
    ratios = set()
    for u in [(1, 1), (-1, -1), (2, -3), (Fraction(1, 2), 5)]:
        direct = det_exact(-ident + u[0] * a1 + u[1] * a2)
        val = f.eval_at(u)
        assert (direct == 0) == (val == 0)
        if direct:
            ratios.add(Fraction(val) / Fraction(direct))
    assert len(ratios) == 1
    c = ratios.pop()
    d_pp = det_exact(-ident + a1 + a2)
    d_mm = det_exact(-ident - a1 - a2)
    assert f.eval_at((1, 1)) * f.eval_at((-1, -1)) == c * c * d_pp * d_mm


def test_bivariate_slice_examples():
    r = reg(B2)
    expected = (((X + Y) ** 2 - 1) * ((X - Y) ** 2 - 1) * (X * X + Y * Y - 1) ** 2).normalize()
    assert bivariate_slice(joint_spectrum(r), 1, 2) == expected
    a3 = typeA(3)
    s = direct_sum(trivial_rep(a3), sign_rep(a3))
    sl = bivariate_slice(joint_spectrum(s), 1, 3)
    assert sl == (sl.exact_div(X + Y - 1) * (X + Y - 1))
    sp = joint_spectrum(reg(A2))
    assert bivariate_slice(sp, 1, 2) == proper_spectrum(sp)
    with pytest.raises(ValueError):
        bivariate_slice(sp, 2, 1)
    with pytest.raises(ValueError):
        bivariate_slice(sp, 1, 3)


def test_dihedral_report_examples():
    rep = dihedral_report(DIAG, SWAP)
    assert not any(rep.lines.values()) and rep.ellipses == [(0, 1)]
    assert rep.polynomial() == (X * X + Y * Y - 1)
    rep = dihedral_report(DIAG, DIAG)
    assert rep.lines == {"x+y=1": 1, "x+y=-1": 1, "x-y=1": 0, "x-y=-1": 0}
    assert rep.ellipses == []
    r = reg(B2)
    rep = dihedral_report(*r.matrices)
    assert all(v == 1 for v in rep.lines.values()) and rep.ellipses == [(0, 2)]
    assert rep.polynomial() == bivariate_slice(joint_spectrum(r), 1, 2)


def test_dihedral_report_rejects_non_involutions():
    with pytest.raises(ValueError):
        dihedral_report([[1, 1], [0, 1]], SWAP)


def test_dihedral_report_exact_and_float_agree_on_a2():
    r = reg(A2)
    ex = dihedral_report(*r.matrices)
    fl = dihedral_report(*r.to_float().matrices)
    assert ex.lines == fl.lines
    assert [(float(a), n) for a, n in ex.ellipses] == [(float(a), n) for a, n in fl.ellipses]
    assert ex.ellipses == [(-1, 2)]


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_dihedral_accounting_and_candidates(m):
    rng = np.random.default_rng(m)
    pool = [r.to_float() for r in one_dim_reps(typeI(m))]
    pool += [dihedral_two_dim(m, j, exact=False) for j in range(1, (m + 1) // 2) if j < m / 2]
    for _ in range(5):
        parts = [pool[int(k)] for k in rng.integers(0, len(pool), size=4)]
        r = direct_sum(*parts)
        q = random_orthogonal(r.dim, rng)
        a1, a2 = q @ r.matrices[0] @ q.T, q @ r.matrices[1] @ q.T
        rep = dihedral_report(a1, a2)
        assert rep.accounted_dim() == r.dim and not rep.residual
        assert all(in_candidates(a, m) for a in rep.alphas())
        assert all(abs(float(a)) < 2 for a, _ in rep.ellipses)


def test_alpha_candidates_examples():
    assert alpha_candidates(2) == [2.0, -2.0]
    assert alpha_candidates(4) == [2.0, 0.0, -2.0]
    assert alpha_candidates(3) == [2.0, -1.0]
    assert len(alpha_candidates(5)) == 3
    with pytest.raises(ValueError):
        alpha_candidates(1)


def test_verify_relation_chebyshev_examples():
    g1, g2 = (realize_generator(i, A2).matrix() for i in (1, 2))
    assert verify_relation_chebyshev(g1, g2, 3)
    assert not verify_relation_chebyshev(g1, g2, 2)
    assert verify_relation_chebyshev(g1, g2, 6)
    b1, b2 = (realize_generator(i, B2).matrix() for i in (1, 2))
    assert verify_relation_chebyshev(b1, b2, 4)
    assert not verify_relation_chebyshev(b1, b2, 3)
    with pytest.raises(ValueError):
        verify_relation_chebyshev([[1, 1], [0, 1]], g1[:2, :2], 3)


def test_verify_relation_chebyshev_on_dihedral_irreps():
    for m, j in [(3, 1), (4, 1), (6, 1), (6, 2)]:
        r = dihedral_two_dim(m, j)
        order = m // math.gcd(m, j)
        for mp in range(2, 2 * m + 1):
            assert verify_relation_chebyshev(*r.matrices, mp) == (mp % order == 0)


def test_curve_identity_circle():
    rep = curve_identity_check(DIAG, SWAP, 1.0, tol=1e-10)
    assert rep.hypothesis_met and rep.ok
    assert abs(rep.x1p) <= 1e-12 and abs(rep.x1pp + 1) <= 1e-10
    assert rep.residual1 <= 1e-10 and rep.residual2 <= 1e-10


def test_curve_identity_zero_a2():
    a1 = np.diag([2.0, -1.0, 3.0])
    rep = curve_identity_check(a1, np.zeros((3, 3)), 2.0)
    assert rep.ok and rep.x1p == 0 and rep.residual1 == 0


def test_curve_identity_hypothesis_failures():
    a1 = np.diag([1.0, 1.0, 2.0])
    assert not curve_identity_check(a1, np.eye(3), 1.0).hypothesis_met
    assert "not a simple" in curve_identity_check(a1, np.eye(3), 1.0).reason
    assert not curve_identity_check(np.diag([0.0, 1.0]), np.eye(2), 0.0).hypothesis_met
    assert not curve_identity_check(a1, np.eye(3), 5.0).hypothesis_met
    with pytest.raises(ValueError):
        curve_identity_check([[0, 1], [0, 0]], np.eye(2), 1.0)


def det_tracking(a1, a2, lam, t):
    """x(t) by bracketing root-finding of det(-I + x A1 + t A2) near 1/lam; independent oracle."""
    n = len(a1)
    f = lambda x: np.linalg.det(-np.eye(n) + x * a1 + t * a2)
    x0 = 1.0 / lam
    w = 0.02 * abs(x0)
    return scipy.optimize.brentq(f, x0 - w, x0 + w, xtol=1e-15, rtol=1e-15)


@pytest.mark.parametrize("seed", range(6))
def test_curve_identity_random_against_root_tracking(seed):
    rng = np.random.default_rng(seed)
    n = 4
    q = random_orthogonal(n, rng)
    lam_all = np.array([1.0, 2.0, -1.5, 3.5])
    a1 = q @ np.diag(lam_all) @ q.T
    b = rng.normal(size=(n, n))
    a2 = (b + b.T) / 2
    lam = float(lam_all[seed % n])
    rep = curve_identity_check(a1, a2, lam)
    assert rep.hypothesis_met and rep.ok
    h = 1e-4
    xp_, x0_, xm_ = (det_tracking(a1, a2, lam, t) for t in (h, 0.0, -h))
    fd1 = (xp_ - xm_) / (2 * h)
    fd2 = (xp_ - 2 * x0_ + xm_) / h**2
    assert abs(fd1 - rep.x1p) <= 1e-6 * max(1, abs(rep.x1p))
    assert abs(fd2 - rep.x1pp) <= 1e-4 * max(1, abs(rep.x1pp))
    assert abs(rep.fd_x1p - rep.x1p) <= 1e-6 * max(1, abs(rep.x1p))
    assert abs(rep.fd_x1pp - rep.x1pp) <= 1e-6 * max(1, abs(rep.x1pp))


def test_decompose_c1_c2_pair():
    c1 = np.kron(np.eye(2), np.array(DIAG, dtype=float))
    c2 = np.kron(np.eye(2), np.array(SWAP, dtype=float))
    dec = decompose_involution_pair(c1, c2)
    assert len(dec.blocks) == 2 and dec.common == []
    assert all(abs(t - 0.25) <= 1e-12 for t in dec.thetas)
    assert dec.reassembly_error(c1, c2) <= 1e-12


def test_decompose_common_eigenvectors_only():
    a1, a2 = np.diag([1.0, -1.0]), np.diag([1.0, 1.0])
    dec = decompose_involution_pair(a1, a2)
    assert dec.blocks == [] and sorted(s for s, _ in dec.common) == [(-1, 1), (1, 1)]


def test_decompose_scrambled_blocks():
    rng = np.random.default_rng(0)
    thetas = [0.2, 0.4, 0.2]
    a1, a2 = scrambled_pair(thetas, [(1, -1), (-1, -1)], rng)
    dec = decompose_involution_pair(a1, a2)
    assert np.allclose(dec.thetas, sorted(thetas), atol=1e-6)
    assert sorted(s for s, _ in dec.common) == [(-1, -1), (1, -1)]
    assert dec.reassembly_error(a1, a2) <= 1e-10
    u = dec.unitary()
    assert np.allclose(u.T @ u, np.eye(len(u)), atol=1e-10)
    for b in dec.blocks:
        m1, m2 = canonical_block(b.theta)
        assert np.allclose(b.basis.T @ a1 @ b.basis, m1, atol=1e-10)
        assert np.allclose(b.basis.T @ a2 @ b.basis, m2, atol=1e-10)


def test_decompose_eigenvalue_lists_match():
    rng = np.random.default_rng(4)
    a1, a2 = scrambled_pair([1 / 7, 3 / 7], [(1, 1)], rng)
    dec = decompose_involution_pair(a1, a2)
    c1, c2 = dec.canonical_pair()
    for a, c in ((a1, c1), (a2, c2), (a1 @ a2 + a2 @ a1, c1 @ c2 + c2 @ c1)):
        assert np.allclose(np.linalg.eigvalsh(a), np.linalg.eigvalsh(c), atol=1e-10)


def test_decompose_tolerance_violation():
    with pytest.raises(ValueError):
        decompose_involution_pair(np.diag([1.0, 0.5]), np.eye(2))
    with pytest.raises(ValueError):
        decompose_involution_pair(np.array([[1.0, 1.0], [0.0, -1.0]]), np.eye(2))


def test_compare_spectra_examples():
    t, s, std = irrep_table(A2)
    r = direct_sum(t, std, s)
    assert compare_spectra(r, r)
    assert not compare_spectra(direct_sum(t, s), std)
    assert compare_spectra(direct_sum(t, std, s), direct_sum(s, t, std))
    assert not compare_spectra(t, direct_sum(t, t))


def test_signature_trace_sum_examples():
    r = reg(A2)
    assert signature_trace_sum(r, (1, 0)) == r.trace([1])
    assert signature_trace_sum(r, (1, 1)) == 0
    assert signature_trace_sum(r, (2, 0)) == 6
    with pytest.raises(ValueError):
        signature_trace_sum(r, (5, 4))
    with pytest.raises(ValueError):
        signature_trace_sum(r, (1, 0, 0))


def test_signature_trace_sum_enumerates_distinct_words():
    from coxspec.spectra import multiset_permutations

    words = list(multiset_permutations((2, 1)))
    assert words == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert len(list(multiset_permutations((2, 2, 1)))) == 30


@pytest.mark.parametrize("m,j", [(5, 1), (5, 2), (7, 3), (6, 1)])
def test_kernel_dimension_equals_multiplicity(m, j):
    rng = np.random.default_rng(m * 10 + j)
    rho = dihedral_two_dim(m, j, exact=False)
    other = dihedral_two_dim(m, 2 if j == 1 else 1, exact=False)
    r = direct_sum(rho, rho, other)
    q = random_orthogonal(r.dim, rng)
    a1, a2 = q @ r.matrices[0] @ q.T, q @ r.matrices[1] @ q.T
    alpha = 2 * math.cos(2 * math.pi * j / m)
    for _ in range(5):
        u = ellipse_point(alpha, rng)
        assert abs(u[0] ** 2 + alpha * u[0] * u[1] + u[1] ** 2 - 1) <= 1e-12
        assert kernel_dimension(a1, a2, u) == 2
