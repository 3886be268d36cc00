from fractions import Fraction

import numpy as np
import pytest

from coxspec.coxeter import typeA, typeB, typeI
from coxspec.groups import conjugacy_classes, enumerate_group, regular_representation
from coxspec.reps import (
    Representation,
    RepresentationError,
    character,
    dihedral_two_dim,
    direct_sum,
    equivalent,
    irrep_table,
    one_dim_reps,
    sign_rep,
    trivial_rep,
)

A2 = typeA(2)


def std_a2():
    return irrep_table(A2)[2]


def test_direct_sum_examples():
    t, s = trivial_rep(A2), sign_rep(A2)
    tt = direct_sum(t, t)
    assert tt.dim == 2 and tt.trace([1]) == 2
    assert direct_sum(t, s).trace([1]) == 0
    r = direct_sum(std_a2(), s)
    assert r.dim == 3 and r.trace([]) == 3


def test_direct_sum_character_is_additive():
    table = enumerate_group(typeB(2))
    irreps = irrep_table(typeB(2))
    total = direct_sum(*irreps)
    acc = character(irreps[0], table)
    for r in irreps[1:]:
        acc = acc + character(r, table)
    assert character(total, table) == acc


def test_direct_sum_errors():
    with pytest.raises(RepresentationError):
        direct_sum(trivial_rep(A2), trivial_rep(typeB(2)))
    with pytest.raises(RepresentationError):
        direct_sum(trivial_rep(A2), trivial_rep(A2).to_float())


def class_order_a2(table):
    """Class indices for (identity, transpositions, 3-cycles)."""
    classes = conjugacy_classes(table)
    size = {len(c): k for k, c in enumerate(classes)}
    return [size[1], size[3], size[2]]


def test_character_examples():
    table = enumerate_group(A2)
    order = class_order_a2(table)
    reg = regular_representation(table)
    assert [character(reg, table).values[k] for k in order] == [6, 0, 0]
    assert set(character(trivial_rep(A2), table).values) == {1}
    assert [character(std_a2(), table).values[k] for k in order] == [2, 0, -1]


def test_character_at_identity_is_dimension():
    table = enumerate_group(typeB(2))
    for r in irrep_table(typeB(2)):
        assert character(r, table).values[0] == r.dim


def test_equivalent_examples():
    table = enumerate_group(A2)
    t, s, std = trivial_rep(A2), sign_rep(A2), std_a2()
    assert equivalent(direct_sum(t, s, std), direct_sum(std, t, s), table)
    assert not equivalent(direct_sum(t, s), std, table)
    rng = np.random.default_rng(0)
    r = direct_sum(std, s, std)
    while True:
        p = rng.integers(-3, 4, (r.dim, r.dim))
        if round(np.linalg.det(p)) != 0:
            break
    q = np.empty(p.shape, dtype=object)
    for idx, v in np.ndenumerate(p):
        q[idx] = Fraction(int(v))
    conj = r.conjugate_by(q)
    assert any(v.denominator != 1 for m in conj.matrices for v in m.flat if isinstance(v, Fraction))
    assert equivalent(r, conj, table)


@pytest.mark.parametrize("sys,count,order", [(A2, 3, 6), (typeB(2), 5, 8), (typeI(5), 4, 10), (typeI(6), 6, 12), (typeI(3), 3, 6)])
def test_irrep_table_sum_of_squares(sys, count, order):
    irreps = irrep_table(sys)
    assert len(irreps) == count
    assert sum(r.dim ** 2 for r in irreps) == order


def test_irrep_table_counts_for_dihedral():
    assert sum(r.dim == 1 for r in irrep_table(typeI(5))) == 2
    assert sum(r.dim == 1 for r in irrep_table(typeI(8))) == 4


@pytest.mark.parametrize("sys", [A2, typeB(2)])
def test_regular_decomposition(sys):
    table = enumerate_group(sys)
    reg = character(regular_representation(table), table)
    acc = None
    for r in irrep_table(sys):
        part = character(r, table).scaled(r.dim)
        acc = part if acc is None else acc + part
    assert reg == acc


@pytest.mark.parametrize("sys", [A2, typeB(2), typeI(4), typeI(5), typeI(6)])
def test_irreps_are_pairwise_inequivalent_and_irreducible(sys):
    table = enumerate_group(sys)
    order = len(table)
    classes = conjugacy_classes(table)
    chars = [character(r, table) for r in irrep_table(sys)]
    for a in chars:
        for b in chars:
            ip = sum(len(c) * complex(x) * complex(y).conjugate() for c, x, y in zip(classes, a.values, b.values)) / order
            assert abs(ip - (1.0 if a is b else 0.0)) <= 1e-9


def test_exact_and_float_dihedral_forms_agree():
    for m, j in [(3, 1), (4, 1), (6, 1), (6, 2)]:
        ex, fl = dihedral_two_dim(m, j), dihedral_two_dim(m, j, exact=False)
        assert ex.exact and not fl.exact
        table = enumerate_group(typeI(m))
        assert character(ex, table).close_to(character(fl, table), 1e-9)
    with pytest.raises(RepresentationError):
        dihedral_two_dim(5, 1, exact=True)
    with pytest.raises(ValueError):
        dihedral_two_dim(6, 3)


def test_validation_rejects_broken_relations():
    with pytest.raises(RepresentationError):
        Representation(A2, [[[0, 1], [1, 0]], [[1, 0], [0, -1]]])  # order of the product is 4, not 3
    with pytest.raises(RepresentationError):
        Representation(A2, [[[1]]])
    with pytest.raises(RepresentationError):
        Representation(A2, [[[1, 0], [0, 1]], [[1]]])


def test_one_dim_reps_tie_odd_edges():
    assert len(one_dim_reps(A2)) == 2
    assert len(one_dim_reps(typeB(3))) == 4
    assert len(one_dim_reps(typeI(7))) == 2


def test_json_round_trip():
    r = direct_sum(std_a2(), sign_rep(A2)).conjugate_by(np.array([[1, 0, 0], [Fraction(1, 2), 1, 0], [0, 0, 1]], dtype=object))
    data = r.to_json()
    assert any("/" in v for m in data["matrices"] for row in m for v in row)
    back = Representation.from_json(data)
    assert all(np.array_equal(a, b) for a, b in zip(back.matrices, r.matrices))
    fl = dihedral_two_dim(5, 2)
    back = Representation.from_json(fl.to_json())
    assert not back.exact and np.allclose(back.matrices[0], fl.matrices[0])
