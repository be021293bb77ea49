"""Soldering structure, Hamiltonian fields and the structure equation."""

import random
from fractions import Fraction

import pytest

from nsq.algebra import (
    Observable,
    make_pihat,
    make_qhat,
    make_rhat,
    pitag,
    qtag,
    rtag,
    sym_mul,
    sym_pow,
)
from nsq.errors import GaugeConditionError
from nsq.forms import (
    HamVF,
    TwoForm,
    VectorField,
    add_gauge,
    gauge_condition_holds,
    ham_vf,
    lie_preserves_form,
    make_valid_gauge,
    random_valid_gauge,
    soldering_dtheta,
    structure_eq_check,
    vf_bracket,
)
from nsq.polynomials import Poly, pivar, qvar
from nsq.scalars import Scalar


def test_soldering_dtheta():
    one = soldering_dtheta(1)
    assert one[1] == TwoForm({(pivar(1, 1), qvar(1)): Poly.constant(1)})
    two = soldering_dtheta(2)
    assert two[1] == TwoForm(
        {
            (pivar(1, 1), qvar(1)): Poly.constant(1),
            (pivar(1, 2), qvar(2)): Poly.constant(1),
        }
    )
    assert two[2] == TwoForm(
        {
            (pivar(2, 1), qvar(1)): Poly.constant(1),
            (pivar(2, 2), qvar(2)): Poly.constant(1),
        }
    )


def test_generator_fields():
    n = 2
    assert ham_vf(make_qhat(n, 1, 2)).field(()) == VectorField(
        v={(2, 1): Poly.constant(-1)}
    )
    assert ham_vf(make_pihat(n, 2)).field(()) == VectorField(h={2: Poly.constant(1)})
    assert ham_vf(make_rhat(n, 1)).is_zero()


def test_ham_vf_rank2_examples():
    n = 2
    half = Fraction(1, 2)
    # momentum pair: purely horizontal with symmetrized coefficients
    f = sym_mul(make_pihat(n, 1), make_pihat(n, 2))
    x = ham_vf(f)
    for a in (1, 2):
        expected = VectorField(
            h={
                2: Poly.var(pivar(a, 1)).scale(half),
                1: Poly.var(pivar(a, 2)).scale(half),
            }
        )
        assert x.field((a,)) == expected

    # position times the constant generator
    g = sym_mul(make_qhat(n, 1, 1), make_rhat(n, 1))
    xg = ham_vf(g)
    assert xg.field((1,)) == VectorField(v={(1, 1): Poly.constant(-half)})
    assert xg.field((2,)).is_zero()


def test_ham_vf_rank3_example():
    # two positions and one momentum: the sixth/twelfth-weight pattern
    n = 2
    i, j, k = 1, 2, 1
    f = sym_mul(sym_mul(make_qhat(n, i, 1), make_qhat(n, j, 1)), make_pihat(n, k))
    x = ham_vf(f)
    qq = Poly.var(qvar(i)) * Poly.var(qvar(j))
    sixth, twelfth = Fraction(1, 6), Fraction(1, 12)
    expect_11 = VectorField(
        h={k: qq.scale(sixth)},
        v={
            (1, i): (Poly.var(pivar(1, k)) * Poly.var(qvar(j))).scale(-2 * twelfth),
            (1, j): (Poly.var(pivar(1, k)) * Poly.var(qvar(i))).scale(-2 * twelfth),
        },
    )
    assert x.field((1, 1)) == expect_11
    expect_12 = VectorField(
        v={
            (1, i): (Poly.var(pivar(2, k)) * Poly.var(qvar(j))).scale(-twelfth),
            (1, j): (Poly.var(pivar(2, k)) * Poly.var(qvar(i))).scale(-twelfth),
        }
    )
    assert x.field((1, 2)) == expect_12
    assert structure_eq_check(f, x)


def test_structure_eq_check_examples():
    n = 2
    pi1 = make_pihat(n, 1)
    assert structure_eq_check(pi1, ham_vf(pi1))
    # wrong sign fails
    q11 = make_qhat(n, 1, 1)
    wrong = HamVF(n, {(): VectorField(v={(1, 1): Poly.constant(1)})})
    assert not structure_eq_check(q11, wrong)
    f = sym_mul(pi1, make_pihat(n, 2))
    assert structure_eq_check(f, ham_vf(f))


def test_structure_eq_rank_mismatch():
    from nsq.errors import RankMismatch

    n = 2
    f = sym_mul(make_pihat(n, 1), make_pihat(n, 2))  # rank 2
    wrong_grade = ham_vf(sym_mul(f, make_rhat(n, 1)))  # grades of rank 2
    with pytest.raises(RankMismatch):
        structure_eq_check(f, wrong_grade)


def test_structure_eq_exhaustive_degree3():
    n = 2
    tags = (
        [qtag(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        + [pitag(k) for k in range(1, n + 1)]
        + [rtag(k) for k in range(1, n + 1)]
    )
    import itertools

    count = 0
    for deg in (1, 2, 3):
        for mono in itertools.combinations_with_replacement(sorted(tags), deg):
            f = Observable(n, {mono: Scalar.one()})
            assert structure_eq_check(f, ham_vf(f)), mono
            count += 1
    assert count == 164


def test_add_gauge():
    n = 2
    f = sym_mul(make_pihat(n, 1), make_pihat(n, 2))
    x = ham_vf(f)
    assert add_gauge(x, {}) == x

    rng = random.Random(5)
    t = random_valid_gauge(n, 1, rng)
    assert gauge_condition_holds(t, n)
    shifted = add_gauge(x, t)
    assert structure_eq_check(f, shifted)

    # a symmetric nonzero vertical term is rejected
    bad = {(1,): {(1, 1): Poly.constant(1)}}
    assert not gauge_condition_holds(bad, n)
    with pytest.raises(GaugeConditionError):
        add_gauge(x, bad)


def test_make_valid_gauge_projects():
    n = 2
    rng = random.Random(17)
    raw = {
        (1,): {(1, 2): Poly.var(qvar(1)), (2, 1): Poly.constant(3)},
        (2,): {(1, 1): Poly.var(pivar(1, 1))},
    }
    t = make_valid_gauge(raw, n)
    assert gauge_condition_holds(t, n)


def test_vf_bracket_examples():
    n = 2
    x_q = ham_vf(make_qhat(n, 1, 1))
    x_pi = ham_vf(make_pihat(n, 1))
    assert vf_bracket(x_q, x_pi).is_zero()

    f = sym_mul(make_pihat(n, 1), make_pihat(n, 2))
    assert vf_bracket(ham_vf(f), x_pi).is_zero()

    g = sym_mul(make_qhat(n, 1, 1), make_pihat(n, 2))
    nonzero = vf_bracket(ham_vf(g), ham_vf(make_pihat(n, 1)))
    assert not nonzero.is_zero()


def test_lie_preserves_form():
    n = 2
    assert lie_preserves_form(ham_vf(make_pihat(n, 1)))
    f = sym_mul(make_qhat(n, 1, 1), make_qhat(n, 2, 1))
    assert lie_preserves_form(ham_vf(f))
    # a non-Hamiltonian dilation field does not preserve the form
    bad = HamVF(1, {(): VectorField(h={1: Poly.var(qvar(1))})})
    assert not lie_preserves_form(bad)


def test_gauge_never_changes_structure_or_lie_check():
    n = 2
    rng = random.Random(23)
    from nsq.suites import random_full_monomial

    for _ in range(10):
        f = random_full_monomial(n, rng)
        p = f.rank()
        x = ham_vf(f)
        if p >= 2:
            x2 = add_gauge(x, random_valid_gauge(n, p - 1, rng))
            assert structure_eq_check(f, x2)
