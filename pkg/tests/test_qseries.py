import json
import random
from fractions import Fraction as F

import pytest

from qvir.qseries import (QSeries, ZeroConstantTerm, pochhammer, pochhammer_inf,
                          q_binomial)


def series(pairs, trunc=None):
    return QSeries.from_terms(pairs, trunc)


def test_add_cancellation():
    one_q = series([(0, 1), (1, 1)])
    assert one_q + series([(0, -1)]) == series([(1, 1)])


def test_add_identity():
    a = series([(0, 1), (2, -3)], trunc=7)
    assert a + QSeries.zero() == a


def test_add_unifies_denominators():
    s = QSeries.q_power(F(1, 2)) + QSeries.q_power(1)
    assert s.denom == 2
    assert s.coefficient(F(1, 2)) == 1
    assert s.coefficient(1) == 1


def test_mul_geometric_inverse():
    one_minus_q = series([(0, 1), (1, -1)])
    geo = series([(i, 1) for i in range(10)], trunc=10)
    assert (one_minus_q * geo).equal_mod(QSeries.one(), 10)


def test_poch2_hand_expansion():
    assert pochhammer(2) == series([(0, 1), (1, -1), (2, -1), (3, 1)])


def test_mul_identity():
    a = series([(0, 2), (3, F(1, 6))], trunc=9)
    assert a * QSeries.one() == a


def test_mul_trunc_rule_with_orders():
    # q^2 * (unknown beyond q^5) is known up to q^7
    a = series([(0, 1)], trunc=5)
    assert (a * QSeries.q_power(2)).trunc == 7


def test_inverse_geometric():
    inv = series([(0, 1), (1, -1)]).inverse(4)
    assert inv == series([(0, 1), (1, 1), (2, 1), (3, 1)], trunc=4)


def test_inverse_of_one():
    assert QSeries.one().inverse(5).equal_mod(QSeries.one(), 5)


def test_inverse_poch2_counts_parts_le_2():
    inv = pochhammer(2).inverse(5)
    assert [inv.coefficient(i) for i in range(5)] == [1, 1, 2, 2, 3]


def test_inverse_zero_constant_term():
    with pytest.raises(ZeroConstantTerm):
        series([(1, 1)]).inverse(4)


def test_pochhammer_small():
    assert pochhammer(0) == QSeries.one()
    assert pochhammer(1) == series([(0, 1), (1, -1)])
    assert pochhammer(3) == series([(0, 1), (1, -1), (2, -1), (4, 1), (5, 1), (6, -1)])


def test_pochhammer_inf_pentagonal():
    p = pochhammer_inf(6)
    assert [p.coefficient(i) for i in range(6)] == [1, -1, -1, 0, 0, 1]


def test_pochhammer_inf_trivial_order():
    assert pochhammer_inf(1).equal_mod(QSeries.one(), 1)


def pentagonal_sign(n):
    # oracle: the coefficient of q^n in the infinite product by the
    # pentagonal-number expansion
    total = 0
    k = 1
    while k * (3 * k - 1) // 2 <= n:
        for e in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if e == n:
                total += (-1) ** k
        k += 1
    return total if n else 1


def test_pochhammer_inf_vs_pentagonal_oracle():
    p = pochhammer_inf(30)
    for n in range(30):
        assert p.coefficient(n) == pentagonal_sign(n)


def test_q_binomial_examples():
    assert q_binomial(4, 2) == series([(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)])
    assert q_binomial(5, 0) == QSeries.one()
    assert not q_binomial(2, 3)


def test_q_binomial_pascal_exhaustive():
    for m in range(1, 21):
        for n in range(1, m + 1):
            lhs = q_binomial(m, n)
            rhs = q_binomial(m - 1, n - 1) + q_binomial(m - 1, n).shift(n)
            assert lhs == rhs, (m, n)


def test_q_binomial_nonneg_and_degree():
    for m in range(21):
        for n in range(m + 1):
            b = q_binomial(m, n)
            terms = b.terms()
            assert all(c > 0 and c.denominator == 1 for _, c in terms)
            assert max(e for e, _ in terms) == n * (m - n)


def test_q_binomial_limit_is_inverse_pochhammer():
    for n, k in ((8, 3), (12, 4), (15, 2), (20, 7)):
        assert q_binomial(n, k).equal_mod(pochhammer(k).inverse(n - k + 1))


def random_series(rng, trunc, denom=1):
    coeffs = {}
    for k in range(trunc * denom):
        if rng.random() < 0.5:
            coeffs[k] = F(rng.randint(-5, 5), rng.randint(1, 4))
    return QSeries(coeffs, trunc, denom)


def test_ring_laws_random():
    rng = random.Random(20240811)
    for _ in range(25):
        n = rng.randint(3, 9)
        a, b, c = (random_series(rng, n) for _ in range(3))
        assert (a + b).equal_mod(b + a)
        assert (a * b).equal_mod(b * a)
        assert ((a + b) + c).equal_mod(a + (b + c))
        lhs = a * (b + c)
        rhs = a * b + a * c
        assert lhs.equal_mod(rhs, min(lhs.trunc, rhs.trunc))
        prod = (a * b) * c
        assert prod.equal_mod(a * (b * c), prod.trunc)


def test_inverse_property_random():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(3, 10)
        a = random_series(rng, n)
        a = a + QSeries.from_terms([(0, 1 - a.coefficient(0) + 1)])  # nonzero c0
        assert (a * a.inverse()).equal_mod(QSeries.one(), n)


def test_agreement_reports_first_mismatch():
    a = series([(0, 1), (3, 2)], trunc=6)
    b = series([(0, 1), (3, 2), (4, 1)], trunc=8)
    order, first = a.agreement(b)
    assert order == 6 and first == 4


def test_coefficient_beyond_trunc_raises():
    a = series([(0, 1)], trunc=5)
    with pytest.raises(ValueError):
        a.coefficient(5)


def test_json_roundtrip_and_schema():
    s = QSeries.from_terms([(F(1, 2), F(3, 4)), (2, -1)], trunc=F(7, 2))
    d = s.to_json_dict()
    assert set(d) == {"denom", "trunc", "coeffs"}
    assert d["denom"] == 2 and d["trunc"] == "7/2"
    assert d["coeffs"] == [["1/2", "3/4"], ["2", "-1"]]
    assert QSeries.from_json_dict(json.loads(json.dumps(d))) == s


def test_exact_flag_semantics():
    p = pochhammer(3)
    assert p.is_exact
    t = p.truncate(4)
    assert not t.is_exact and t.trunc == 4
    # mixing exact with truncated yields truncated
    assert (p * t).trunc == 4


def test_exact_zero_annihilates():
    z = QSeries.zero()
    t = series([(0, 1)], trunc=5)
    assert (z * t).is_exact and not (z * t)
    # a truncated zero only vanishes as far as it is known
    zt = QSeries.zero(trunc=3)
    assert (zt * t).trunc == 3
