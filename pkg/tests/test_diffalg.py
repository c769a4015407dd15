import itertools
import random
from fractions import Fraction as F

import pytest

from qvir.characters import (MinimalModelLabel, andrews_gordon_product,
                             feigin_fuchs_character)
from qvir.diffalg import (DiffPoly, GEN_A, GEN_B, GEN_B_SCALED, ZeroPolynomial,
                          build_element, cached_divided_derivative,
                          claimed_basis_lms, derive, divided_derivative,
                          element_target_lm, grevlex_less, groebner_check,
                          hilbert_quotient, ideal_slice, leading_monomial,
                          membership, monomials_of_weight, prop51_check,
                          verify_derivative_formulas)
from qvir.partitions import count_min2, partitions_min2


GENS = (GEN_A, GEN_B)


# -- order and arithmetic ----------------------------------------------------

def test_grevlex_examples():
    assert grevlex_less((4, 2), (3, 3))
    assert grevlex_less((2,), (3,))
    assert not grevlex_less((3, 2), (3, 2))
    assert grevlex_less((6,), (4, 2))
    assert grevlex_less((3, 3), (2, 2, 2))


def test_grevlex_total_order():
    monos = monomials_of_weight(9)
    for a, b in itertools.combinations(monos, 2):
        assert grevlex_less(a, b) != grevlex_less(b, a)


def test_derive_generator_rule():
    assert derive(DiffPoly.monomial((2,))) == DiffPoly.monomial((3,))
    assert derive(GEN_A) == DiffPoly({(3, 2, 2): 3})
    assert not derive(DiffPoly({(): 1}))


def test_divided_derivative_examples():
    assert divided_derivative(GEN_A, 0) == GEN_A
    assert divided_derivative(GEN_A, 2) == DiffPoly({(4, 2, 2): 3, (3, 3, 2): 3})
    d9 = divided_derivative(GEN_A, 9)
    assert d9.leading_monomial() == (5, 5, 5)
    assert d9.terms[(5, 5, 5)] == 1
    assert d9.terms[(6, 5, 4)] == 6


def divided_power_oracle(n):
    # independent route: the divided derivative of the cube distributes over
    # ordered exponent triples, each factor shifting by one degree per step
    out = {}
    for i in range(n + 1):
        for j in range(n - i + 1):
            l = n - i - j
            mono = tuple(sorted((2 + i, 2 + j, 2 + l), reverse=True))
            out[mono] = out.get(mono, 0) + 1
    return DiffPoly(out)


@pytest.mark.parametrize("n", range(0, 15))
def test_divided_derivative_against_multinomial_oracle(n):
    assert divided_derivative(GEN_A, n) == divided_power_oracle(n)


def test_leibniz_on_random_pairs():
    rng = random.Random(99)
    monos = [m for w in range(2, 9) for m in monomials_of_weight(w)]
    for _ in range(30):
        f = DiffPoly({rng.choice(monos): F(rng.randint(-4, 4), rng.randint(1, 3))
                      for _ in range(2)})
        g = DiffPoly({rng.choice(monos): F(rng.randint(-4, 4), rng.randint(1, 3))
                      for _ in range(2)})
        assert derive(f.mul(g)) == derive(f).mul(g) + f.mul(derive(g))


def test_homogeneous_weight_raised_by_one():
    assert derive(GEN_B).weight() == GEN_B.weight() + 1


def test_leading_monomial_examples():
    assert divided_derivative(GEN_A, 2).leading_monomial() == (3, 3, 2)
    assert GEN_B.leading_monomial() == (4, 3, 2)
    assert DiffPoly.monomial((2,)).leading_monomial() == (2,)
    with pytest.raises(ZeroPolynomial):
        leading_monomial(DiffPoly())


def test_lm_multiplicative():
    monos = [m for w in range(2, 8) for m in monomials_of_weight(w)]
    rng = random.Random(3)
    for _ in range(40):
        f = DiffPoly({rng.choice(monos): 1, rng.choice(monos): F(1, 2)})
        g = DiffPoly({rng.choice(monos): -2, rng.choice(monos): 3})
        if not f or not g:
            continue
        prod = f.mul(g)
        if prod:
            lf, lg = f.leading_monomial(), g.leading_monomial()
            assert prod.leading_monomial() == tuple(sorted(lf + lg, reverse=True))


def test_lm_multiplicative_exhaustive_low_weight():
    for w1 in range(2, 8):
        for w2 in range(2, 15 - w1):
            for a in monomials_of_weight(w1):
                for b in monomials_of_weight(w2):
                    pa, pb = DiffPoly.monomial(a), DiffPoly.monomial(b)
                    assert pa.mul(pb).leading_monomial() == tuple(
                        sorted(a + b, reverse=True))


# -- ideal slices ------------------------------------------------------------

def test_slice_at_generator_weight():
    sl = ideal_slice(GENS, 6)
    assert sl.rank == 1
    assert sl.pivots == ((2, 2, 2),)


def test_slice_below_generators():
    assert ideal_slice(GENS, 5).rank == 0


def test_slice_weight_9():
    sl = ideal_slice(GENS, 9)
    assert (4, 3, 2) in sl.pivots
    assert (3, 3, 3) in sl.pivots


def test_slice_rows_are_reduced_and_monic():
    sl = ideal_slice(GENS, 12)
    pivots = set(sl.pivots)
    for row in sl.rows:
        assert row.terms[row.leading_monomial()] == 1
        for m in row.terms:
            assert m == row.leading_monomial() or m not in pivots


def test_membership_examples():
    assert membership(GEN_A, GENS)
    assert membership(GEN_B, GENS)
    assert membership(DiffPoly.monomial((5, 4, 2, 2)), GENS)
    assert not membership(DiffPoly.monomial((3, 2)), GENS)


def test_membership_printed_monomial_combination():
    # the exceptional weight-13 monomial is literally an ideal element:
    # (3 L2 d^2 b - 18 L4 b - 19 L5 d^2 a - 88 L6 d a - 60 L7 a) / 204
    # with the raw (not divided) derivatives of the scaled generator
    d2b = derive(derive(GEN_B_SCALED))
    d2a = derive(derive(GEN_A))
    da = derive(GEN_A)
    combo = (d2b.mul_monomial((2,), 3) + GEN_B_SCALED.mul_monomial((4,), -18)
             + d2a.mul_monomial((5,), -19) + da.mul_monomial((6,), -88)
             + GEN_A.mul_monomial((7,), -60)).scale(F(1, 204))
    assert combo == DiffPoly.monomial((5, 4, 2, 2))


def test_hilbert_free_algebra():
    h = hilbert_quotient((), 10)
    for n in range(11):
        assert h.coefficient(n) == count_min2(n)


def test_hilbert_main_quotient():
    h = hilbert_quotient(GENS, 30)
    ff = feigin_fuchs_character(MinimalModelLabel(3, 4), 31)
    assert h.equal_mod(ff, 31)


@pytest.mark.parametrize("s", [2, 3])
def test_hilbert_power_ideal_vs_andrews_gordon(s):
    h = hilbert_quotient((DiffPoly({(2,) * s: 1}),), 25)
    assert h.equal_mod(andrews_gordon_product(s, 26), 26)


def test_hilbert_missing_generator_deviates_at_9():
    h = hilbert_quotient((GEN_A,), 10)
    ff = feigin_fuchs_character(MinimalModelLabel(3, 4), 11)
    _, first = h.agreement(ff)
    assert first == 9


def test_scaled_generator_spans_same_ideal():
    for d in range(6, 16):
        assert ideal_slice(GENS, d).pivots == \
            ideal_slice((GEN_A, GEN_B_SCALED), d).pivots


# -- the printed expansions and elements -------------------------------------

def test_derivative_formula_tables():
    rep = verify_derivative_formulas(3)
    assert rep["passed"], [e for e in rep["entries"] if not e["passed"]][:1]


def test_scaled_generator_expansion_values():
    d6 = cached_divided_derivative(GEN_B_SCALED, 6)
    assert d6.terms[(5, 5, 5)] == 55
    d9 = cached_divided_derivative(GEN_A, 9)
    assert d9.terms[(6, 5, 4)] == 6


def test_element_r0():
    r0 = build_element("r", 0)
    assert r0 == cached_divided_derivative(GEN_B_SCALED, 1) \
        - cached_divided_derivative(GEN_A, 4).scale(2)
    assert r0.leading_monomial() == (4, 4, 2)


def test_element_t0_is_scaled_generator():
    assert build_element("t", 0) == GEN_B_SCALED
    assert build_element("t", 0).leading_monomial() == (4, 3, 2)


def test_element_e1():
    e1 = build_element("e1")
    assert e1.leading_monomial() == (5, 4, 2, 2)


def test_element_z0():
    assert build_element("z", 0).leading_monomial() == (8, 7, 5, 3, 2)


@pytest.mark.parametrize("fam", ["r", "s", "t", "u", "v", "w", "y", "z"])
def test_element_leading_monomials_k_le_5(fam):
    for k in range(6):
        el = build_element(fam, k)
        assert el.leading_monomial() == element_target_lm(fam, k), (fam, k)


def test_prop51_small():
    rep = prop51_check(2)
    assert rep["passed"]
    assert not rep["findings"]
    pats = {tuple(e["pattern"]) for e in rep["entries"]}
    assert (2, 2, 2) in pats and (3, 3, 2) in pats and (8, 7, 5, 3, 2) in pats


def test_element_membership_sampled():
    for fam, k in (("r", 4), ("s", 3), ("u", 2), ("v", 1), ("w", 2),
                   ("y", 3), ("z", 1), ("e2", 0), ("e4", 0)):
        assert membership(build_element(fam, k), GENS), (fam, k)


# -- the degreewise Groebner property ----------------------------------------

def test_groebner_small():
    rep = groebner_check(14)
    assert rep["passed"]


def test_groebner_w_family_is_required():
    rep = groebner_check(17)
    assert rep["passed"]
    assert rep["w_family_required"]
    assert [6, 5, 3, 2] in rep["w_only_monomials"]


def test_claimed_lms_match_computed_lms():
    for lm in claimed_basis_lms(20, include_w=True):
        assert sum(lm) <= 20


def test_json_roundtrip():
    d = GEN_B.to_json_dict()
    assert d["weight"] == 9
    assert DiffPoly.from_json_dict(d) == GEN_B
