"""The power maps: examples, the multiplication-by-c composites, exactness of
the mixed-power sequence, and equivariance under derivation actions."""

import random
from math import factorial

import pytest

from lietorsion.elements import (IntegralityError, MixedElement, ZZ,
                                 generator_element, normal_form)
from lietorsion.maps import (ActionSpec, check_exactness, derive, eta, kappa,
                             lam, metabelian_normal_coords, metabelian_of_word,
                             mu, normal_words, nu, random_action,
                             random_homogeneous, random_metabelian, rho, theta,
                             theta_presum)
from lietorsion.torsion import a_action, a_alphabet
from lietorsion.words import Alphabet, Generator, unit_alphabet

AB2 = unit_alphabet(2)
AB3 = unit_alphabet(3)
X, Y = 0, 1


def lie(tree, ab=AB2):
    gens = ab.generators

    def conv(t):
        return (conv(t[0]), conv(t[1])) if isinstance(t, tuple) else gens[t]

    return normal_form(ab, conv(tree))


def test_nu_examples():
    assert nu(lie((X, Y)), 2).terms == {(0, 1): 1, (1, 0): -1}
    assert nu(generator_element(AB2, 0), 1).terms == {(0,): 1}
    e = lie(((X, Y), Y))
    assert nu(e, 3).terms == {(0, 1, 1): 1, (1, 0, 1): -2, (1, 1, 0): 1}


def test_nu_rejects_inhomogeneous():
    e = lie((X, Y)) + generator_element(AB2, 0)
    with pytest.raises(ValueError):
        nu(e)


def test_rho_examples():
    from lietorsion.elements import TensorElement
    t = TensorElement(AB2, ZZ, {(0, 1): 1})
    assert rho(t).terms == {(0, 1): 1}
    assert rho(TensorElement(AB2, ZZ, {(0, 0): 1})).is_zero()
    t3 = TensorElement(AB2, ZZ, {(0, 1, 1): 1})
    assert rho(t3).terms == {(0, 1, 1): 1}


def test_mu_examples():
    m = mu((0, 1), alphabet=AB2)
    assert m.terms == {(0, (1,)): 1, (1, (0,)): -1}
    m = mu((1, 0, 0), alphabet=AB2)
    assert m.terms == {(1, (0, 0)): 1, (0, (0, 1)): -1}
    m2 = mu(2 * metabelian_of_word(AB2, (1, 0)))
    assert m2.terms == {(1, (0,)): 2, (0, (1,)): -2}
    with pytest.raises(ValueError):
        mu((0,), alphabet=AB2)


def test_kappa_examples():
    t = MixedElement(AB2, ZZ, {(0, (1,)): 1})
    assert kappa(t).terms == {(0, 1): 1}
    assert kappa(mu(metabelian_of_word(AB2, (1, 0)))).is_zero()
    t2 = MixedElement(AB2, ZZ, {(0, (0, 0)): 1})
    assert kappa(t2).terms == {(0, 0, 0): 1}


def test_lambda_examples():
    ab = unit_alphabet(3)
    t = MixedElement(ab, ZZ, {(0, (1,)): 1})
    assert lam(t, 2) == metabelian_of_word(ab, (0, 1))
    t3 = MixedElement(ab, ZZ, {(0, (1, 2)): 1})
    expected = metabelian_of_word(ab, (0, 1, 2)) + metabelian_of_word(ab, (0, 2, 1))
    assert lam(t3, 3) == expected


def test_mu_lambda_is_multiplication_by_c():
    rng = random.Random(31)
    for c in (2, 3, 4, 5):
        for ab in (AB2, AB3):
            for _ in range(30):
                m = random_metabelian(ab, c, rng)
                assert lam(mu(m), c) == c * m


def test_eta_examples():
    assert eta(lie((X, Y))).mixed.terms == {(0, (1,)): 1, (1, (0,)): -1}
    ab4 = unit_alphabet(4)
    e = lie(((0, 1), (2, 3)), ab4)
    assert eta(e, 4).is_zero()
    e3 = lie(((Y, X), Y))
    assert eta(e3).mixed.terms == {(1, (0, 1)): 1, (0, (1, 1)): -1}


def test_theta_examples():
    out = theta((0, 1), alphabet=AB2)
    assert out.terms == {(0, 1): 1}
    ab3 = unit_alphabet(3)
    out3 = theta((0, 1, 2), alphabet=ab3)
    assert out3 == lie((((0, 1), 2)), ab3)


def test_theta_eta_composite():
    rng = random.Random(32)
    for c in (2, 3, 5):
        fact = factorial(c - 2)
        for ab in (AB2, AB3):
            for w in normal_words(ab, c):
                m = metabelian_of_word(ab, w)
                assert eta(theta(m)) == fact * m
            for _ in range(20):
                m = random_metabelian(ab, c, rng)
                assert eta(theta(m), c) == fact * m
    # composite degree over rank 2 also lands integrally
    for c in (4, 6):
        fact = factorial(c - 2)
        for w in normal_words(AB2, c):
            m = metabelian_of_word(AB2, w)
            assert eta(theta(m)) == fact * m


def test_theta_integrality_falsified_at_composite_degree_rank3():
    # the compact double-sum form is not 1/c-integral for composite c once the
    # alphabet has rank 3; the smallest witness is [y,x,x,z] at c = 4
    witnesses = [w for w in normal_words(AB3, 4)
                 if any(c % 4 for c in theta_presum(AB3, w).terms.values())]
    assert witnesses == [(1, 0, 0, 2), (1, 0, 1, 2), (2, 0, 0, 1), (2, 0, 1, 2)]
    with pytest.raises(IntegralityError):
        theta(witnesses[0], alphabet=AB3)
    # the composite identity itself still holds for the rational value
    from lietorsion.elements import QQ
    from fractions import Fraction
    for w in witnesses:
        pre = theta_presum(AB3, w, domain=QQ)
        rational_theta = Fraction(1, 4) * pre
        assert eta(rational_theta) == 2 * metabelian_of_word(AB3, w, QQ)


def test_theta_integrality_prime_degrees():
    for ab in (AB2, AB3):
        for c in (2, 3, 5):
            for w in normal_words(ab, c):
                pre = theta_presum(ab, w)
                assert all(coeff % c == 0 for coeff in pre.terms.values())


def test_metabelian_normal_coords_roundtrip():
    rng = random.Random(33)
    for c in (2, 3, 4):
        for _ in range(20):
            m = random_metabelian(AB3, c, rng)
            coords = metabelian_normal_coords(m)
            rebuilt = sum((coeff * metabelian_of_word(AB3, w) for w, coeff in coords.items()),
                          start=0 * metabelian_of_word(AB3, (1,) + (0,) * (c - 1)))
            assert rebuilt == m
    from lietorsion.elements import DomainError
    stray = MixedElement(AB2, ZZ, {(0, (1,)): 1})
    with pytest.raises(DomainError):
        metabelian_normal_coords(
            __import__("lietorsion.maps", fromlist=["MetabelianElement"]).MetabelianElement(2, stray))


def test_derive_examples_on_derived_alphabet():
    ab = a_alphabet(4)
    act = a_action(ab)
    u00 = ab.index("u(0,0)")
    e = generator_element(ab, u00)
    assert derive(e, "x", act).terms == {(ab.index("u(1,0)"),): 1}
    # [u00, u10] x = [u00, u20]  (the [u10,u10] term vanishes)
    u10 = ab.index("u(1,0)")
    m = normal_form(ab, (ab.generators[u00], ab.generators[u10]))
    image = derive(m, "x", act)
    expected = normal_form(ab, (ab.generators[u00], ab.generators[ab.index("u(2,0)")]))
    assert image == expected
    # Leibniz on a mixed element
    mixed = MixedElement(ab, ZZ, {(u00, (u00, u00)): 1})
    out = derive(mixed, "y", act)
    u01 = ab.index("u(0,1)")
    assert out.terms == {(u01, (u00, u00)): 1,
                         (u00, tuple(sorted((u01, u00)))): 2}


def test_derive_unknown_variable():
    ab = a_alphabet(3)
    act = a_action(ab)
    with pytest.raises(KeyError):
        derive(generator_element(ab, 0), "z", act)


def test_equivariance_of_all_maps():
    rng = random.Random(34)
    for ab in (AB2, AB3):
        spec = random_action(ab, ("x", "y"), rng)
        for c in (2, 3, 4):
            for _ in range(10):
                e = random_homogeneous(ab, c, rng)
                m = random_metabelian(ab, c, rng)
                for var in ("x", "y"):
                    assert derive(nu(e), var, spec) == nu(derive(e, var, spec))
                    assert rho(derive(nu(e), var, spec)) == derive(rho(nu(e)), var, spec)
                    assert derive(mu(m), var, spec) == mu(derive(m, var, spec))
                    assert derive(kappa(mu(m)), var, spec) == kappa(derive(mu(m), var, spec))
                    assert derive(lam(mu(m), c), var, spec) == lam(derive(mu(m), var, spec), c)
                    assert derive(eta(e, c), var, spec) == eta(derive(e, var, spec), c)
                    if c != 4:
                        assert derive(theta(m), var, spec) == theta(derive(m, var, spec))


def test_exactness_examples():
    r = check_exactness(2, AB2, 2)
    assert r.passed and (r.rank_metabelian, r.rank_mixed, r.rank_sym) == (1, 4, 3)
    r1 = check_exactness(2, unit_alphabet(["x"]), 2)
    assert r1.passed and r1.rank_metabelian == 0
    r3 = check_exactness(3, AB2, 3)
    assert r3.passed and (r3.rank_metabelian, r3.rank_mixed, r3.rank_sym) == (2, 6, 4)
    assert r3.rank_mixed == r3.rank_metabelian + r3.rank_sym


@pytest.mark.parametrize("c", [2, 3, 4, 5])
@pytest.mark.parametrize("rank", [2, 3])
def test_exactness_unit_alphabets(c, rank):
    assert check_exactness(c, unit_alphabet(rank), c).passed


def test_exactness_weighted_alphabet():
    gens = [Generator("a", (1, 0)), Generator("b", (0, 2))]
    ab = Alphabet(gens)
    for c in (2, 3, 4, 5):
        r = check_exactness(c, ab, 8)
        assert r.passed


def test_normal_words_shape():
    words = normal_words(AB2, 5)
    assert words == [(1, 0, 0, 0, 0), (1, 0, 0, 0, 1), (1, 0, 0, 1, 1), (1, 0, 1, 1, 1)]
    for w in normal_words(AB3, 4):
        assert w[0] > w[1] and list(w[1:]) == sorted(w[1:])


def test_action_spec_validation():
    with pytest.raises(ValueError):
        ActionSpec(AB2, ("x",), {(0, "q"): {0: 1}})
    spec = ActionSpec(AB2, ("x",), {(0, "x"): {1: 1}})
    assert not spec.is_total()
    with pytest.raises(KeyError):
        spec.image(1, "x")
