import random

import pytest

from golodlab import (
    QQ,
    FieldSpec,
    MaxIdealData,
    chain_level_product_vanishing,
    cross_check_kappa,
    herzog_cycles,
    homology_product,
    koszul_complex,
    koszul_mul,
    koszul_of_module,
    koszul_polynomial,
    quotient_algebra,
    residue_field,
    variable_max_ideal_data,
)
from golodlab.errors import CapError, GolodlabError
from golodlab.koszul import KoszulComplex, kappa_bigraded

from conftest import ideal, quotient, ring, shifted_k


def test_complex_shapes_and_square_zero():
    _, A = quotient(["x^3"], "x")
    K = koszul_complex(A)
    assert K.mu == 1
    K.verify_square_zero()
    _, B = quotient(["x^2", "x*y", "y^2"])
    KB = koszul_complex(B)
    assert KB.mu == 2
    # ranks as free modules: C(2, l)
    assert KB.dim(1, 1) == 2 * 1  # two e's over A_0
    KB.verify_square_zero()


def test_square_zero_on_fibre():
    from golodlab import algebra_as_module, generated_subspaces, iterated_fibre, poly_class_vector
    from golodlab.poly import parse_poly

    S, R = quotient(["x^3"], "x")
    subs = generated_subspaces(algebra_as_module(R),
                               [poly_class_vector(R, parse_poly("x", S))])
    A2 = iterated_fibre(R, subs, 2)
    K = koszul_complex(A2, A2.max_ideal())
    K.verify_square_zero()
    assert koszul_polynomial(K) == [1, 3, 2]


def test_kappa_examples():
    _, A = quotient(["x^3"], "x")
    assert koszul_polynomial(koszul_complex(A)) == [1, 1]
    _, B = quotient(["x^2", "x*y", "y^2"])
    assert koszul_polynomial(koszul_complex(B)) == [1, 3, 2]
    KB = koszul_complex(B)
    assert koszul_polynomial(koszul_of_module(KB, residue_field(B))) == [1, 2, 1]


def test_kappa_cross_checks():
    S = ring("xy")
    for texts, expected in [(["x^2", "x*y", "y^2"], [1, 3, 2]),
                            (["x^2", "y^2"], [1, 2, 1]),
                            (["x^3", "x^2*y", "x*y^2", "y^3"], [1, 4, 3])]:
        rep = cross_check_kappa(S, ideal(S, *texts), 8)
        assert rep["kappa_ring"] == expected
    S1 = ring("x")
    assert cross_check_kappa(S1, ideal(S1, "x^3"), 8)["kappa_ring"] == [1, 1]


def test_kappa_needs_artinian_window():
    S = ring("xy")
    with pytest.raises(CapError):
        cross_check_kappa(S, ideal(S, "x^2"), 6)


def test_homology_product_examples():
    _, A = quotient(["x^2", "y^2"])
    K = koszul_complex(A)
    h1 = [h for h in K.homology_basis(min_l=1) if h[0] == 1]
    assert len(h1) == 2
    cls = homology_product(K, h1[0], K, h1[1])
    assert cls, "H_1 . H_1 must be nonzero on a complete intersection"
    # unit acts as identity
    unit = (0, 0, 0)
    for h in K.homology_basis():
        cls = homology_product(K, unit, K, h)
        assert cls == {(h[0], h[1]): [
            QQ.one() if i == h[2] else QQ.zero() for i in range(K.homology_dim(h[0], h[1]))
        ]}


def test_products_vanish_on_certified_golod_instance():
    _, A = quotient(["x^3", "x^2*y", "x*y^2", "y^3"])
    K = koszul_complex(A)
    KM = koszul_of_module(K, residue_field(A))
    for h in K.homology_basis(min_l=1):
        for v in K.homology_basis(min_l=1):
            assert not homology_product(K, h, K, v)
        for v in KM.homology_basis():
            assert not homology_product(K, h, KM, v)


def test_homology_invariant_under_generator_shuffle():
    _, A = quotient(["x^2", "x*y", "y^2"])
    md = variable_max_ideal_data(A)
    shuffled = MaxIdealData(A, list(reversed(md.gens)), md.complete)
    k1 = koszul_polynomial(koszul_complex(A, md))
    k2 = koszul_polynomial(koszul_complex(A, shuffled))
    assert k1 == k2


def test_kappa_bigraded_internal_degrees():
    _, A = quotient(["x^2", "y^2"])
    K = koszul_complex(A)
    assert kappa_bigraded(K) == {(0, 0): 1, (1, 2): 2, (2, 4): 1}


def test_herzog_cycles_l1():
    S = ring("xy")
    for texts, mu_I in [(["x^2", "y^2"], 2),
                        (["x^3", "x^2*y", "x*y^2", "y^3"], 4)]:
        rep = herzog_cycles(S, ideal(S, *texts), 1)
        assert rep["count"] == mu_I
        assert rep["h_dim"] == mu_I
        assert rep["classes_span"]
    S1 = ring("x")
    rep = herzog_cycles(S1, ideal(S1, "x^3"), 1)
    assert rep["count"] == 1 and rep["classes_span"]
    # the single cycle is 3x^2 e_1
    z = rep["cycles"][0]
    (d, vec), = z.parts.items()
    assert d == 3


def test_herzog_cycles_l2_spans():
    S = ring("xy")
    rep = herzog_cycles(S, ideal(S, "x^3", "x^2*y", "x*y^2", "y^3"), 2)
    assert rep["classes_span"]
    assert rep["h_dim"] == 3


def test_herzog_requires_char_zero():
    F = FieldSpec.prime(5)
    S = ring("xy", field=F)
    with pytest.raises(GolodlabError):
        herzog_cycles(S, ideal(S, "x^2"), 1)


def test_chain_level_vanishing_on_huneke_instance():
    S = ring("xy")
    I = ideal(S, "x^3", "x^2*y", "x*y^2", "y^3")
    A = quotient_algebra(S, I, 8)
    K = koszul_complex(A)
    X = []
    for l in (1, 2):
        X.extend(herzog_cycles(S, I, l, A=A, KR=K)["cycles"])
    KM = koszul_of_module(K, residue_field(A))
    Y = [KM.homology_rep(*v) for v in KM.homology_basis()]
    assert chain_level_product_vanishing(K, X, KM, Y)["vanishes"]


def test_chain_level_vanishing_fails_on_ci():
    S = ring("xy")
    I = ideal(S, "x^2", "y^2")
    A = quotient_algebra(S, I, 8)
    K = koszul_complex(A)
    X = herzog_cycles(S, I, 1, A=A, KR=K)["cycles"]
    rep = chain_level_product_vanishing(K, X, None, None)
    assert not rep["vanishes"]


def test_positive_degree_cycles_have_coefficients_in_m():
    """Cycle representatives in homological degree >= 1 never carry unit
    coefficients (minimality of the generator set)."""
    for texts, names in [(["x^2", "y^2"], "xy"), (["x^3", "x^2*y", "x*y^2", "y^3"], "xy")]:
        _, A = quotient(texts, names)
        K = koszul_complex(A)
        for l in range(1, K.mu + 1):
            for z in K.cycle_basis_chains(l):
                for d, vec in z.parts.items():
                    for (T, b), c in zip(K.basis(l, d), vec):
                        if not A.field.is_zero(c):
                            assert d - K.subset_degree(T) >= 1
