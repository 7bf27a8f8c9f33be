import pytest

from golodlab import (
    koszul_complex,
    koszul_of_module,
    homology_product,
    massey_product,
    residue_field,
)
from golodlab.errors import GolodlabError

from conftest import quotient


def _complexes(texts, names="xy"):
    _, A = quotient(texts, names)
    K = koszul_complex(A)
    KM = koszul_of_module(K, residue_field(A))
    return A, K, KM


def test_n2_matches_homology_product():
    A, K, KM = _complexes(["x^2", "y^2"])
    basis = K.homology_basis(min_l=1)
    for a in basis:
        for b in basis:
            r = massey_product(K, None, [a, b], mode="ring")
            prod = homology_product(K, a, K, b)
            assert (r.kind == "NonVanishing") == bool(prod), (a, b)


def test_nonvanishing_witness_on_complete_intersection():
    A, K, KM = _complexes(["x^2", "y^2"])
    h1 = [h for h in K.homology_basis(min_l=1) if h[0] == 1]
    r = massey_product(K, None, [h1[0], h1[1]], mode="ring")
    assert r.kind == "NonVanishing"
    # the witness was re-verified inside; the class data is reported
    assert r.data["witness_class"]


def test_all_vanish_on_certified_golod_instance_n2():
    A, K, KM = _complexes(["x^3", "x^2*y", "x*y^2", "y^3"])
    for v1 in KM.homology_basis():
        for v2 in K.homology_basis(min_l=1):
            r = massey_product(K, KM, [v1, v2], mode="module")
            assert r.kind == "Vanishes", (v1, v2, r.kind)


def test_all_vanish_on_certified_golod_instance_n3_sample():
    A, K, KM = _complexes(["x^3", "x^2*y", "x*y^2", "y^3"])
    ring_basis = K.homology_basis(min_l=1)
    mod_basis = KM.homology_basis()
    for v1 in mod_basis[:2]:
        for v2 in ring_basis[:3]:
            for v3 in ring_basis[:3]:
                r = massey_product(K, KM, [v1, v2, v3], mode="module")
                assert r.kind == "Vanishes"


def test_ring_mode_triples_on_hypersurface():
    A, K, KM = _complexes(["x^3"], "x")
    basis = K.homology_basis(min_l=1)
    assert len(basis) == 1
    r = massey_product(K, None, [basis[0]] * 3, mode="ring")
    assert r.kind == "Vanishes"


def test_mode_validation():
    A, K, KM = _complexes(["x^2", "y^2"])
    with pytest.raises(GolodlabError):
        massey_product(K, None, [(1, 2, 0)], mode="ring")
    with pytest.raises(GolodlabError):
        massey_product(K, None, [(0, 0, 0), (1, 2, 0)], mode="ring")
    with pytest.raises(GolodlabError):
        massey_product(K, None, [(1, 2, 0), (1, 2, 1)], mode="module")


def test_finite_field_vanishing():
    from golodlab import FieldSpec

    _, A = quotient(["x^3", "x^2*y", "x*y^2", "y^3"], field=FieldSpec.prime(101))
    K = koszul_complex(A)
    KM = koszul_of_module(K, residue_field(A))
    v1 = KM.homology_basis()[0]
    v2 = K.homology_basis(min_l=1)[0]
    r = massey_product(K, KM, [v1, v2], mode="module")
    assert r.kind == "Vanishes"
