import hashlib
from importlib import resources

import pytest
from hypothesis import assume, given, settings

from picard_fuchs.algebra import RatField
from picard_fuchs.catalog import (CATALOG_ENV, CATALOG_SHA256, FRICKE_CONSTANTS, ModularParametrization,
                                  QuadraticExtension, UnsupportedLevel, catalog_parametrization, catalog_psi,
                                  dictionary_check, fricke_quotient_parametrization, level2_hauptmodul_example,
                                  load_catalog, master_equation_check, psi_vanishing_check, qvalue_catalog,
                                  symmetric_to_j_pair, weighted_scaling_check)
from picard_fuchs.families import k3_family_ode
from picard_fuchs.griffiths_dwork import order_drop_report

from conftest import T, ratfuncs

t = T.gen("t")


def test_bundled_checksum():
    raw = resources.files("picard_fuchs").joinpath("data/catalog.txt").read_bytes()
    assert hashlib.sha256(raw).hexdigest() == CATALOG_SHA256
    cat = load_catalog()
    assert cat.checksum_ok and "psi2" in cat


def test_environment_override(tmp_path, monkeypatch):
    path = tmp_path / "alt.txt"
    path.write_text("# replacement\npsi2 (a, b, d) = a^3 - d\nextra (t) = t + 1\n")
    monkeypatch.setenv(CATALOG_ENV, str(path))
    cat = load_catalog()
    assert cat.path == str(path)
    assert not cat.checksum_ok
    assert cat["extra"].source == "t + 1"
    monkeypatch.delenv(CATALOG_ENV)
    assert load_catalog().checksum_ok


def test_malformed_catalog_file(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("no equals sign here\n")
    with pytest.raises(ValueError, match="bad.txt:1"):
        load_catalog(str(path))


def test_missing_record_message():
    with pytest.raises(KeyError, match="no catalog record"):
        load_catalog()["psi5"]


@pytest.mark.parametrize("n, degree", [(2, 18), (3, 24)])
def test_psi_weighted_homogeneity(n, degree):
    psi = catalog_psi(n)
    assert psi.weighted_degree() == degree
    assert psi.is_even_in_b()
    assert weighted_scaling_check(n)


def test_unsupported_level_lists_levels():
    with pytest.raises(UnsupportedLevel, match="2, 3"):
        catalog_psi(5)
    with pytest.raises(UnsupportedLevel, match="2, 3, 6"):
        catalog_parametrization(7)


@pytest.mark.parametrize("n", [2, 3, 6])
def test_catalog_parametrizations_are_modular(n):
    m = catalog_parametrization(n)
    assert symmetric_to_j_pair(m).rational
    assert master_equation_check(m)


@pytest.mark.parametrize("n", [2, 3])
def test_psi_vanishes_only_on_the_parametrization(n):
    assert psi_vanishing_check(n)
    assert not psi_vanishing_check(n, perturb=True)


def test_k3_order_drops_on_level_two():
    m = catalog_parametrization(2)
    assert order_drop_report(k3_family_ode(m.b_sq, m.d))["order"] == 3


def test_master_equation_negative_and_constant():
    assert not master_equation_check(ModularParametrization.from_j_pair(t, t + 1))
    with pytest.raises(ValueError, match="nonconstant"):
        master_equation_check(ModularParametrization.from_j_pair(T(3), t))


@settings(max_examples=200)
@given(ratfuncs(T), ratfuncs(T))
def test_w_invariant_dictionary(j1, j2):
    assume(j1 and j2)
    assert dictionary_check(j1, j2)


def test_qvalue_catalog():
    q = qvalue_catalog("j").q_value
    j = q.field.gens()[0]
    assert q == (36 * j ** 2 - 41 * j + 32) / (144 * (j - 1) ** 2 * j ** 2)
    with pytest.raises(KeyError, match="Gamma0"):
        qvalue_catalog("Gamma0(5)")


def test_level_two_transport():
    r = level2_hauptmodul_example()
    assert r.ok
    expected = (2848 * t ** 4 - 800 * t ** 3 + 108 * t ** 2 + 4 * t + 1) / (
        4 * t ** 2 * (120 * t ** 3 - 68 * t ** 2 + 2 * t + 1) ** 2)
    assert r.transported == expected


def test_level_two_transport_mutations():
    h1 = load_catalog()["level2_h1"].ratfunc(T)
    assert not level2_hauptmodul_example(h2=h1).phi2_vanishes
    assert not level2_hauptmodul_example(qvalue_label="j").matches_record


@pytest.mark.parametrize("n", sorted(FRICKE_CONSTANTS))
def test_fricke_constant_is_an_involution_symmetry(n):
    # frozen constants, checked by direct substitution t -> c/t
    c = FRICKE_CONSTANTS[n]
    m = catalog_parametrization(n)
    for f in (m.b_sq, m.d):
        assert f.subs({"t": c / t}, T) == f


@pytest.mark.parametrize("n", sorted(FRICKE_CONSTANTS))
def test_fricke_quotient_is_irrational_and_modular(n):
    m = fricke_quotient_parametrization(n)
    pair = symmetric_to_j_pair(m)
    assert not pair.rational
    assert master_equation_check(m)


def test_quadratic_extension_arithmetic():
    S = RatField(("s",))
    s = S.gen("s")
    ext = QuadraticExtension(s, S(5), "s")
    X = ext.gen()
    assert X * X - X * s + 5 == ext.elt(0)
    assert X * (1 / X) == ext.elt(1)
    assert (X * X.conj()).c1.is_zero() and (X * X.conj()).c0 == X.norm()
    # differentiate the defining relation
    dX = X.derivative()
    assert 2 * X * dX - (X + s * dX) == ext.elt(0)
    with pytest.raises(ValueError, match="double root"):
        QuadraticExtension(2 * s, s * s, "s")
