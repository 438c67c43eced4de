from collections import Counter

import numpy as np
import pytest

from pylie.errors import InputError, CatalogParseError, DataIntegrityError
from pylie.chevalley import build_simple, element_from_roots
from pylie.index import verify_theorems
from pylie.utils import derive_seed
from pylie.slice import (
    Sl2Triple, jacobson_morozov, is_regular, is_distinguished, parse_catalog, load_catalog,
    find_orbit, orbit_report, structure_checks,
)

E6_F4_G2_DIMS = [
    ("E6:1", 8, 5),
    ("E6:2", 12, 4),
    ("F4:1", 6, 3),
    ("F4:2", 8, 3),
    ("F4:3", 12, 3),
    ("G2:1", 4, 2),
]

E7_E8_DIMS = [
    ("E7:1", 9, 6),
    ("E7:2", 11, 5),
    ("E7:3", 13, 5),
    ("E7:4", 17, 3),
    ("E7:5", 21, 4),
    ("E8:1", 10, 7),
    ("E8:2", 12, 6),
    ("E8:3", 14, 6),
    ("E8:4", 16, 5),
    ("E8:5", 18, 4),
    ("E8:6", 20, 4),
    ("E8:7", 22, 5),
    ("E8:8", 24, 4),
    ("E8:9", 28, 3),
    ("E8:10", 40, 5),
]

WEIGHTS = [
    ("E6:1", (2, 8, 10, 14, 16)),
    ("F4:1", (2, 10, 14)),
    ("F4:2", (2, 10, 10)),
    ("F4:3", (2, 6, 6)),
    ("G2:1", (2, 4)),
]

SLOW_WEIGHTS = [
    ("E7:5", (2, 10, 10, 10)),
    ("E8:1", (2, 14, 22, 26, 34, 38, 46)),
    ("E8:10", (2, 10, 10, 10, 10)),
]

G2_ORBIT = """
orbit G2 "G2(a1)"
alias "subregular"
char 0 2
e + 0,1
e + 2,1
end
"""


def test_catalog_contents(catalog):
    assert len(catalog) == 21
    counts = Counter(spec.algebra for spec in catalog)
    assert counts == {"E6": 2, "E7": 5, "E8": 10, "F4": 3, "G2": 1}
    assert [spec.key for spec in catalog if spec.algebra == "E8"][-1] == "E8:10"


def test_find_orbit(catalog):
    assert find_orbit(catalog, "E6(a1)").key == "E6:1"
    assert find_orbit(catalog, "subregular").key == "E6:1"
    assert find_orbit(catalog, "F4:3").label == "F4(a3)"
    with pytest.raises(InputError):
        find_orbit(catalog, "E8:11")


def test_parse_single_orbit():
    (spec,) = parse_catalog(G2_ORBIT)
    assert spec.characteristic == (0, 2)
    assert spec.aliases == ("subregular",)
    assert spec.e_terms[1][0] == (2, 1)


@pytest.mark.parametrize("text, lineno", [
    ('orbit G2 "G2(a1)"\nchar 0 2\ne + 0,1\n', 3),
    ('orbit G2 G2(a1)\n', 1),
    ('orbit G2 "G2(a1)"\nchar 0 2 2\n', 2),
    ('char 0 2\n', 1),
    ('orbit G2 "G2(a1)"\nchar 0 2\ne + 0,1,1\nend\n', 3),
    ('orbit G2 "G2(a1)"\nchar 0 2\nend\n', 3),
    ('orbit G9 "X"\n', 1),
    ('orbit G2 "G2(a1)"\nchar 0 2\nweight 4\n', 3),
])
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(CatalogParseError) as info:
        parse_catalog(text)
    assert info.value.lineno == lineno
    assert str(info.value).startswith(f"line {lineno}:")


def test_tampered_characteristic_is_rejected():
    tampered = G2_ORBIT.replace("char 0 2", "char 2 0")
    with pytest.raises(DataIntegrityError):
        load_catalog(tampered)


def test_term_outside_positive_roots_is_rejected():
    tampered = G2_ORBIT.replace("e + 2,1", "e + 1,2")
    with pytest.raises(DataIntegrityError):
        load_catalog(tampered)


def test_sl2_relations_are_checked(sl2):
    algebra, basis = sl2
    e, f, h = algebra.basis(basis.x[0]), algebra.basis(basis.y[0]), algebra.basis(basis.h[0])
    Sl2Triple(e, h, f)
    with pytest.raises(InputError):
        Sl2Triple(e, h * 2, f)
    with pytest.raises(InputError):
        Sl2Triple(algebra.zero(), h, f)


def test_jacobson_morozov_rejects_semisimple(sl2):
    algebra, basis = sl2
    with pytest.raises(InputError):
        jacobson_morozov(algebra.basis(basis.h[0]))
    with pytest.raises(InputError):
        jacobson_morozov(algebra.zero())


def test_jacobson_morozov_outside_cartan():
    # e = x_1 + x_2 in A2 is regular; h is found in the Cartan span
    algebra, R, basis = build_simple("A", 2)
    e = element_from_roots(basis, [(R.unit(0), 1), (R.unit(1), 1)])
    t = jacobson_morozov(e)
    assert is_regular(t)
    assert is_distinguished(t)
    assert t.centralizer.dim == 2


@pytest.mark.parametrize("key, gxi, z", E6_F4_G2_DIMS)
def test_orbit_dimensions(orbit, key, gxi, z):
    t = orbit(key)
    assert t.centralizer.dim == gxi
    assert t.center.dim == z
    assert t.normalizer.dim == gxi + z
    assert is_distinguished(t) and not is_regular(t)


@pytest.mark.slow
@pytest.mark.parametrize("key, gxi, z", E7_E8_DIMS)
def test_orbit_dimensions_e7_e8(orbit, key, gxi, z):
    t = orbit(key)
    assert t.centralizer.dim == gxi
    assert t.center.dim == z
    assert t.normalizer.dim == gxi + z


@pytest.mark.parametrize("key, weights", WEIGHTS)
def test_center_weights(orbit, key, weights):
    assert orbit(key).weights == weights


@pytest.mark.slow
@pytest.mark.parametrize("key, weights", SLOW_WEIGHTS)
def test_center_weights_e7_e8(orbit, key, weights):
    assert orbit(key).weights == weights


def test_adapted_basis_puts_center_first(orbit):
    t = orbit("E6:1")
    total = 0
    for weight, zvecs, ext in t.adapted_basis:
        assert all(t.center.contains(v) for v in zvecs)
        assert not any(t.center.contains(v) for v in ext)
        total += len(zvecs) + len(ext)
    assert total == t.centralizer.dim


def test_orbit_report(orbit, catalog):
    spec = find_orbit(catalog, "E6:1")
    record = orbit_report(orbit("E6:1"), spec.label).to_record()
    assert record["dims"] == {"gxi": 8, "z": 5, "n": 13}
    assert record["characteristic"] == list(spec.characteristic)
    assert record["weights"] == [2, 8, 10, 14, 16]
    assert record["distinguished"] and not record["regular"]


@pytest.mark.parametrize("key", ["G2:1", "E6:1"])
def test_structure_identities_exceptional(orbit, key):
    checks = structure_checks(orbit(key))
    assert all(checks.values()), [name for name, ok in checks.items() if not ok]


@pytest.mark.parametrize("family, parts", [
    ("sl", (4,)),
    ("sl", (2, 2)),
    ("sl", (3, 1)),
    ("so", (5, 1, 1)),
    ("so", (3, 3, 1)),
    ("sp", (4, 2)),
    ("sp", (2, 2, 2)),
    ("so", (5, 3)),
])
def test_structure_identities_classical(partition_nilpotent, family, parts):
    checks = structure_checks(partition_nilpotent(family, parts).triple)
    assert all(checks.values()), [name for name, ok in checks.items() if not ok]


def random_nilpotent(basis, rng):
    """A random combination of positive root vectors with small positive coefficients."""
    R = basis.roots
    while True:
        keep = rng.random(R.num_positive) < 0.3
        coeffs = rng.integers(1, 3, size=R.num_positive, endpoint=True)
        terms = [(r, int(c)) for r, k, c in zip(R.positive_roots, keep, coeffs) if k]
        if terms:
            return element_from_roots(basis, terms)


@pytest.mark.parametrize("type_, rank", [
    ("A", 3),
    ("G", 2),
    pytest.param("B", 3, marks=pytest.mark.slow),
    pytest.param("C", 3, marks=pytest.mark.slow),
    pytest.param("D", 4, marks=pytest.mark.slow),
    pytest.param("F", 4, marks=pytest.mark.slow),
])
def test_structure_identities_on_random_nilpotents(type_, rank):
    _, _, basis = build_simple(type_, rank)
    rng = np.random.default_rng(derive_seed(0, f"{type_}{rank}"))
    for _ in range(100):
        e = random_nilpotent(basis, rng)
        t = jacobson_morozov(e)
        checks = structure_checks(t)
        assert all(checks.values()), (e.coeffs, [name for name, ok in checks.items() if not ok])
        report = verify_theorems(t, rng=rng)
        assert report.index_bound_ok and report.rank_chain_ok, (e.coeffs, report)
