import numpy as np
import pytest
from sympy import QQ

from pylie.errors import InputError, UnsupportedError
from pylie.exactla import QMatrix, rank
from pylie.propp import (
    EXACT_PASS, EXACT_FAIL, PROBABILISTIC_PASS, ParamMatrix, PVerdict, combine_verdicts,
    surjective_all_nonzero, top_weight, top_weight_space, structure_coeffs, param_matrix,
    weight_two_identity, direct_witness, check_property_p,
)
from pylie.index import verify_theorems
from pylie.utils import derive_seed

FAST_ORBITS = ["G2:1", "E6:1", "E6:2", "F4:1", "F4:2", "F4:3"]
E7_ORBITS = ["E7:1", "E7:2", "E7:3", "E7:4", "E7:5"]
E8_ORBITS = [f"E8:{k}" for k in range(1, 11)]


def decide(rows, params, **kwargs):
    M = ParamMatrix.from_expressions(rows, params)
    verdict = surjective_all_nonzero(M, rng=np.random.default_rng(0), **kwargs)
    return M, verdict


def test_from_expressions():
    M = ParamMatrix.from_expressions([["-10*alpha", "-beta", "0"], ["-9*beta", "10*alpha", "-beta"]],
                                     ["alpha", "beta"])
    assert M.shape == (2, 3) and M.delta == 2
    assert M.evaluate([1, 0]).to_rows()[0] == [QQ(-10), QQ(0), QQ(0)]
    assert M.forms()[1][0] == (QQ(0), QQ(-9))


@pytest.mark.parametrize("entry", ["alpha*beta", "alpha + 1", "x"])
def test_from_expressions_rejects_non_linear(entry):
    with pytest.raises(InputError):
        ParamMatrix.from_expressions([[entry, "beta"]], ["alpha", "beta"])


def test_too_many_parameters():
    with pytest.raises(UnsupportedError):
        ParamMatrix([f"a{i}" for i in range(5)], [QMatrix.identity(1)] * 5)


def test_zero_one_by_one_fails():
    M = ParamMatrix(["alpha"], [QMatrix.zeros(1, 1)])
    verdict = surjective_all_nonzero(M)
    assert verdict.status == EXACT_FAIL
    assert verdict.witness is not None and any(verdict.witness)


def test_single_parameter_rank():
    _, verdict = decide([["alpha", "0"], ["0", "2*alpha"]], ["alpha"])
    assert verdict.status == EXACT_PASS and verdict.tier == "T0"


def test_more_rows_than_columns_fails():
    _, verdict = decide([["alpha"], ["beta"]], ["alpha", "beta"])
    assert verdict.status == EXACT_FAIL
    assert verdict.tier == "trivial"


def test_e7_two_parameter_family_passes():
    _, verdict = decide([["-10*alpha", "-beta", "0"], ["-9*beta", "10*alpha", "-beta"]], ["alpha", "beta"])
    assert verdict.status == EXACT_PASS
    assert verdict.tier == "T1"


def test_two_parameter_rational_root_fails():
    M, verdict = decide([["alpha", "beta"], ["beta", "alpha"]], ["alpha", "beta"])
    assert verdict.status == EXACT_FAIL
    assert rank(M.evaluate(verdict.witness)) < 2


def test_two_parameter_irrational_root_certificate():
    _, verdict = decide([["alpha", "-beta"], ["beta", "alpha"]], ["alpha", "beta"])
    assert verdict.status == EXACT_FAIL
    assert verdict.witness is None
    assert "alpha" not in verdict.certificate and verdict.certificate


def test_two_parameter_axis_failure():
    M, verdict = decide([["alpha", "0"], ["0", "alpha + beta"]], ["alpha", "beta"])
    assert verdict.status == EXACT_FAIL
    assert rank(M.evaluate(verdict.witness)) < 2


def test_single_row_kernel():
    _, verdict = decide([["alpha", "beta", "gamma"]], ["alpha", "beta", "gamma"])
    assert verdict.status == EXACT_PASS and verdict.tier == "L"
    M, verdict = decide([["alpha", "alpha", "beta"]], ["alpha", "beta", "gamma"])
    assert verdict.status == EXACT_FAIL
    assert verdict.witness == (QQ(0), QQ(0), QQ(1))


def test_three_parameter_elimination_passes():
    rows = [["alpha", "beta", "gamma", "0"], ["0", "alpha", "beta", "gamma"]]
    _, verdict = decide(rows, ["alpha", "beta", "gamma"])
    assert verdict.status == EXACT_PASS
    assert verdict.tier.startswith("T2")


def test_three_parameter_elimination_fails():
    M, verdict = decide([["alpha", "beta", "0"], ["0", "alpha", "gamma"]], ["alpha", "beta", "gamma"])
    assert verdict.status == EXACT_FAIL
    assert rank(M.evaluate(verdict.witness)) < 2


def test_four_parameter_elimination():
    rows = [["alpha", "beta", "gamma", "delta", "0"], ["0", "alpha", "beta", "gamma", "delta"]]
    _, verdict = decide(rows, ["alpha", "beta", "gamma", "delta"])
    assert verdict.status == EXACT_PASS


def test_sampling_reports_rank_drop_exactly():
    # no entry has a proportional row or column, so elimination cannot start
    M, verdict = decide([["alpha", "beta"], ["gamma", "alpha + beta"]], ["alpha", "beta", "gamma"],
                        random_points=50)
    assert verdict.status == EXACT_FAIL
    assert "T3" in verdict.tier
    assert rank(M.evaluate(verdict.witness)) < 2


def test_combine_verdicts():
    exact, prob = PVerdict(EXACT_PASS), PVerdict(PROBABILISTIC_PASS, evidence=7)
    fail = PVerdict(EXACT_FAIL, witness=(QQ(1),))
    assert combine_verdicts([exact, exact]).status == EXACT_PASS
    merged = combine_verdicts([exact, prob, prob])
    assert merged.status == PROBABILISTIC_PASS and merged.evidence == 14
    assert combine_verdicts([prob, fail]).witness == (QQ(1),)
    assert fail.passed is False and prob.passed


def test_verdict_record():
    record = PVerdict(EXACT_FAIL, witness=(QQ(1, 2), QQ(0)), tier="T1").to_record()
    assert record == {"status": EXACT_FAIL, "tier": "T1", "witness": ["1/2", "0"]}


def test_top_weight(orbit):
    t = orbit("E6:1")
    assert top_weight(t) == 16
    assert top_weight_space(t).dim == 1


def test_structure_coeffs_e6_subregular(orbit):
    t = orbit("E6:1")
    (M,) = structure_coeffs(t, 8)
    assert M.shape == (1, 2)
    assert rank(M) == 1
    assert structure_coeffs(t, 8, k1=7) == []


def test_structure_coeffs_f4_orbit_three(orbit):
    t = orbit("F4:3")
    coeffs = structure_coeffs(t, 6)
    assert len(coeffs) == 2
    assert all(M.shape == (2, 6) for M in coeffs)
    verdict = surjective_all_nonzero(param_matrix(t, 6))
    assert verdict.status == EXACT_PASS


def test_weight_two_identity_and_direct_witness(orbit):
    t = orbit("E6:1")
    assert weight_two_identity(t)
    assert direct_witness(t, t.e)


def test_direct_witness_on_random_center_elements(orbit):
    t = orbit("F4:2")
    rng = np.random.default_rng(20)
    basis = t.center.elements()
    for _ in range(5):
        v = t.algebra.zero()
        for x in basis:
            v = v + x * int(rng.integers(1, 10, endpoint=True))
        assert direct_witness(t, v)


def test_g2_passes_by_shortcuts(orbit):
    verdict = check_property_p(orbit("G2:1"))
    assert verdict.status == EXACT_PASS
    assert [b["tier"] for b in verdict.blocks] == ["weight-two", "top-weight"]


@pytest.mark.parametrize("key", FAST_ORBITS)
def test_property_p(orbit, key):
    verdict = check_property_p(orbit(key), seed=1)
    assert verdict.status == EXACT_PASS, verdict.blocks
    assert not verdict.notes


@pytest.mark.slow
@pytest.mark.parametrize("key", E7_ORBITS)
def test_property_p_e7(orbit, key):
    verdict = check_property_p(orbit(key), seed=1)
    assert verdict.status == EXACT_PASS, verdict.blocks


@pytest.mark.slow
@pytest.mark.parametrize("key", E8_ORBITS)
def test_property_p_e8(orbit, key):
    verdict = check_property_p(orbit(key), seed=1)
    assert verdict.passed, verdict.blocks
    if key != "E8:10":
        assert verdict.status == EXACT_PASS, verdict.blocks


@pytest.mark.slow
def test_e8_orbit_ten_top_weight(orbit):
    t = orbit("E8:10")
    assert top_weight(t) == 10
    assert top_weight_space(t).dim == 4
    M = param_matrix(t, 10)
    assert M.shape[0] == 4 and M.delta == 4


def test_regular_nilpotent_is_noted(partition_nilpotent):
    verdict = check_property_p(partition_nilpotent("sl", (3,)).triple)
    assert "regular nilpotent" in verdict.notes


def random_center_element(t, rng):
    basis = t.center.elements()
    while True:
        coeffs = [int(c) for c in rng.integers(-5, 5, size=len(basis), endpoint=True)]
        if any(coeffs):
            break
    v = t.algebra.zero()
    for c, x in zip(coeffs, basis):
        if c:
            v = v + x * c
    return v


@pytest.mark.parametrize("key", FAST_ORBITS + [pytest.param(k, marks=pytest.mark.slow) for k in E7_ORBITS + E8_ORBITS])
def test_passing_verdict_agrees_with_direct_witness(orbit, key):
    t = orbit(key)
    verdict = check_property_p(t, seed=1)
    assert verdict.passed, verdict.blocks
    rng = np.random.default_rng(derive_seed(0, key))
    for _ in range(20):
        v = random_center_element(t, rng)
        assert direct_witness(t, v), (key, v.coeffs)
    assert verify_theorems(t, seed=1).prop4_ok
