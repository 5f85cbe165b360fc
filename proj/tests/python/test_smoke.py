import json

import pytest

import regpart


def test_eta_quotients():
    assert regpart.eta_quotient_series({1: -1}, 6).coefficients() == [1, 1, 2, 3, 5, 7]
    assert regpart.eta_quotient_series({1: 1}, 8).coefficients() == [1, -1, -1, 0, 0, 1, 0, 1]
    assert regpart.eta_quotient_series({}, 5).coefficients() == [1, 0, 0, 0, 0]
    with pytest.raises(ValueError):
        regpart.eta_quotient_series({1: -1}, 0)


def test_ring_reduction():
    exact = regpart.eta_quotient_series({1: -1, 3: 1}, 2000)
    gf2 = regpart.eta_quotient_series({1: -1, 3: 1}, 2000, regpart.Ring.gf2())
    assert exact.reduced(regpart.Ring.gf2()) == gf2
    assert [c % 2 for c in exact.coefficients()] == gf2.coefficients()


def test_partition_series_and_residue_sets():
    three_regular = regpart.ResidueSet(3, [1, 2])
    assert 4 in three_regular and 6 not in three_regular
    s = regpart.partition_series(three_regular, 10)
    assert s[4] == 4
    odd_bounded = regpart.partition_series(regpart.ResidueSet.odd(), 201, bound=3)
    pm1_mod6 = regpart.partition_series(regpart.ResidueSet(6, [1, 5]), 201)
    assert odd_bounded == pm1_mod6


def test_b3_family():
    fam = regpart.b3_family(500)
    assert fam["b3"].coefficients()[:6] == [1, 1, 2, 2, 4, 5]
    assert fam["a_series"][:3] == [1, 2, 2]
    assert fam["s3_check_passed"]
    assert regpart.series_parity_at(fam["b3"], [0, 70, 12]) == [1, 1, 0]


def test_cache_roundtrip(tmp_path):
    s = regpart.eta_quotient_series({1: 4, 3: -1}, 100000, regpart.Ring.gf2())
    path = tmp_path / "b.b3p"
    regpart.save_series(path, s)
    assert regpart.load_series(path) == s
    data = path.read_bytes()
    path.write_bytes(data[:-50])
    with pytest.raises(regpart.CacheError):
        regpart.load_series(path)
    with pytest.raises(regpart.CacheError):
        regpart.save_series(tmp_path / "x.b3p", regpart.eta_quotient_series({1: -1}, 10))


def test_quadratic_forms():
    assert regpart.reduced_forms(-96) == [(1, 0, 24), (3, 0, 8), (4, 4, 7), (5, 2, 5)]
    assert regpart.class_number(-864) == 12
    assert regpart.jacobi_symbol(-6, 5) == 1
    assert regpart.jacobi_symbol(-6, 13) == -1
    assert regpart.rep_count(1, 0, 216, 241) == (4, 4)
    rec = regpart.classify_prime(241)
    assert rec["in_P"] and rec["j"] == 1 and rec["witness"] == (5, 1)
    assert regpart.conjecture_n2_formula(2233) == 8


def test_radu():
    assert regpart.inverse_data(29)["neg_inv24_mod_p"] == 6
    assert regpart.b_slopes(29) == ["11/60552", "1/20184", "11/60552", "1/20184"]
    assert regpart.p_set(841, {1: 4, 3: -1}, 6)[:3] == [6, 64, 151]
    row = regpart.radu_row(59)
    assert (row["neg_inv24"], row["floor_p24"], row["floor_nu"]) == (27, 2, 29)


def test_campaigns():
    rep = regpart.cmd_verify("KZ", 13, n_max=100)
    assert rep["status"] == "VERIFIED_TO_BOUND"
    assert set(rep) >= {"campaign", "params", "checked", "violations", "status"}
    assert regpart.cmd_verify("Main", 13)["status"] == "INAPPLICABLE"
    with pytest.raises(ValueError):
        regpart.cmd_verify("nope", 13)
    n2 = regpart.cmd_conjecture_n2(5000, "a")
    assert n2["summary"]["interpretations"]["a"]["mismatches"] == 0
    json.dumps(n2)


def test_euler_pairs():
    s1 = regpart.ResidueSet(3, [1, 2])
    s2 = regpart.ResidueSet(6, [1, 5])
    assert regpart.euler_pair_check(s1, s2, 2, 300)
    assert regpart.glaisher_forward(s1, 2, [1, 1, 1]) == [2, 1]
    assert regpart.glaisher_inverse(s1, 2, [2, 1]) == [1, 1, 1]
    assert regpart.gupta_involution([4, 2, 1], s1) == [2, 2, 2, 1]
    with pytest.raises(ValueError):
        regpart.gupta_involution([5, 1], s1)
