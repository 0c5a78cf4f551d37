import math

import numpy as np
import pytest

from fivefold.stats import (
    alloy_check,
    nearest_tau_power,
    ratio_report,
    substitution_counts,
    tau_power_table,
)

PHI = (1 + math.sqrt(5)) / 2


class TestSubstitutionCounts:
    def test_fibonacci_prefix(self):
        assert substitution_counts((1, 0), 4) == [
            (1, 0), (1, 1), (2, 3), (5, 8), (13, 21)]

    def test_matches_matrix_power_oracle(self):
        m = np.array([[1, 1], [1, 2]], dtype=object)
        v = np.array([3, 4], dtype=object)
        got = substitution_counts((3, 4), 7)
        for g, pair in enumerate(got):
            expect = np.linalg.matrix_power(m, g) @ v if g else v
            assert pair == tuple(int(x) for x in expect)

    def test_zero_seed(self):
        assert substitution_counts((0, 0), 5) == [(0, 0)] * 6

    def test_ratio_converges_to_phi(self):
        acute, obtuse = substitution_counts((1, 0), 10)[-1]
        assert abs(obtuse / acute - 1.6180339887) < 1e-3

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            substitution_counts((-1, 0), 1)
        with pytest.raises(ValueError):
            substitution_counts((1, 0), -1)


class TestNearestTauPower:
    def test_exact_powers(self):
        for k in range(-8, 9):
            ratio = PHI ** k
            got_k, dev = nearest_tau_power(ratio)
            assert got_k == k
            assert dev < 1e-12

    def test_table_matches_float_powers(self):
        table = tau_power_table()
        for k, value in table.items():
            assert value == pytest.approx(PHI ** k, abs=1e-12)

    def test_pentagon_star_style_ratio(self):
        k, _ = nearest_tau_power(29 / 3)
        assert k == 5
        assert abs(math.log(29 / 3) / math.log(PHI) - 5) < 0.5


class TestRatioReport:
    def test_fibonacci_rhomb_counts(self):
        report = ratio_report({"ThickRhomb": 55, "ThinRhomb": 34})
        combined = report.find("(thick+thin)/thick")
        assert combined is not None
        assert combined.ratio == pytest.approx(89 / 55)
        assert combined.power == 1
        assert combined.deviation < 1e-3
        squared = report.find("(thick+thin)/thin")
        assert squared.power == 2

    def test_single_kind_has_no_pairs(self):
        report = ratio_report({"ThickRhomb": 1})
        assert report.entries == ()

    def test_zero_counts_skipped(self):
        report = ratio_report({"ThickRhomb": 3, "ThinRhomb": 0})
        assert report.entries == ()

    def test_scale_invariance(self):
        a = ratio_report({"PentagonBig": 29, "Pentagram": 3})
        b = ratio_report({"PentagonBig": 290, "Pentagram": 30})
        assert [e.power for e in a.entries] == [e.power for e in b.entries]

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ratio_report({"ThickRhomb": -1})


class TestAlloyCheck:
    def test_shechtman_composition(self):
        ratio, k, dev = alloy_check(86, 14)
        assert f"{ratio:.10f}" == "6.1428571429"
        assert k == 4
        assert dev == pytest.approx(0.1038, abs=2e-4)

    def test_nearby_composition_is_closer(self):
        _, k1, dev1 = alloy_check(86, 14)
        ratio2, k2, dev2 = alloy_check(87, 13)
        assert f"{ratio2:.10f}" == "6.6923076923"
        assert (k1, k2) == (4, 4)
        assert dev2 < dev1

    def test_unity(self):
        ratio, k, dev = alloy_check(1, 1)
        assert (ratio, k, dev) == (1.0, 0, 0.0)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            alloy_check(1, 0)
        with pytest.raises(ValueError):
            alloy_check(0, 5)
