import math

import pytest

from thuelab.polys import (
    discriminant_wrt_t,
    isolate_unit_roots,
    pdivexact,
    pmul,
    resultant_wrt_t,
)
from thuelab.walks import (
    ALG1,
    ERASE,
    SEARCH,
    SYSTEMS,
    StepSystem,
    check_defining_polynomial,
    count_walks,
    count_walks_log,
    counting_bound_report,
    defining_polynomial,
    growth_report,
    growth_rho,
    series_from_equation,
    system_discriminant,
)

# Verified against the source derivation: quintic for the erase game walks,
# quartic for the typed search walks.
ERASE_DISC = (-4, -19, 32, -2, 36, 229)
SEARCH_DISC = (1, 12, -24, -80, -288)


def brute_force_count(system: StepSystem, m: int) -> int:
    """Independent oracle: enumerate every step sequence with prefix sums
    staying >= 1 and total 1, multiplying weights."""
    finite = dict(system.finite_steps)
    total = 0

    def rec(length: int, height: int, weight: int) -> None:
        nonlocal total
        if length == m:
            if height == 1:
                total += weight
            return
        for d, w in finite.items():
            if height + d >= 1:
                rec(length + 1, height + d, weight * w)
        d = system.tail_max
        while height + d >= 1:
            rec(length + 1, height + d, weight * system.tail_weight)
            d -= 1

    rec(0, 0, 1)
    return total


def scalar_multiple(a, b) -> bool:
    """Cross-multiplied coefficient-vector comparison."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    pairs = [(x, y) for x, y in zip(a, b) if x or y]
    if not pairs:
        return True
    x0, y0 = pairs[0]
    return all(x * y0 == y * x0 for x, y in pairs)


class TestCounts:
    def test_alg1_is_shifted_catalan(self):
        counts = count_walks(ALG1, 15)
        for m in range(15):
            catalan = math.comb(2 * m, m) // (m + 1)
            assert counts[m] == catalan  # T_{m+1} = C_m

    def test_small_tables(self):
        assert count_walks(ALG1, 4) == [1, 1, 2, 5]
        assert count_walks(ERASE, 5) == [1, 0, 0, 0, 1]
        assert count_walks(SEARCH, 4) == [1, 0, 1, 4]

    def test_dp_matches_brute_force(self):
        for system in (ALG1, ERASE, SEARCH):
            counts = count_walks(system, 12)
            for m in range(1, 13):
                assert counts[m - 1] == brute_force_count(system, m), (
                    system.name,
                    m,
                )

    def test_erase_monotone_after_first(self):
        counts = count_walks(ERASE, 201)
        for m in range(2, 201):
            assert counts[m - 1] <= counts[m]

    def test_log_dp_matches_exact(self):
        for system in (ALG1, ERASE, SEARCH):
            exact = count_walks(system, 60)
            logs = count_walks_log(system, 60)
            for m in range(1, 61):
                if exact[m - 1] == 0:
                    assert logs[m] == -math.inf
                else:
                    assert math.isclose(
                        logs[m], math.log(exact[m - 1]), rel_tol=1e-9
                    )

    def test_validation(self):
        with pytest.raises(ValueError):
            StepSystem("bad", ((1, 2),), 0, 1)  # +1 must have weight 1
        with pytest.raises(ValueError):
            StepSystem("bad", ((1, 1),), 2, 1)  # positive tail
        with pytest.raises(ValueError):
            StepSystem("bad", ((1, 1), (-3, 1)), -2, 1)  # overlap
        with pytest.raises(ValueError):
            count_walks(ALG1, 0)


class TestSeries:
    def test_fixed_point_examples(self):
        assert series_from_equation(SEARCH, 4) == [0, 1, 0, 1, 4]
        assert series_from_equation(ERASE, 5) == [0, 1, 0, 0, 0, 1]
        assert series_from_equation(ALG1, 4) == [0, 1, 1, 2, 5]

    def test_series_matches_dp(self):
        for system in (ALG1, ERASE, SEARCH):
            ser = series_from_equation(system, 80)
            assert ser[0] == 0
            assert ser[1:] == count_walks(system, 80)

    def test_defining_polynomials(self):
        assert defining_polynomial(ALG1) == [[0, 1], [-1], [1]]
        assert defining_polynomial(ERASE) == [[0, 1], [-1, -1], [1], [], [0, 1]]
        assert defining_polynomial(SEARCH) == [[0, 1], [-1, -1], [1, 1], [0, 3]]

    def test_polynomial_annihilates_series(self):
        for system in (ALG1, ERASE, SEARCH):
            ser = series_from_equation(system, 60)
            assert check_defining_polynomial(defining_polynomial(system), ser, 60)

    def test_wrong_polynomial_detected(self):
        ser = series_from_equation(ALG1, 30)
        assert check_defining_polynomial([[0, 1], [-1], [1]], ser, 30)
        assert not check_defining_polynomial([[0, 1], [-1], [1, 1]], ser, 30)
        assert not check_defining_polynomial(defining_polynomial(ERASE), ser, 30)


class TestDiscriminants:
    def test_erase_matches_quintic(self):
        d = system_discriminant(ERASE)
        assert scalar_multiple(d.normalized, ERASE_DISC)

    def test_search_matches_quartic(self):
        d = system_discriminant(SEARCH)
        assert scalar_multiple(d.normalized, SEARCH_DISC)

    def test_alg1_discriminant(self):
        d = system_discriminant(ALG1)
        assert scalar_multiple(d.normalized, (-1, 4))  # 1 - 4z up to sign

    def test_simple_quadratic(self):
        d = discriminant_wrt_t([[0, -1], [], [1]])  # t^2 - z
        assert tuple(d.raw) in ((0, -4), (0, 4))

    def test_constant_in_t_rejected(self):
        with pytest.raises(ValueError):
            discriminant_wrt_t([[1, 2]])

    def test_resultant_of_product_with_common_factor_is_zero(self):
        # res(p*q, p*r) = 0: shared root in t for every z
        p = [[0, 1], [1]]  # z + t
        q = [[2], [0, 1]]  # 2 + z t
        pq = [[0, 2], [2, 0, 1], [0, 1]]
        assert pmul(p[0], q[1]) == [0, 0, 1]
        assert resultant_wrt_t(pq, p) == []

    def test_exact_division_helper(self):
        a = pmul([1, 2, 3], [-4, 5])
        assert pdivexact(a, [-4, 5]) == [1, 2, 3]
        with pytest.raises(ValueError):
            pdivexact([1, 1], [2])


class TestRoots:
    def test_erase_root(self):
        iso = isolate_unit_roots(list(system_discriminant(ERASE).normalized))
        assert len(iso.roots) == 1
        root = iso.roots[0]
        assert abs(root.value - 0.457) < 1e-3
        assert root.high - root.low <= 1e-10
        assert root.value > 5 ** -0.5

    def test_search_root(self):
        iso = isolate_unit_roots(list(system_discriminant(SEARCH).normalized))
        assert len(iso.roots) == 1
        root = iso.roots[0]
        assert abs(root.value - 0.2537) < 1e-3
        assert root.high - root.low <= 1e-10
        assert root.value > 0.25

    def test_simple_root(self):
        iso = isolate_unit_roots([-1, 2])
        assert [r.value for r in iso.roots] == [0.5]

    def test_double_root_on_grid(self):
        iso = isolate_unit_roots([1, -4, 4])  # (2z - 1)^2
        assert [r.value for r in iso.roots] == [0.5]

    def test_double_root_off_grid_flagged_as_suspect(self):
        # (3z - 1)^2 never changes sign and 1/3 is never a dyadic grid point
        iso = isolate_unit_roots([1, -6, 9])
        assert iso.roots == ()
        assert any(abs(s - 1 / 3) < 0.01 for s in iso.suspects)

    def test_root_at_right_endpoint(self):
        iso = isolate_unit_roots([-1, 1])  # z - 1
        assert [r.value for r in iso.roots] == [1.0]


class TestGrowth:
    def test_growth_reports(self):
        rep = growth_report(ERASE, 400)
        assert rep.threshold_holds
        m, ratio = rep.ratios[-1]
        assert m == 400
        assert abs(ratio - rep.reciprocal_rho) / rep.reciprocal_rho < 0.05
        rep = growth_report(SEARCH, 400)
        assert rep.threshold_holds
        _, ratio = rep.ratios[-1]
        assert abs(ratio - rep.reciprocal_rho) / rep.reciprocal_rho < 0.05
        rep = growth_report(ALG1, 400)
        assert rep.threshold is None
        _, ratio = rep.ratios[-1]
        assert abs(ratio - 4.0) < 0.05

    def test_rho_values(self):
        assert math.isclose(growth_rho(ALG1).value, 0.25, abs_tol=1e-9)
        assert math.isclose(growth_rho(ERASE).value, 0.4577644, abs_tol=1e-6)
        assert math.isclose(growth_rho(SEARCH).value, 0.2537073, abs_tol=1e-6)

    def test_m_max_floor(self):
        with pytest.raises(ValueError):
            growth_report(ALG1, 50)


class TestBounds:
    @pytest.mark.parametrize(
        "scenario,c", [("alg1", 4), ("erase", 8), ("search", 6)]
    )
    def test_finite_crossover_at_n5(self, scenario, c):
        rep = counting_bound_report(scenario, c, 5, m_max=1500)
        assert rep.crossover is not None
        assert rep.lhs_log2 > rep.rhs_log2
        # one step earlier the inequality still held
        earlier = counting_bound_report(scenario, c, 5, m_max=rep.crossover - 1)
        assert earlier.crossover is None

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            counting_bound_report("alg1", 4, 0)
        with pytest.raises(ValueError):
            counting_bound_report("erase", 3, 5)
        with pytest.raises(ValueError):
            counting_bound_report("unknown", 4, 5)
