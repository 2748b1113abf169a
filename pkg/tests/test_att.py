import numpy as np
import pytest

from pstrim import solve_att_alpha


class TestHandValues:
    def test_all_half_scores(self):
        sol = solve_att_alpha(np.full(20, 0.5))
        assert sol.alpha == 0.25
        assert sol.retained_fraction == 1.0
        assert sol.residual == 0.0

    def test_all_point_one_scores(self):
        sol = solve_att_alpha(np.full(20, 0.1))
        assert abs(sol.alpha - 0.45) <= 1e-6

    def test_constant_scores_closed_form(self):
        # constant e: RHS = 2/(1-e), so alpha = (1-e)/2, always accepted
        for e0 in (0.2, 0.33, 0.7, 0.9):
            sol = solve_att_alpha(np.full(7, e0))
            assert np.isclose(sol.alpha, (1 - e0) / 2, rtol=1e-13)


class TestAgainstBruteForce:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_million_point_scan_agreement(self, seed):
        rng = np.random.default_rng(seed)
        e = rng.uniform(0.02, 0.98, size=200)
        sol = solve_att_alpha(e)

        grid = np.arange(1, 10**6) / 10**6
        d = np.sort(1.0 - e)
        # vectorized RHS over the grid: piecewise constant between sorted 1-e
        num_terms = (e ** 2 * (1 / e + 1 / (1 - e)))
        order = np.argsort(1.0 - e)
        suf_num = np.cumsum(num_terms[order][::-1])[::-1]
        suf_den = np.cumsum(e[order][::-1])[::-1]
        pos = np.searchsorted(d, grid, side="left")
        valid = pos < len(d)
        rhs_grid = np.full(grid.shape, np.inf)
        rhs_grid[valid] = 2.0 * suf_num[pos[valid]] / suf_den[pos[valid]]

        # smallest zero of h(a) = 1 - a*RHS(a): h is linear within a piece, so a
        # same-piece sign change brackets an exact root; the equation admits
        # several roots and the smallest is the target
        h = 1.0 - grid * rhs_grid
        same_piece = (rhs_grid[:-1] == rhs_grid[1:]) & np.isfinite(rhs_grid[:-1])
        crossing = same_piece & (np.sign(h[:-1]) != np.sign(h[1:]))
        assert crossing.any()
        i = int(np.nonzero(crossing)[0][0])
        best = grid[i] + h[i] * (grid[i + 1] - grid[i]) / (h[i] - h[i + 1])
        assert abs(sol.alpha - best) <= 2e-6

        # the retained set matches between the analytic and scanned solutions
        assert np.array_equal((1 - e) >= sol.alpha, (1 - e) >= best)

    def test_residual_tolerance(self):
        rng = np.random.default_rng(5)
        e = rng.beta(2, 3, size=500) * 0.96 + 0.02
        sol = solve_att_alpha(e)
        assert sol.residual <= 1e-6 * (1.0 / sol.alpha)


class TestInvariances:
    def test_permutation_invariance(self):
        rng = np.random.default_rng(7)
        e = rng.uniform(0.05, 0.95, size=100)
        sol1 = solve_att_alpha(e)
        sol2 = solve_att_alpha(e[rng.permutation(100)])
        assert sol1.alpha == sol2.alpha

    def test_low_scores_retain_everyone(self):
        rng = np.random.default_rng(8)
        e = rng.uniform(0.01, 0.3, size=150)
        sol = solve_att_alpha(e)
        assert sol.retained_fraction == 1.0
        assert np.all((1.0 - e) >= sol.alpha)

    def test_rejects_scores_outside_unit_interval(self):
        with pytest.raises(ValueError):
            solve_att_alpha([0.5, 1.0])
        with pytest.raises(ValueError):
            solve_att_alpha([0.0, 0.5])
