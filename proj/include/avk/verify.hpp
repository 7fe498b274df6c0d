#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "avk/catspaces.hpp"
#include "avk/chains.hpp"
#include "avk/cocycle.hpp"

namespace avk {

// One verification sample: the checked quantity, its admissible bound, the
// slack left (negative = violation) and the verdict.
struct SampleResult {
    std::uint64_t seed = 0;
    double tau = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool ok = false;
};

// Per-sample seeds are a pure function of (root, suite, cell, sample), so a
// reported violation can be replayed in isolation.
std::uint64_t derive_sample_seed(std::uint64_t root, std::string_view suite, std::size_t cell,
                                 std::size_t sample);

// |tau| <= (n-2) 2/(lambda-1) + 1e-9 n on a sampled good chain.
SampleResult check_ap_sample(const GoodPair& gp, int n, std::uint64_t seed, bool convex);

// Matrix chain riding a sampled good orbit: |residual| <= 8 c (n-2) e^{2b-a}
// and residual == -tension(orbit)/2 to 1e-9. Requires a - 2b > log(4c/(c-1)).
SampleResult check_matrix_sample(const GoodPair& gp, int n, std::uint64_t seed, double c = 2.0);

// |tau(chain)| <= tau(comparison chain) + 1e-9 n in the chosen backend; for
// 4-point chains also the endpoint inequality d(x_0,x_3) >= d(xbar_0,xbar_3) - 1e-9.
SampleResult check_cat_sample(Backend backend, const GoodPair& gp, int n, std::uint64_t seed);

// Bundle of the three monotonicity checks below on one sampled configuration;
// margin is the worst grid slack.
SampleResult check_lemmas_sample(const GoodPair& gp, int n, std::uint64_t seed, int grid = 100);

// Monotonicity margins; nonnegative (up to -tolerance) means the property
// held across the grid. Margins are minima of the signed successive
// differences that the statements require to be monotone.

// tau(lambdas; arccsc(t)) non-decreasing in t on [1, tmax].
double phi_monotone_margin(std::span<const double> lambdas, int grid, double tmax);

struct OpenAngleMargins {
    double tau_margin;   // tau non-increasing in gamma
    double tuple_margin; // d(x_p,x_s) - d(x_q,x_r) non-decreasing
};

// Sweep gamma at vertex k from the current angle to pi. The moves must
// describe a convex chain (all turns one side, as the convex sampler emits).
OpenAngleMargins open_angle_margins(const ChainMoves& moves, std::size_t k, int grid,
                                    std::uint64_t seed);

// Reflection sum tau(x_0..x_3(gamma)) + tau(x_0..y_3(gamma)) non-decreasing in
// gamma over the window where the four-point chain stays good and convex.
double reflection_margin(const GoodPair& gp, std::uint64_t seed, int grid);

// Largest b making (a, b) good: sinh(a - b) = 2 sinh(a/2).
double pair_b_max(double a);

// 20 good pairs spanning step scales and Gromov budgets.
std::vector<std::pair<double, double>> default_pair_grid();

// 16 good pairs with a - 2b > log 8, for the matrix suite.
std::vector<std::pair<double, double>> matrix_pair_grid();

} // namespace avk
