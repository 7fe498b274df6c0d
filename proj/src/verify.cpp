#include "avk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avk/seedstream.hpp"

namespace avk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInf = std::numeric_limits<double>::infinity();

double tau4(const HPoint& x0, const HPoint& x1, const HPoint& x2, const HPoint& x3) {
    return dist(x0, x2) + dist(x1, x3) - dist(x1, x2) - dist(x0, x3);
}

} // namespace

std::uint64_t derive_sample_seed(std::uint64_t root, std::string_view suite, std::size_t cell,
                                 std::size_t sample) {
    return SeedStream(root).sub(suite).sub(cell).sub(sample).next_u64();
}

SampleResult check_ap_sample(const GoodPair& gp, int n, std::uint64_t seed, bool convex) {
    const ChainMoves moves = sample_good_moves(gp, n, seed, convex);
    SampleResult r;
    r.seed = seed;
    r.tau = tension(moves);
    r.bound = ap_bound(n, gp);
    r.margin = r.bound + 1e-9 * n - std::abs(r.tau);
    r.ok = r.margin >= 0.0;
    return r;
}

SampleResult check_matrix_sample(const GoodPair& gp, int n, std::uint64_t seed, double c) {
    dictionary(gp.a, gp.b, c); // validates a - 2b > log(4c/(c-1))
    SeedStream rng = SeedStream(seed).sub("matrix_sample");
    const bool convex = rng.coin();
    const ChainMoves moves = sample_good_moves(gp, n, seed, convex);
    SeedStream rot = rng.sub("rotations");
    const MatChain mc = mat_chain_from_moves(moves, rot);
    const MetricChain orbit = mc.orbit_metric();
    const double residual = ap_residual(mc);
    const double tau = tension(orbit);

    SampleResult r;
    r.seed = seed;
    r.tau = tau;
    r.bound = 8.0 * c * (n - 2) * std::exp(2.0 * gp.b - gp.a);
    const double consistency = std::abs(residual + tau / 2.0);
    r.margin = std::min(r.bound - std::abs(residual), 1e-9 - consistency);
    r.ok = std::abs(residual) <= r.bound && consistency <= 1e-9 && is_good_chain(orbit, gp);
    return r;
}

SampleResult check_cat_sample(Backend backend, const GoodPair& gp, int n, std::uint64_t seed) {
    const MetricChain mc = sample_good_chain_in(backend, gp, n, seed);
    const CatReport rep = verify_cat_comparison(mc);
    SampleResult r;
    r.seed = seed;
    r.tau = rep.tau_source;
    r.bound = rep.tau_image + 1e-9 * n;
    r.margin = r.bound - std::abs(rep.tau_source);
    r.ok = rep.ok;
    if (n == 3) {
        const double endpoint_margin = rep.endpoint_source - rep.endpoint_image + 1e-9;
        r.margin = std::min(r.margin, endpoint_margin);
        r.ok = r.ok && endpoint_margin >= 0.0;
    }
    return r;
}

double phi_monotone_margin(std::span<const double> lambdas, int grid, double tmax) {
    double margin = kInf;
    double prev = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double t = 1.0 + (tmax - 1.0) * i / (grid - 1);
        const double tau = tension_closed_form(lambdas, std::asin(1.0 / t));
        if (i > 0)
            margin = std::min(margin, tau - prev);
        prev = tau;
    }
    return margin;
}

OpenAngleMargins open_angle_margins(const ChainMoves& moves, std::size_t k, int grid,
                                    std::uint64_t seed) {
    const std::size_t n = moves.steps.size();
    if (k < 1 || k > n - 1)
        throw Error("open_angle_margins: k must index an interior vertex");
    const double alpha = kPi - std::abs(moves.turns[k - 1]);
    SeedStream rng = SeedStream(seed).sub("tuples");
    // A handful of nested index quadruples p <= q <= r <= s.
    std::vector<std::array<std::size_t, 4>> tuples;
    tuples.push_back({0, 0, n - 1, n});
    tuples.push_back({0, 1, n, n});
    for (int i = 0; i < 6; ++i) {
        std::array<std::size_t, 4> t{rng.uniform_index(n + 1), rng.uniform_index(n + 1),
                                     rng.uniform_index(n + 1), rng.uniform_index(n + 1)};
        std::sort(t.begin(), t.end());
        tuples.push_back(t);
    }

    OpenAngleMargins m{kInf, kInf};
    double prev_tau = 0.0;
    std::vector<double> prev_tuple(tuples.size(), 0.0);
    ChainMoves opened = moves;
    for (int i = 0; i < grid; ++i) {
        const double gamma = alpha + (kPi - alpha) * i / (grid - 1);
        opened.turns[k - 1] = kPi - gamma; // same side as the convex input
        const MetricChain mc = metric_chain_from_moves(opened);
        const double tau = tension(mc);
        std::vector<double> tuple_vals(tuples.size());
        for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
            const auto& [p, q, r, s] = tuples[ti];
            tuple_vals[ti] = mc.dist(p, s) - mc.dist(q, r);
        }
        if (i > 0) {
            m.tau_margin = std::min(m.tau_margin, prev_tau - tau);
            for (std::size_t ti = 0; ti < tuples.size(); ++ti)
                m.tuple_margin = std::min(m.tuple_margin, tuple_vals[ti] - prev_tuple[ti]);
        }
        prev_tau = tau;
        prev_tuple = std::move(tuple_vals);
    }
    return m;
}

double reflection_margin(const GoodPair& gp, std::uint64_t seed, int grid) {
    SeedStream rng = SeedStream(seed).sub("reflection");
    const Chain triple = sample_good_chain(gp, 2, rng.next_u64(), true);
    const HPoint x0 = triple.points()[0];
    const HPoint x1 = triple.points()[1];
    const HPoint x2 = triple.points()[2];
    const double d12 = dist(x1, x2);
    const double e = d12 + gp.a * (1.0 + rng.uniform());

    int side0 = turn_sign(x1, x2, x0);
    if (side0 == 0)
        side0 = 1; // x0 on the geodesic: both half-planes are equivalent
    const double theta = direction_angle(x1, x2);
    // Rotation sign landing x3 in x0's half-plane, fixed at gamma = pi/2.
    double rot = 1.0;
    {
        const HPoint probe = geodesic_point(x1, theta + kPi / 2.0, e);
        if (turn_sign(x1, x2, probe) != side0)
            rot = -1.0;
    }

    double margin = kInf;
    bool have_prev = false;
    double prev_sum = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double gamma = kPi * (i + 1) / (grid + 1);
        const HPoint x3 = geodesic_point(x1, theta + rot * gamma, e);
        // Window: the four-point chain must stay good and convex.
        const double d23 = dist(x2, x3);
        if (d23 < gp.a)
            break;
        const double g1 = gromov(x0, x2, x1);
        const double g2 = gromov(x1, x3, x2);
        if (g1 > gp.b + 1e-12 || g2 > gp.b + 1e-12)
            break;
        const Chain four({x0, x1, x2, x3});
        if (!is_convex(four))
            break;
        const HPoint y3 = reflect_across(x3, x1, x2);
        const double sum = tau4(x0, x1, x2, x3) + tau4(x0, x1, x2, y3);
        if (have_prev)
            margin = std::min(margin, sum - prev_sum);
        prev_sum = sum;
        have_prev = true;
    }
    return margin;
}

SampleResult check_lemmas_sample(const GoodPair& gp, int n, std::uint64_t seed, int grid) {
    SeedStream rng = SeedStream(seed).sub("lemmas");

    // Constant-curvature chain for the phi sweep.
    std::vector<double> lambdas(static_cast<std::size_t>(n));
    for (auto& l : lambdas)
        l = 1.0 + rng.uniform(0.05, 2.0);
    const double margin_phi = phi_monotone_margin(lambdas, grid, 10.0);

    // Convex good chain (endpoint-maximal by convexity) for the angle sweep.
    const ChainMoves base = sample_good_moves(gp, n, rng.next_u64(), true);
    const std::size_t k = 1 + rng.uniform_index(static_cast<std::uint64_t>(n) - 1);
    const OpenAngleMargins oam = open_angle_margins(base, k, grid, rng.next_u64());

    const double margin_refl = reflection_margin(gp, rng.next_u64(), grid);

    SampleResult r;
    r.seed = seed;
    r.tau = tension(base);
    r.bound = 0.0;
    r.margin = std::min({margin_phi, oam.tau_margin, oam.tuple_margin, margin_refl});
    r.ok = r.margin >= -1e-9;
    return r;
}

double pair_b_max(double a) { return a - std::asinh(2.0 * std::sinh(a / 2.0)); }

std::vector<std::pair<double, double>> default_pair_grid() {
    std::vector<std::pair<double, double>> grid;
    for (double a : {0.8, 1.2, 1.8, 2.5, 3.0})
        for (double f : {0.0, 0.25, 0.5, 0.75})
            grid.emplace_back(a, f * pair_b_max(a));
    return grid;
}

std::vector<std::pair<double, double>> matrix_pair_grid() {
    std::vector<std::pair<double, double>> grid;
    for (double a : {2.4, 2.9, 3.4, 4.0})
        for (double f : {0.0, 0.3, 0.6, 0.9}) {
            const double cap = (a - std::log(8.0) - 0.15) / 2.0;
            grid.emplace_back(a, f * std::min(pair_b_max(a), cap));
        }
    return grid;
}

} // namespace avk
