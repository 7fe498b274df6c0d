#include <doctest.h>

#include <cmath>
#include <vector>

#include "avk/chains.hpp"
#include "avk/oracle.hpp"
#include "avk/seedstream.hpp"
#include "avk/verify.hpp"

using namespace avk;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Chain geodesic_chain(std::initializer_list<double> heights) {
    std::vector<HPoint> pts;
    for (double h : heights)
        pts.emplace_back(0.0, h);
    return Chain(std::move(pts));
}

double max_pairwise_diff(const Chain& a, const Chain& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            worst = std::max(worst, std::abs(dist(a.points()[i], a.points()[j]) -
                                             dist(b.points()[i], b.points()[j])));
    return worst;
}

} // namespace

TEST_CASE("good_pair: zero-Gromov pairs, rejections, derived parameters") {
    const GoodPair easy = good_pair(2.0, 0.0);
    CHECK(std::abs(easy.lambda - std::exp(2.0)) < 1e-12);
    CHECK(std::abs(easy.phi - kPi / 2.0) < 1e-12);

    std::string reason;
    CHECK(!try_good_pair(0.0, 0.0, &reason));
    CHECK(reason.find("sinh(a - b) > 2 sinh(a/2)") != std::string::npos);
    CHECK_THROWS_AS(good_pair(1.0, 0.9), NotGoodPair);
    CHECK_THROWS_AS(good_pair(-1.0, 0.0), NotGoodPair);

    // (3, 0.5): sinh(2.5) > 2 sinh(1.5)
    CHECK(std::sinh(2.5) > 2.0 * std::sinh(1.5));
    const GoodPair gp = good_pair(3.0, 0.5);
    CHECK(std::abs(std::cosh(std::log(gp.lambda) / 2.0) * 2.0 * std::sinh(1.5) -
                   std::sinh(2.5)) < 1e-10);
    CHECK(std::abs(std::sinh(std::log(gp.lambda) / 2.0) / std::sin(gp.phi) -
                   std::sinh(1.5)) < 1e-10);
    CHECK(gp.lambda > 1.0);
    CHECK(gp.phi > 0.0);
    CHECK(gp.phi <= kPi / 2.0 + 1e-15);
}

TEST_CASE("good_pair_from_params round-trips the pair") {
    const GoodPair gp = good_pair(2.2, 0.31);
    const GoodPair back = good_pair_from_params(gp.lambda, gp.phi);
    CHECK(std::abs(back.a - gp.a) < 1e-9);
    CHECK(std::abs(back.b - gp.b) < 1e-9);
    CHECK_THROWS_AS(good_pair_from_params(0.9, 0.5), NotGoodPair);
}

TEST_CASE("Chain caches steps and Gromov products; rejects repeated points") {
    const Chain c({HPoint{0, 1}, HPoint{0, 2}, HPoint{1, 2}});
    CHECK(c.segments() == 2);
    CHECK(std::abs(c.steps()[0] - std::log(2.0)) < 1e-14);
    CHECK(std::abs(c.gromovs()[0] - gromov(c.points()[0], c.points()[2], c.points()[1])) <
          1e-14);
    CHECK_THROWS(Chain({HPoint{0, 1}, HPoint{0, 1}}));
    CHECK_THROWS(Chain({HPoint{0, 1}}));
}

TEST_CASE("tension: geodesic chains, three-point chains, isometry invariance") {
    CHECK(std::abs(tension(geodesic_chain({1.0, 2.0, 5.0, 9.0, 20.0}))) < 1e-12);
    CHECK(tension(geodesic_chain({1.0, 3.0})) == 0.0);
    CHECK(tension(Chain({HPoint{0, 1}, HPoint{1, 1}, HPoint{1, 3}})) == 0.0); // n = 2

    SeedStream rng(201);
    const GoodPair gp = good_pair(1.5, 0.2);
    for (int k = 0; k < 200; ++k) {
        const Chain c = sample_good_chain(gp, 6, rng.next_u64(), false);
        const Mat2 m = Mat2::rotation(rng.uniform(0.0, 2.0 * kPi)) *
                       Mat2::axis_move(rng.uniform(-2.0, 2.0)) *
                       Mat2::rotation(rng.uniform(0.0, 2.0 * kPi));
        CHECK(std::abs(tension(mobius_apply(m, c)) - tension(c)) < 1e-9);
    }
}

TEST_CASE("tension agrees with the definition-direct oracle") {
    SeedStream rng(202);
    const GoodPair gp = good_pair(1.2, 0.1);
    for (int k = 0; k < 1000; ++k) {
        const Chain c = sample_good_chain(gp, 3 + int(rng.uniform_index(8)), rng.next_u64(),
                                          rng.coin());
        const auto& pts = c.points();
        const double ref = oracle::tension(
            pts.size(), [&](std::size_t i, std::size_t j) { return dist(pts[i], pts[j]); });
        CHECK(std::abs(tension(c) - ref) < 1e-12);
    }
}

TEST_CASE("tension from points and from move factors agree at moderate extent") {
    SeedStream rng(210);
    const GoodPair gp = good_pair(1.0, 0.4 * pair_b_max(1.0));
    for (int k = 0; k < 500; ++k) {
        const int n = 3 + int(rng.uniform_index(5));
        const std::uint64_t seed = rng.next_u64();
        const bool convex = rng.coin();
        const ChainMoves moves = sample_good_moves(gp, n, seed, convex);
        const Chain pts = sample_good_chain(gp, n, seed, convex);
        CHECK(std::abs(tension(moves) - tension(pts)) < 1e-11);
        CHECK(std::abs(endpoint_distance(moves) -
                       dist(pts.points().front(), pts.points().back())) < 1e-11);
        const auto gs = gromovs_from_moves(moves);
        for (std::size_t j = 0; j < gs.size(); ++j)
            CHECK(std::abs(gs[j] - pts.gromovs()[j]) < 1e-11);
    }
}

TEST_CASE("is_good_chain: canonical chains, geodesics, short steps") {
    const GoodPair gp = good_pair(2.0, 0.3);
    CHECK(is_good_chain(canonical_chain(gp, 8), gp));
    CHECK(is_good_chain(geodesic_chain({1.0, std::exp(2.0), std::exp(4.5)}), gp));
    // one step of length a/2
    CHECK(!is_good_chain(geodesic_chain({1.0, std::exp(1.0), std::exp(3.5)}), gp));
}

TEST_CASE("is_convex: canonical, geodesic, zigzag, reflex") {
    const GoodPair gp = good_pair(2.0, 0.3);
    CHECK(is_convex(canonical_chain(gp, 10)));
    CHECK(is_convex(geodesic_chain({1.0, 2.0, 4.0, 9.0})));
    const Chain zigzag(
        {HPoint{0, 1}, HPoint{1, 1}, HPoint{0.5, 2.0}, HPoint{1.5, 2.5}});
    CHECK(is_convex(zigzag) == oracle::convex_hull_klein(zigzag.points()));
    CHECK(!is_convex(zigzag));
    // reflex vertex: third point pulled inside the hull of the rest
    const Chain reflex({HPoint{-1, 1}, HPoint{0, 0.4}, HPoint{0.05, 0.5}, HPoint{1, 1}});
    CHECK(!is_convex(reflex));
}

TEST_CASE("is_convex matches the Klein hull oracle on sampled chains") {
    SeedStream rng(203);
    const GoodPair gp = good_pair(0.9, 0.5 * pair_b_max(0.9));
    for (int k = 0; k < 1000; ++k) {
        const Chain c = sample_good_chain(gp, 5, rng.next_u64(), rng.coin());
        CHECK(is_convex(c) == oracle::convex_hull_klein(c.points()));
    }
}

TEST_CASE("canonical_chain: equal steps, vertical b = 0 chains, Gromov = b") {
    // lambda = 1.5, phi = 13.404 degrees
    const GoodPair fig = good_pair_from_params(1.5, 13.404 * kPi / 180.0);
    const Chain c = canonical_chain(fig, 6);
    for (double s : c.steps())
        CHECK(std::abs(s - fig.a) < 1e-9);
    for (double g : c.gromovs())
        CHECK(std::abs(g - fig.b) < 1e-9);

    const GoodPair vertical = good_pair(1.7, 0.0);
    const Chain v = canonical_chain(vertical, 5);
    for (std::size_t j = 0; j < v.size(); ++j) {
        CHECK(std::abs(v.points()[j].re) < 1e-12 * v.points()[j].im);
        CHECK(std::abs(v.points()[j].im - std::exp(1.7 * j)) < 1e-9 * std::exp(1.7 * j));
    }

    const GoodPair gp = good_pair(3.0, 0.5);
    const Chain wide = canonical_chain(gp, 8);
    for (double g : wide.gromovs())
        CHECK(std::abs(g - 0.5) < 1e-9);
}

TEST_CASE("distorted_chain: canonical coincidence, step realization, per-step lambdas") {
    const GoodPair gp = good_pair(2.4, 0.35);
    const std::vector<double> flat(6, gp.a);
    CHECK(max_pairwise_diff(distorted_chain(flat, gp), canonical_chain(gp, 6)) < 1e-9);

    const std::vector<double> one{1.3 * gp.a};
    const Chain two = distorted_chain(one, gp);
    CHECK(two.size() == 2);
    CHECK(std::abs(two.steps()[0] - one[0]) < 1e-9);

    const std::vector<double> mixed{gp.a, 2.0 * gp.a, gp.a};
    const Chain m = distorted_chain(mixed, gp);
    for (std::size_t j = 1; j < m.size(); ++j) {
        // sinh(log(lambda_j)/2) = sin(phi) sinh(step_j / 2)
        const double t_prev = std::hypot(m.points()[j - 1].re, m.points()[j - 1].im);
        const double t_cur = std::hypot(m.points()[j].re, m.points()[j].im);
        const double log_lambda_j = std::log(t_cur / t_prev);
        CHECK(std::abs(std::sinh(log_lambda_j / 2.0) -
                       std::sin(gp.phi) * std::sinh(mixed[j - 1] / 2.0)) < 1e-9);
    }
    CHECK_THROWS_AS(distorted_chain(std::vector<double>{gp.a / 2.0}, gp), StepTooShort);
}

TEST_CASE("open_angle: identity deformation, straightened vertex, monotone tension") {
    const GoodPair gp = good_pair(1.6, 0.25);
    const Chain c = sample_good_chain(gp, 5, 424242, true);
    const std::vector<double> angles = interior_angles(c);

    const Chain same = open_angle(c, 2, angles[1]);
    CHECK(max_pairwise_diff(c, same) < 1e-9);

    const Chain straight = open_angle(c, 2, kPi);
    CHECK(std::abs(straight.gromovs()[1]) < 1e-9);

    double prev = tension(open_angle(c, 2, angles[1]));
    for (int i = 1; i <= 20; ++i) {
        const double gamma = angles[1] + (kPi - angles[1]) * i / 20.0;
        const double t = tension(open_angle(c, 2, gamma));
        CHECK(t <= prev + 1e-9);
        prev = t;
    }

    CHECK_THROWS_AS(open_angle(c, 2, angles[1] - 0.1), AngleOutOfRange);
    CHECK_THROWS_AS(open_angle(c, 2, kPi + 0.1), AngleOutOfRange);
    const Chain zigzag(
        {HPoint{0, 1}, HPoint{1, 1}, HPoint{0.5, 2.0}, HPoint{1.5, 2.5}});
    CHECK_THROWS_AS(open_angle(zigzag, 1, 3.0), NotConvexInput);
}

TEST_CASE("tension_closed_form matches the distance route") {
    const std::vector<double> lambdas{2.0, 2.0, 2.0};
    const double alpha = kPi / 4.0;
    std::vector<HPoint> pts;
    double t = 1.0;
    pts.emplace_back(std::cos(alpha), std::sin(alpha));
    for (double l : lambdas) {
        t *= l;
        pts.emplace_back(t * std::cos(alpha), t * std::sin(alpha));
    }
    CHECK(std::abs(tension_closed_form(lambdas, alpha) - tension(Chain(pts))) < 1e-9);

    CHECK(tension_closed_form(std::vector<double>{1.7, 2.9}, 0.9) == 0.0); // n = 2

    SeedStream rng(204);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 2 + rng.uniform_index(7);
        std::vector<double> ls(n);
        for (auto& l : ls)
            l = 1.0 + rng.uniform(0.05, 2.5);
        const double a = rng.uniform(0.05, kPi / 2.0);
        std::vector<HPoint> q;
        double tt = 1.0;
        q.emplace_back(std::cos(a), std::sin(a));
        for (double l : ls) {
            tt *= l;
            q.emplace_back(tt * std::cos(a), tt * std::sin(a));
        }
        CHECK(std::abs(tension_closed_form(ls, a) - tension(Chain(q))) < 1e-9);
    }
}

TEST_CASE("tension_closed_form: sin^2 in the radical is forced by the distance route") {
    // The same product formula with sin(alpha) instead of sin^2(alpha) in the
    // radical does not reproduce distances; freezing the resolution here.
    const std::vector<double> lambdas{2.0, 3.0, 1.5};
    const double alpha = 0.7;
    const auto g_variant = [&](double x, double y, double s) {
        return std::abs(y - x) + std::sqrt((y - x) * (y - x) + 4.0 * x * y * s);
    };
    const auto closed_with = [&](double s) {
        std::vector<double> ts{1.0};
        for (double l : lambdas)
            ts.push_back(ts.back() * l);
        double tau = 0.0;
        for (std::size_t j = 0; j + 2 < ts.size(); ++j)
            tau += std::log(g_variant(ts[j], ts[j + 2], s));
        for (std::size_t j = 1; j + 2 < ts.size(); ++j)
            tau -= std::log(g_variant(ts[j], ts[j + 1], s));
        tau -= std::log(g_variant(ts.front(), ts.back(), s));
        return 2.0 * tau;
    };
    std::vector<HPoint> pts;
    double t = 1.0;
    pts.emplace_back(std::cos(alpha), std::sin(alpha));
    for (double l : lambdas) {
        t *= l;
        pts.emplace_back(t * std::cos(alpha), t * std::sin(alpha));
    }
    const double measured = tension(Chain(pts));
    const double sin2 = std::sin(alpha) * std::sin(alpha);
    CHECK(std::abs(closed_with(sin2) - measured) < 1e-12);
    CHECK(std::abs(closed_with(std::sin(alpha)) - measured) > 1e-3);
    CHECK(std::abs(tension_closed_form(lambdas, alpha) - closed_with(sin2)) < 1e-12);
}

TEST_CASE("tension_degenerate: frozen value, empty interior, bounds") {
    CHECK(std::abs(tension_degenerate(std::vector<double>{2.0, 2.0, 2.0}) -
                   2.0 * std::log(9.0 / 7.0)) < 1e-14);
    CHECK(tension_degenerate(std::vector<double>{3.0, 5.0}) == 0.0);

    SeedStream rng(205);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 2 + rng.uniform_index(7);
        std::vector<double> ls(n);
        for (auto& l : ls)
            l = 1.0 + rng.uniform(0.05, 2.5);
        const double deg = tension_degenerate(ls);
        double bound = 0.0;
        for (std::size_t j = 1; j + 1 < n; ++j)
            bound += 2.0 / (ls[j] - 1.0);
        CHECK(deg <= bound + 1e-12);
        // alpha -> 0 limit of the closed form
        CHECK(std::abs(deg - tension_closed_form(ls, 1e-6)) < 1e-4);
        // upper-bounds the closed form at every angle
        for (double a : {0.1, 0.5, 1.0, kPi / 2.0})
            CHECK(tension_closed_form(ls, a) <= deg + 1e-10);
    }
}

TEST_CASE("ap_bound: n = 2 floor and direct substitution") {
    const GoodPair two = good_pair_from_params(2.0, 0.7);
    CHECK(std::abs(two.lambda - 2.0) < 1e-12);
    CHECK(ap_bound(2, two) == 0.0);
    CHECK(std::abs(ap_bound(5, two) - 6.0) < 1e-10);
}

TEST_CASE("ap_bound dominates sampled tensions") {
    SeedStream rng(206);
    for (auto [a, b] : default_pair_grid()) {
        const GoodPair gp = good_pair(a, b);
        for (int k = 0; k < 50; ++k) {
            const Chain c = sample_good_chain(gp, 7, rng.next_u64(), rng.coin());
            CHECK(std::abs(tension(c)) <= ap_bound(7, gp) + 1e-9 * 7);
        }
    }
}

TEST_CASE("regular_polygon_chain: symmetry, closed-form tension, growth in r") {
    const Chain c = regular_polygon_chain(7, 2.0);
    CHECK(c.size() == 8);
    CHECK(dist(c.points().front(), c.points().back()) == 0.0);
    for (double s : c.steps())
        CHECK(std::abs(s - c.steps()[0]) < 1e-10);

    const double d01 = c.steps()[0];
    const double d02 = dist(c.points()[0], c.points()[2]);
    CHECK(std::abs(tension(c) - (6.0 * d02 - 5.0 * d01)) < 1e-9);
    CHECK(tension(c) >= d02 - 1e-9);
    CHECK(is_convex(c));
    CHECK(oracle::convex_hull_klein(c.points()));

    double prev = -1.0;
    for (double r : {1.0, 2.0, 4.0, 8.0}) {
        const Chain p = regular_polygon_chain(6, r);
        const double ratio = tension(p) / 6.0;
        CHECK(ratio > prev);
        prev = ratio;
    }
}

TEST_CASE("sample_good_chain: postconditions and determinism") {
    const GoodPair gp = good_pair(1.8, 0.5 * pair_b_max(1.8));
    for (int seed = 0; seed < 1000; ++seed) {
        const Chain c = sample_good_chain(gp, 6, seed, seed % 2 == 0);
        CHECK(is_good_chain(c, gp));
        if (seed % 2 == 0)
            CHECK(is_convex(c));
    }
    const Chain a = sample_good_chain(gp, 6, 99, true);
    const Chain b = sample_good_chain(gp, 6, 99, true);
    for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(a.points()[j].re == b.points()[j].re);
        CHECK(a.points()[j].im == b.points()[j].im);
    }
}

TEST_CASE("pairs near the admissibility boundary stay finite and bounded") {
    SeedStream rng(211);
    for (double a : {0.3, 0.8, 2.0, 6.0}) {
        for (double f : {0.0, 0.5, 0.95, 0.999}) {
            const GoodPair gp = good_pair(a, f * pair_b_max(a));
            CHECK(gp.lambda > 1.0);
            CHECK(std::isfinite(gp.lambda));
            CHECK(gp.phi > 0.0);
            for (int k = 0; k < 50; ++k) {
                const ChainMoves moves = sample_good_moves(gp, 6, rng.next_u64(), rng.coin());
                const double tau = tension(moves);
                CHECK(std::isfinite(tau));
                CHECK(std::abs(tau) <= ap_bound(6, gp) + 1e-9 * 6);
            }
        }
    }
}

TEST_CASE("tanh inequality on constrained quadruples") {
    SeedStream rng(207);
    int tested = 0;
    while (tested < 10000) {
        double v[4];
        for (double& x : v)
            x = rng.uniform(0.0, 10.0);
        std::sort(std::begin(v), std::end(v));
        const double x = v[0], z = v[1], w = v[2], y = v[3];
        if (x + y > z + w)
            continue;
        ++tested;
        CHECK(std::tanh(x) + std::tanh(y) <= std::tanh(z) + std::tanh(w) + 1e-12);
    }
}

TEST_CASE("convex good chains: nonnegative tension, distortion bound, angle comparison") {
    SeedStream rng(208);
    const GoodPair gp = good_pair(1.4, 0.5 * pair_b_max(1.4));
    for (int k = 0; k < 300; ++k) {
        const int n = 3 + int(rng.uniform_index(6));
        const Chain c = sample_good_chain(gp, n, rng.next_u64(), true);
        CHECK(tension(c) >= -1e-9 * n);
        // distorted chain with the same steps has at least the tension
        const Chain d = distorted_chain(c.steps(), gp);
        CHECK(tension(c) <= tension(d) + 1e-9);
    }
    // triple angle comparison: chain angle >= distorted angle
    for (int k = 0; k < 300; ++k) {
        const Chain c = sample_good_chain(gp, 2, rng.next_u64(), true);
        const Chain d = distorted_chain(c.steps(), gp);
        const double ang_c = angle_from_sides(c.steps()[0], c.steps()[1],
                                              dist(c.points()[0], c.points()[2]));
        const double ang_d = angle_from_sides(d.steps()[0], d.steps()[1],
                                              dist(d.points()[0], d.points()[2]));
        CHECK(ang_c >= ang_d - 1e-9);
    }
}

TEST_CASE("convex good chains: endpoint maximality and sub-chain goodness") {
    SeedStream rng(209);
    const GoodPair gp = good_pair(1.7, 0.4 * pair_b_max(1.7));
    for (int k = 0; k < 200; ++k) {
        const int n = 3 + int(rng.uniform_index(5));
        const Chain c = sample_good_chain(gp, n, rng.next_u64(), true);
        const auto& pts = c.points();
        const double span = dist(pts.front(), pts.back());
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                CHECK(span >= dist(pts[i], pts[j]) - 1e-9);
        CHECK(angle_from_sides(c.steps()[0], span, dist(pts[1], pts.back())) <=
              kPi / 2.0 + 1e-9);
        // contiguous sub-chains inherit the pair's bounds verbatim
        const Chain mid(std::vector<HPoint>(pts.begin() + 1, pts.end()));
        CHECK(is_good_chain(mid, gp));
        // endpoint-skipping triples x_0, x_k, x_n stay phi-good: their vertex
        // is at least as open as the constant-curvature triple with the same
        // sides, i.e. the Gromov product does not exceed the distorted one.
        for (std::size_t k2 = 1; k2 + 1 < pts.size(); ++k2) {
            const double s1 = dist(pts.front(), pts[k2]);
            const double s2 = dist(pts[k2], pts.back());
            const double g = gromov(pts.front(), pts.back(), pts[k2]);
            const Chain z = distorted_chain(std::vector<double>{s1, s2}, gp);
            CHECK(g <= z.gromovs()[0] + 1e-9);
        }
    }
}
