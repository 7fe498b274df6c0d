#include <doctest.h>

#include <cmath>

#include "avk/hyp2.hpp"
#include "avk/seedstream.hpp"

using namespace avk;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

HPoint random_point(SeedStream& rng, double box = 4.0) {
    return {rng.uniform(-box, box), std::exp(rng.uniform(-2.0, 2.0))};
}

} // namespace

TEST_CASE("dist: axis, unit circle and identity values") {
    const HPoint i{0.0, 1.0};
    CHECK(std::abs(dist(i, HPoint{0.0, 2.0}) - std::log(2.0)) < 1e-15);
    // cosh d(i, e^{i phi}) = csc(phi); phi = pi/6 gives arccosh(2)
    const HPoint e30{std::cos(kPi / 6.0), std::sin(kPi / 6.0)};
    CHECK(std::abs(dist(i, e30) - std::acosh(2.0)) < 1e-14);
    CHECK(dist(i, i) == 0.0);
    const HPoint p{1.25, 0.75};
    CHECK(dist(p, p) == 0.0);
}

TEST_CASE("dist: symmetry and triangle inequality on random triples") {
    SeedStream rng(101);
    for (int k = 0; k < 2000; ++k) {
        const HPoint x = random_point(rng), y = random_point(rng), z = random_point(rng);
        CHECK(std::abs(dist(x, y) - dist(y, x)) < 1e-12);
        CHECK(dist(x, y) <= dist(x, z) + dist(z, y) + 1e-10);
    }
}

TEST_CASE("dist: small-separation branch is continuous across the threshold") {
    SeedStream rng(102);
    for (int k = 0; k < 500; ++k) {
        const HPoint p = random_point(rng);
        // displacements straddling the 1e-4 branch switch
        for (double eps : {2e-5, 9.9e-5, 1.01e-4, 5e-4}) {
            const HPoint q{p.re + eps * 0.6, p.im + eps * 0.8};
            const double d = dist(p, q);
            const long double num = (long double)(q.re - p.re) * (q.re - p.re) +
                                    (long double)(q.im - p.im) * (q.im - p.im);
            const long double arg = 1.0L + num / (2.0L * (long double)p.im * (long double)q.im);
            const double ref = (double)acoshl(arg);
            CHECK(std::abs(d - ref) < 1e-12 + 1e-6 * d);
        }
    }
}

TEST_CASE("dist: extreme coordinates stay finite and consistent") {
    const HPoint lo{0.0, 1e-140}, hi{0.0, 1e140};
    CHECK(std::abs(dist(lo, hi) - std::log(1e140 / 1e-140)) < 1e-9);
    // horizontal translation invariance at an offset doubles still resolve
    const HPoint far1{1e9, 2.0}, far2{1e9 + 3.0, 2.0};
    CHECK(std::abs(dist(far1, far2) - dist(HPoint{0.0, 2.0}, HPoint{3.0, 2.0})) < 1e-12);
    // and plain finiteness where the quotient form would overflow
    CHECK(std::isfinite(dist(HPoint{1e200, 1e-120}, HPoint{-3.0, 1e140})));
}

TEST_CASE("gromov: collinearity, degeneracy, vertical geodesic") {
    const HPoint i{0.0, 1.0};
    const HPoint z{0.0, 2.0};
    const HPoint y{0.0, 4.0};
    CHECK(std::abs(gromov(i, y, z)) < 1e-14);              // z between x and y
    CHECK(std::abs(gromov(i, i, z) - dist(i, z)) < 1e-14); // x = y
    SeedStream rng(103);
    for (int k = 0; k < 2000; ++k) {
        const HPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
        CHECK(gromov(a, b, c) >= -1e-12);
    }
    // vanishes on constructed collinear triples, mid point between the ends
    for (int k = 0; k < 500; ++k) {
        const HPoint p = random_point(rng);
        const double theta = rng.uniform(0.0, 2.0 * kPi);
        const double t1 = rng.uniform(0.1, 2.0);
        const double t2 = t1 + rng.uniform(0.1, 2.0);
        const HPoint mid = geodesic_point(p, theta, t1);
        const HPoint far = geodesic_point(p, theta, t2);
        CHECK(std::abs(gromov(p, far, mid)) < 1e-10);
    }
}

TEST_CASE("angle_from_sides: collinear limits and error paths") {
    CHECK(std::abs(angle_from_sides(1.0, 2.0, 3.0) - kPi) < 1e-12);
    CHECK(std::abs(angle_from_sides(1.0, 2.0, 1.0)) < 1e-6); // c = |a-b|, angle 0
    CHECK_THROWS_AS(angle_from_sides(0.0, 1.0, 1.0), DegenerateTriangle);
    CHECK_THROWS_AS(angle_from_sides(1.0, 1.0, 2.5), InvalidSides);
    CHECK_THROWS_AS(angle_from_sides(1.0, 1.0, -0.5), InvalidSides);
}

TEST_CASE("angle_from_sides: equilateral triangle matches the half-angle identity") {
    // sin^2(gamma/2) = sinh(a - g) sinh(b - g) / (sinh a sinh b) with g the
    // Gromov product of the triple; for sides (1,1,1), g = 1/2.
    const double gamma = angle_from_sides(1.0, 1.0, 1.0);
    const double s = std::sinh(0.5) / std::sinh(1.0);
    CHECK(std::abs(std::sin(gamma / 2.0) - s) < 1e-14);
}

TEST_CASE("angle_from_sides: half-angle identity on random valid triangles") {
    SeedStream rng(104);
    for (int k = 0; k < 2000; ++k) {
        const HPoint x = random_point(rng), v = random_point(rng), y = random_point(rng);
        const double a = dist(v, x), b = dist(v, y), c = dist(x, y);
        if (a < 1e-6 || b < 1e-6)
            continue;
        const double g = (a + b - c) / 2.0;
        const double gamma = angle_from_sides(a, b, c);
        const double rhs = std::sinh(a - g) * std::sinh(b - g) / (std::sinh(a) * std::sinh(b));
        const double lhs = std::sin(gamma / 2.0) * std::sin(gamma / 2.0);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("lc_length: degenerate angles and the placed right triangle") {
    CHECK(std::abs(lc_length(1.3, 0.4, kPi) - 1.7) < 1e-12);
    CHECK(std::abs(lc_length(1.3, 0.4, 0.0) - 0.9) < 1e-12);
    // right angle at i: one leg up the axis, one along the unit circle
    const HPoint i{0.0, 1.0};
    const HPoint up{0.0, std::exp(1.0)};
    const HPoint side{std::tanh(1.0), 1.0 / std::cosh(1.0)};
    CHECK(std::abs(dist(i, up) - 1.0) < 1e-12);
    CHECK(std::abs(dist(i, side) - 1.0) < 1e-12);
    const double L = lc_length(1.0, 1.0, kPi / 2.0);
    CHECK(std::abs(L - std::acosh(std::cosh(1.0) * std::cosh(1.0))) < 1e-12);
    CHECK(std::abs(L - dist(up, side)) < 1e-12);
    CHECK(std::abs(L - 1.513374006596504) < 1e-12);
}

TEST_CASE("lc_length: law-of-cosines round trip and monotonicity") {
    SeedStream rng(105);
    for (int k = 0; k < 2000; ++k) {
        const HPoint x = random_point(rng), v = random_point(rng), y = random_point(rng);
        const double a = dist(v, x), b = dist(v, y);
        if (a < 1e-6 || b < 1e-6)
            continue;
        const double gamma = angle_from_sides(a, b, dist(x, y));
        CHECK(std::abs(lc_length(a, b, gamma) - dist(x, y)) < 1e-9);
        const double L = lc_length(a, b, gamma);
        const double sh = std::sin(gamma / 2.0);
        CHECK(std::abs(std::cosh(L) -
                       (std::cosh(a - b) + 2.0 * std::sinh(a) * std::sinh(b) * sh * sh)) <
              1e-9 * std::cosh(L));
    }
    for (double g = 0.0; g < kPi - 0.1; g += 0.3)
        CHECK(lc_length(1.0, 2.0, g) <= lc_length(1.0, 2.0, g + 0.1) + 1e-12);
}

TEST_CASE("law of sines on random triangles") {
    SeedStream rng(106);
    for (int k = 0; k < 2000; ++k) {
        const HPoint x = random_point(rng), y = random_point(rng), z = random_point(rng);
        const double a = dist(y, z), b = dist(z, x), c = dist(x, y);
        if (a < 1e-4 || b < 1e-4 || c < 1e-4)
            continue;
        const double alpha = angle_from_sides(b, c, a);
        const double beta = angle_from_sides(c, a, b);
        const double gamma = angle_from_sides(a, b, c);
        const double r1 = std::sin(alpha) / std::sinh(a);
        const double r2 = std::sin(beta) / std::sinh(b);
        const double r3 = std::sin(gamma) / std::sinh(c);
        CHECK(std::abs(r1 - r2) < 1e-9 * std::max(1.0, r1));
        CHECK(std::abs(r1 - r3) < 1e-9 * std::max(1.0, r1));
    }
}

TEST_CASE("saccheri_chord: collapsing cases") {
    CHECK(std::abs(saccheri_chord(0.0, 1.7) - 1.7) < 1e-14);
    CHECK(saccheri_chord(2.1, 0.0) == 0.0);
    CHECK(saccheri_chord(1.0, 0.5) >= 0.5);
}

TEST_CASE("saccheri_chord: summit identity against measured distances") {
    // 2 arcsinh(sin(phi) sinh(l/2)) = log(lambda) with l = d(e^{i phi}, lambda e^{i phi});
    // l is the summit of the quadrilateral i, e^{i phi}, lambda e^{i phi}, lambda i.
    SeedStream rng(110);
    for (int k = 0; k < 2000; ++k) {
        const double lambda = std::exp(rng.uniform(0.05, 3.0));
        const double phi = rng.uniform(0.05, kPi / 2.0);
        const HPoint w{std::cos(phi), std::sin(phi)};
        const HPoint z{lambda * std::cos(phi), lambda * std::sin(phi)};
        const double ell = dist(w, z);
        CHECK(std::abs(2.0 * std::asinh(std::sin(phi) * std::sinh(ell / 2.0)) -
                       std::log(lambda)) < 1e-10);
        // leg = d(i, e^{i phi}) with cosh(leg) = csc(phi)
        const double leg = std::acosh(1.0 / std::sin(phi));
        CHECK(std::abs(saccheri_chord(leg, std::log(lambda)) - ell) < 1e-10);
    }
}

TEST_CASE("mobius_apply: identity, diagonal action, isometry") {
    const HPoint p{0.7, 1.9};
    const HPoint q = mobius_apply(Mat2::identity(), p);
    CHECK(q.re == p.re);
    CHECK(q.im == p.im);
    const double lambda = 3.7;
    const HPoint r = mobius_apply(Mat2::axis_move(std::log(lambda)), HPoint{0.0, 1.0});
    CHECK(std::abs(r.re) < 1e-15);
    CHECK(std::abs(r.im - lambda) < 1e-12);

    SeedStream rng(107);
    for (int k = 0; k < 10000; ++k) {
        const Mat2 m = Mat2::rotation(rng.uniform(0.0, 2.0 * kPi)) *
                       Mat2::axis_move(rng.uniform(-4.0, 4.0)) *
                       Mat2::rotation(rng.uniform(0.0, 2.0 * kPi));
        const HPoint x = random_point(rng), y = random_point(rng);
        CHECK(std::abs(dist(mobius_apply(m, x), mobius_apply(m, y)) - dist(x, y)) < 1e-10);
    }
}

TEST_CASE("Mat2: construction normalizes near-unit determinants, rejects the rest") {
    const Mat2 m(2.0 * (1.0 + 5e-7), 0.0, 0.0, 0.5);
    CHECK(std::abs(m.det() - 1.0) < 1e-12);
    CHECK_THROWS_AS(Mat2(1.0, 0.0, 0.0, 0.9), InvalidMatrix);
    CHECK_THROWS_AS(Mat2(1.0, 0.0, 0.0, -1.0), InvalidMatrix);
    CHECK_THROWS_AS(Mat2(0.0, 0.0, 0.0, 0.0), InvalidMatrix);
}

TEST_CASE("reflect_across: fixed points, involution, unit-circle inversion") {
    const HPoint g1{std::cos(2.2), std::sin(2.2)};
    const HPoint g2{std::cos(0.4), std::sin(0.4)};
    // the geodesic through g1, g2 is the unit semicircle; inversion z -> 1/conj z
    const HPoint img = reflect_across(HPoint{0.0, 2.0}, g1, g2);
    CHECK(std::abs(img.re) < 1e-12);
    CHECK(std::abs(img.im - 0.5) < 1e-12);

    SeedStream rng(108);
    for (int k = 0; k < 1000; ++k) {
        const HPoint a = random_point(rng), b = random_point(rng);
        if (dist(a, b) < 1e-3)
            continue;
        const HPoint p = random_point(rng);
        const HPoint rp = reflect_across(p, a, b);
        const HPoint rrp = reflect_across(rp, a, b);
        CHECK(std::abs(rrp.re - p.re) < 1e-9 * std::max(1.0, std::abs(p.re)));
        CHECK(std::abs(rrp.im - p.im) < 1e-9 * std::max(1.0, p.im));
        CHECK(std::abs(dist(rp, a) - dist(p, a)) < 1e-9);
        CHECK(std::abs(dist(rp, b) - dist(p, b)) < 1e-9);
        const HPoint fa = reflect_across(a, a, b);
        CHECK(dist(fa, a) < 1e-9);
    }
    CHECK_THROWS_AS(reflect_across(HPoint{0, 2}, HPoint{1, 1}, HPoint{1, 1}), DegenerateGeodesic);
}

TEST_CASE("reflect_across: vertical geodesic mirrors the real coordinate") {
    const HPoint img = reflect_across(HPoint{2.0, 3.0}, HPoint{0.5, 1.0}, HPoint{0.5, 4.0});
    CHECK(std::abs(img.re - (-1.0)) < 1e-14);
    CHECK(std::abs(img.im - 3.0) < 1e-14);
}

TEST_CASE("direction_angle and geodesic_point invert each other") {
    SeedStream rng(109);
    for (int k = 0; k < 2000; ++k) {
        const HPoint p = random_point(rng), q = random_point(rng);
        const double d = dist(p, q);
        if (d < 1e-4)
            continue;
        const HPoint q2 = geodesic_point(p, direction_angle(p, q), d);
        CHECK(dist(q2, q) < 1e-9 * std::max(1.0, d));
    }
    // straight up and along the unit circle from i
    const HPoint up = geodesic_point(HPoint{0, 1}, kPi / 2.0, 1.0);
    CHECK(std::abs(up.im - std::exp(1.0)) < 1e-12);
    const HPoint right = geodesic_point(HPoint{0, 1}, 0.0, 1.0);
    CHECK(std::abs(right.re - std::tanh(1.0)) < 1e-12);
    CHECK(std::abs(right.im - 1.0 / std::cosh(1.0)) < 1e-12);
}

TEST_CASE("turn_sign distinguishes the two sides and collinearity") {
    const HPoint a{0.0, 1.0};
    const HPoint b{0.0, 2.0};
    const HPoint left{-0.5, 3.0};
    const HPoint right{0.5, 3.0};
    const HPoint straight{0.0, 4.0};
    CHECK(turn_sign(a, b, left) == -turn_sign(a, b, right));
    CHECK(turn_sign(a, b, left) != 0);
    CHECK(turn_sign(a, b, straight) == 0);
    CHECK(turn_sign(a, b, b) == 0); // zero-length edge
}

TEST_CASE("HPoint validation") {
    CHECK_THROWS_AS(HPoint(0.0, 0.0), InvalidPoint);
    CHECK_THROWS_AS(HPoint(0.0, -1.0), InvalidPoint);
    CHECK_THROWS_AS(HPoint(std::nan(""), 1.0), InvalidPoint);
}
