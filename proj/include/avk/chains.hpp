#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avk/hyp2.hpp"

namespace avk {

// Validated pair (a, b) with sinh(a - b) > 2 sinh(a/2), carrying the derived
// translation number lambda > 1 and curvature angle phi in (0, pi/2]:
//   cosh(log(lambda)/2) = sinh(a - b) / (2 sinh(a/2)),
//   csc(phi) sinh(log(lambda)/2) = sinh(a/2).
struct GoodPair {
    double a = 0.0;
    double b = 0.0;
    double lambda = 1.0;
    double phi = 0.0;
};

// Throws NotGoodPair with the failing condition spelled out.
GoodPair good_pair(double a, double b);

// Returns std::nullopt when the pair is not good; the failing condition is
// written to *reason when provided.
std::optional<GoodPair> try_good_pair(double a, double b, std::string* reason = nullptr);

// Inverse parametrization: the unique good pair with the given translation
// number lambda > 1 and curvature angle phi in (0, pi/2].
GoodPair good_pair_from_params(double lambda, double phi);

// Ordered chain of points x_0, ..., x_n in the upper half plane with cached
// step lengths d(x_{j-1}, x_j) and interior Gromov products
// (x_{j-1}|x_{j+1})_{x_j}. Consecutive points must be distinct.
class Chain {
public:
    explicit Chain(std::vector<HPoint> pts);

    const std::vector<HPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    std::size_t segments() const { return points_.size() - 1; } // n
    const std::vector<double>& steps() const { return steps_; }
    const std::vector<double>& gromovs() const { return gromovs_; }

private:
    std::vector<HPoint> points_;
    std::vector<double> steps_;   // steps_[j-1] = d(x_{j-1}, x_j)
    std::vector<double> gromovs_; // gromovs_[j-1] = (x_{j-1}|x_{j+1})_{x_j}
};

// Sum of skip distances minus interior steps minus the endpoint distance:
//   sum_{j=1}^{n-1} d(x_{j-1}, x_{j+1}) - sum_{j=2}^{n-1} d(x_{j-1}, x_j) - d(x_0, x_n).
// Zero for n = 1 and n = 2.
double tension(const Chain& c);

// Every step >= a - 1e-12 and every interior Gromov product <= b + 1e-12.
bool is_good_chain(const Chain& c, const GoodPair& gp);

// The closed polygon x_0 x_1 ... x_n x_0 is convex: all geodesic turn signs
// along the cycle agree (zeros allowed). Turns are evaluated in the Klein
// disk through a frame centered at each vertex.
bool is_convex(const Chain& c);

// The chain x_j = lambda^j e^{i phi}, j = 0..n: every step equals a and
// every interior Gromov product equals b.
Chain canonical_chain(const GoodPair& gp, int n);

// Chain y_j = t_j e^{i phi} on the curve of constant geodesic curvature
// cos(phi), realizing the prescribed step lengths:
//   t_0 = 1, log(t_j / t_{j-1}) = 2 arcsinh(sin(phi) sinh(steps[j-1]/2)).
// Throws StepTooShort when a step is below gp.a - 1e-12.
Chain distorted_chain(std::span<const double> steps, const GoodPair& gp);

// A chain as its local moves: step lengths plus the signed frame rotation at
// each interior vertex (rotation pi - gamma realizes interior angle gamma;
// the sign picks the side). Equivalent chains up to isometry.
struct ChainMoves {
    std::vector<double> steps; // n
    std::vector<double> turns; // n - 1
};

// Turtle walk of the moves: x_0 = i, x_1 = e^{s_1} i, then turn and advance.
Chain chain_from_moves(const ChainMoves& moves);

// Turtle reconstruction: place x_0 = i, x_1 = e^{s_1} i, then realize the
// given interior angles, every turn to the same side. steps.size() = n,
// angles.size() = n - 1.
Chain chain_from_steps_angles(std::span<const double> steps, std::span<const double> angles);

// Moves of a sampled good chain (same draws as sample_good_chain).
ChainMoves sample_good_moves(const GoodPair& gp, int n, std::uint64_t seed, bool convex);

// Tension evaluated from the local move factors: every distance is d(i, Q~ i)
// of a product of single-step frames, so precision does not decay with the
// chain's extent the way global point coordinates do.
double tension(const ChainMoves& moves);

// d(x_{j-1}, x_{j+1}) for j = 1..n-1 and d(x_0, x_n), from local products.
std::vector<double> skip_distances(const ChainMoves& moves);
double endpoint_distance(const ChainMoves& moves);
std::vector<double> gromovs_from_moves(const ChainMoves& moves);

// Interior angles of the chain at vertices 1..n-1 (law of cosines from the
// cached triple distances).
std::vector<double> interior_angles(const Chain& c);

// Angle-opening deformation: same step lengths, same interior angles except
// gamma at vertex k, all turns to one side. Requires a convex input and
// gamma in [current angle at k, pi].
Chain open_angle(const Chain& c, std::size_t k, double gamma);

// Closed-form tension of the chain t_j e^{i alpha}, t_0 = 1,
// t_j = lambda_1 ... lambda_j, via
//   g_alpha(x, y) = |y - x| + sqrt((y - x)^2 + 4 x y sin^2(alpha)),
//   tau = 2 log( prod_j g(t_j, t_{j+2}) / (g(t_0, t_n) prod_j g(t_j, t_{j+1})) ),
// which matches the distance route d(t e^{ia}, u e^{ia}) =
// 2 log(g_alpha(t, u) / (2 sqrt(t u) sin(alpha))).
double tension_closed_form(std::span<const double> lambdas, double alpha);

// alpha -> 0 limit of the closed form:
//   2 log( prod_{j=1}^{n-1} (lambda_j lambda_{j+1} - 1)
//          / ((lambda_1...lambda_n - 1) prod_{j=2}^{n-1} (lambda_j - 1)) ).
double tension_degenerate(std::span<const double> lambdas);

// (n - 2) * 2 / (lambda - 1), floored at zero for n = 2.
double ap_bound(int n, const GoodPair& gp);

// Closed chain x_0, ..., x_n with x_0 = x_n on the regular hyperbolic n-gon
// inscribed in the circle of radius r centered at i. Requires n >= 4.
Chain regular_polygon_chain(int n, double r);

// Seeded (a, b)-good chain: steps uniform in [a, 3a], interior Gromov
// products uniform in [0, b] converted to vertex angles, turn sides all
// equal when convex, random otherwise. Deterministic per seed.
Chain sample_good_chain(const GoodPair& gp, int n, std::uint64_t seed, bool convex);

// Chain with all points mapped through the same isometry.
Chain mobius_apply(const Mat2& m, const Chain& c);

} // namespace avk
