#include "avk/chains.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "avk/seedstream.hpp"

namespace avk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// log g_alpha(t_i, t_j) for t = e^w ratios, written through
// g_alpha(1, e^w) = 2 e^{w/2} (sinh(w/2) + sqrt(sinh^2(w/2) + sin^2(alpha)))
// so that no intermediate overflows for any chain at double scale.
double log_g_alpha(double w, double sin_alpha) {
    const double sh = std::sinh(w / 2.0);
    return std::log(2.0) + w / 2.0 + std::log(sh + std::hypot(sh, sin_alpha));
}

} // namespace

std::optional<GoodPair> try_good_pair(double a, double b, std::string* reason) {
    const auto fail = [&](const std::string& why) -> std::optional<GoodPair> {
        if (reason)
            *reason = why;
        return std::nullopt;
    };
    if (!(a >= 0.0) || !(b >= 0.0))
        return fail("a and b must be nonnegative (a=" + fmt(a) + ", b=" + fmt(b) + ")");
    const double lhs = std::sinh(a - b);
    const double rhs = 2.0 * std::sinh(a / 2.0);
    if (!(lhs > rhs))
        return fail("requires sinh(a - b) > 2 sinh(a/2): sinh(" + fmt(a - b) + ") = " + fmt(lhs) +
                    " <= " + fmt(rhs));

    GoodPair gp;
    gp.a = a;
    gp.b = b;
    const double half_log_lambda = std::acosh(lhs / rhs);
    gp.lambda = std::exp(2.0 * half_log_lambda);
    const double sin_phi = std::sinh(half_log_lambda) / std::sinh(a / 2.0);
    gp.phi = std::asin(std::clamp(sin_phi, 0.0, 1.0));
    return gp;
}

GoodPair good_pair(double a, double b) {
    std::string reason;
    if (auto gp = try_good_pair(a, b, &reason))
        return *gp;
    throw NotGoodPair("good_pair: " + reason);
}

GoodPair good_pair_from_params(double lambda, double phi) {
    if (!(lambda > 1.0))
        throw NotGoodPair("good_pair_from_params: lambda must exceed 1");
    if (!(phi > 0.0) || phi > kPi / 2.0 + 1e-12)
        throw NotGoodPair("good_pair_from_params: phi must lie in (0, pi/2]");
    const double half_log_lambda = std::log(lambda) / 2.0;
    const double sinh_half_a = std::sinh(half_log_lambda) / std::sin(phi);
    const double a = 2.0 * std::asinh(sinh_half_a);
    const double b = a - std::asinh(2.0 * sinh_half_a * std::cosh(half_log_lambda));
    return good_pair(a, std::max(b, 0.0));
}

Chain::Chain(std::vector<HPoint> pts) : points_(std::move(pts)) {
    if (points_.size() < 2)
        throw Error("Chain: need at least two points");
    const std::size_t n = points_.size() - 1;
    steps_.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double s = dist(points_[j - 1], points_[j]);
        if (!(s > 0.0))
            throw Error("Chain: consecutive points must be distinct (step " + std::to_string(j) +
                        " has length 0)");
        steps_.push_back(s);
    }
    gromovs_.reserve(n >= 1 ? n - 1 : 0);
    for (std::size_t j = 1; j + 1 <= n; ++j) {
        const double g =
            (steps_[j - 1] + steps_[j] - dist(points_[j - 1], points_[j + 1])) / 2.0;
        if (g < -1e-12)
            throw Error("Chain: negative Gromov product beyond tolerance (distance backend bug)");
        gromovs_.push_back(g);
    }
}

double tension(const Chain& c) {
    const std::size_t n = c.segments();
    if (n <= 2)
        return 0.0;
    const auto& pts = c.points();
    const auto& steps = c.steps();
    double tau = 0.0;
    for (std::size_t j = 1; j <= n - 1; ++j)
        tau += dist(pts[j - 1], pts[j + 1]);
    for (std::size_t j = 2; j <= n - 1; ++j)
        tau -= steps[j - 1];
    tau -= dist(pts.front(), pts.back());
    return tau;
}

namespace {

// M_j, the frame factor of step j (1-based).
Mat2 move_factor(const ChainMoves& moves, std::size_t j) {
    const Mat2 t = Mat2::axis_move(moves.steps[j - 1]);
    return j >= 2 ? Mat2::rotation(moves.turns[j - 2]) * t : t;
}

double dist_from_base(const Mat2& q) {
    return dist(HPoint{0.0, 1.0}, mobius_apply(q, HPoint{0.0, 1.0}));
}

} // namespace

std::vector<double> skip_distances(const ChainMoves& moves) {
    const std::size_t n = moves.steps.size();
    std::vector<double> skips;
    skips.reserve(n >= 1 ? n - 1 : 0);
    for (std::size_t j = 1; j + 1 <= n; ++j)
        skips.push_back(dist_from_base(move_factor(moves, j) * move_factor(moves, j + 1)));
    return skips;
}

double endpoint_distance(const ChainMoves& moves) {
    Mat2 q = Mat2::identity();
    for (std::size_t j = 1; j <= moves.steps.size(); ++j)
        q = q * move_factor(moves, j);
    return dist_from_base(q);
}

std::vector<double> gromovs_from_moves(const ChainMoves& moves) {
    const std::vector<double> skips = skip_distances(moves);
    std::vector<double> gs(skips.size());
    for (std::size_t j = 0; j < skips.size(); ++j)
        gs[j] = (moves.steps[j] + moves.steps[j + 1] - skips[j]) / 2.0;
    return gs;
}

double tension(const ChainMoves& moves) {
    const std::size_t n = moves.steps.size();
    if (n <= 2)
        return 0.0;
    double tau = 0.0;
    for (double s : skip_distances(moves))
        tau += s;
    for (std::size_t j = 2; j <= n - 1; ++j)
        tau -= moves.steps[j - 1];
    return tau - endpoint_distance(moves);
}

bool is_good_chain(const Chain& c, const GoodPair& gp) {
    for (double s : c.steps())
        if (s < gp.a - 1e-12)
            return false;
    for (double g : c.gromovs())
        if (g > gp.b + 1e-12)
            return false;
    return true;
}

bool is_convex(const Chain& c) {
    // Closed cycle; a coincident closing point (polygon chains) is dropped.
    std::vector<HPoint> cyc = c.points();
    if (cyc.size() > 2 && dist(cyc.front(), cyc.back()) < 1e-14)
        cyc.pop_back();
    const std::size_t m = cyc.size();
    if (m <= 2)
        return true;
    int sign = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const HPoint& prev = cyc[(j + m - 1) % m];
        const HPoint& next = cyc[(j + 1) % m];
        const int t = turn_sign(prev, cyc[j], next);
        if (t == 0)
            continue;
        if (sign == 0)
            sign = t;
        else if (t != sign)
            return false;
    }
    return true;
}

Chain canonical_chain(const GoodPair& gp, int n) {
    if (n < 1)
        throw Error("canonical_chain: n must be at least 1");
    std::vector<HPoint> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    const double log_lambda = std::log(gp.lambda);
    for (int j = 0; j <= n; ++j) {
        const double t = std::exp(log_lambda * j);
        pts.emplace_back(t * std::cos(gp.phi), t * std::sin(gp.phi));
    }
    return Chain(std::move(pts));
}

Chain distorted_chain(std::span<const double> steps, const GoodPair& gp) {
    if (steps.empty())
        throw Error("distorted_chain: need at least one step");
    std::vector<HPoint> pts;
    pts.reserve(steps.size() + 1);
    const double sin_phi = std::sin(gp.phi);
    double log_t = 0.0;
    pts.emplace_back(std::cos(gp.phi), sin_phi);
    for (std::size_t j = 0; j < steps.size(); ++j) {
        if (steps[j] < gp.a - 1e-12)
            throw StepTooShort("distorted_chain: step " + std::to_string(j + 1) + " = " +
                               fmt(steps[j]) + " is below a = " + fmt(gp.a));
        log_t += 2.0 * std::asinh(sin_phi * std::sinh(steps[j] / 2.0));
        const double t = std::exp(log_t);
        pts.emplace_back(t * std::cos(gp.phi), t * sin_phi);
    }
    return Chain(std::move(pts));
}

Chain chain_from_moves(const ChainMoves& moves) {
    if (moves.steps.empty() || moves.turns.size() + 1 != moves.steps.size())
        throw Error("chain_from_moves: need n steps and n - 1 turns");
    std::vector<HPoint> pts;
    pts.reserve(moves.steps.size() + 1);
    Mat2 frame = Mat2::identity(); // at i, heading up the imaginary axis
    pts.push_back(mobius_apply(frame, HPoint{0.0, 1.0}));
    frame = frame * Mat2::axis_move(moves.steps[0]);
    pts.push_back(mobius_apply(frame, HPoint{0.0, 1.0}));
    for (std::size_t j = 0; j < moves.turns.size(); ++j) {
        frame = frame * Mat2::rotation(moves.turns[j]) * Mat2::axis_move(moves.steps[j + 1]);
        pts.push_back(mobius_apply(frame, HPoint{0.0, 1.0}));
    }
    return Chain(std::move(pts));
}

Chain chain_from_steps_angles(std::span<const double> steps, std::span<const double> angles) {
    if (steps.empty() || angles.size() + 1 != steps.size())
        throw Error("chain_from_steps_angles: need n steps and n - 1 angles");
    ChainMoves moves;
    moves.steps.assign(steps.begin(), steps.end());
    moves.turns.reserve(angles.size());
    // Interior angle gamma is an exterior turn of pi - gamma, all to one side.
    for (double gamma : angles)
        moves.turns.push_back(kPi - gamma);
    return chain_from_moves(moves);
}

std::vector<double> interior_angles(const Chain& c) {
    const auto& pts = c.points();
    const auto& steps = c.steps();
    std::vector<double> angles;
    angles.reserve(c.segments() >= 1 ? c.segments() - 1 : 0);
    for (std::size_t j = 1; j + 1 < pts.size(); ++j)
        angles.push_back(
            angle_from_sides(steps[j - 1], steps[j], dist(pts[j - 1], pts[j + 1])));
    return angles;
}

Chain open_angle(const Chain& c, std::size_t k, double gamma) {
    const std::size_t n = c.segments();
    if (k < 1 || k > n - 1)
        throw Error("open_angle: k must index an interior vertex");
    if (!is_convex(c))
        throw NotConvexInput("open_angle: input chain is not convex");
    std::vector<double> angles = interior_angles(c);
    const double current = angles[k - 1];
    if (gamma < current - 1e-12 || gamma > kPi + 1e-12)
        throw AngleOutOfRange("open_angle: gamma = " + fmt(gamma) + " outside [" + fmt(current) +
                              ", pi]");
    angles[k - 1] = std::clamp(gamma, current, kPi);
    return chain_from_steps_angles(c.steps(), angles);
}

double tension_closed_form(std::span<const double> lambdas, double alpha) {
    const std::size_t n = lambdas.size();
    if (n < 2)
        throw Error("tension_closed_form: need at least two lambdas");
    for (double l : lambdas)
        if (!(l > 1.0))
            throw Error("tension_closed_form: every lambda must exceed 1");
    const double sin_alpha = std::sin(alpha);
    std::vector<double> logt(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j)
        logt[j] = logt[j - 1] + std::log(lambdas[j - 1]);

    double tau = 0.0;
    for (std::size_t j = 0; j + 2 <= n; ++j)
        tau += log_g_alpha(logt[j + 2] - logt[j], sin_alpha);
    for (std::size_t j = 1; j + 2 <= n; ++j)
        tau -= log_g_alpha(logt[j + 1] - logt[j], sin_alpha);
    tau -= log_g_alpha(logt[n] - logt[0], sin_alpha);
    return 2.0 * tau;
}

double tension_degenerate(std::span<const double> lambdas) {
    const std::size_t n = lambdas.size();
    if (n < 2)
        throw Error("tension_degenerate: need at least two lambdas");
    for (double l : lambdas)
        if (!(l > 1.0))
            throw Error("tension_degenerate: every lambda must exceed 1");
    double tau = 0.0;
    double log_prod = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j)
        tau += std::log(lambdas[j] * lambdas[j + 1] - 1.0);
    for (std::size_t j = 1; j + 1 < n; ++j)
        tau -= std::log(lambdas[j] - 1.0);
    for (double l : lambdas)
        log_prod += std::log(l);
    // log(prod lambda - 1) without forming the product when it would overflow
    tau -= log_prod > 700.0 ? log_prod : std::log(std::expm1(log_prod));
    return 2.0 * tau;
}

double ap_bound(int n, const GoodPair& gp) {
    if (n < 2)
        throw Error("ap_bound: n must be at least 2");
    return std::max(0.0, (n - 2) * 2.0 / (gp.lambda - 1.0));
}

Chain regular_polygon_chain(int n, double r) {
    if (n < 4)
        throw Error("regular_polygon_chain: n must be at least 4");
    if (!(r > 0.0))
        throw Error("regular_polygon_chain: radius must be positive");
    std::vector<HPoint> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    const HPoint north{0.0, std::exp(r)};
    for (int k = 0; k < n; ++k)
        pts.push_back(mobius_apply(Mat2::rotation(2.0 * kPi * k / n), north));
    pts.push_back(pts.front()); // closed: x_n = x_0
    return Chain(std::move(pts));
}

ChainMoves sample_good_moves(const GoodPair& gp, int n, std::uint64_t seed, bool convex) {
    if (n < 2)
        throw Error("sample_good_moves: n must be at least 2");
    SeedStream rng = SeedStream(seed).sub("sample_good_chain");
    ChainMoves moves;
    moves.steps.resize(static_cast<std::size_t>(n));
    for (auto& s : moves.steps)
        s = rng.uniform(gp.a, 3.0 * gp.a);
    moves.turns.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 1; j < n; ++j) {
        // A target Gromov product g at the vertex fixes the skip distance
        // d1 + d2 - 2g, hence the vertex angle, by the law of cosines.
        const double g = rng.uniform(0.0, gp.b);
        const double d1 = moves.steps[j - 1];
        const double d2 = moves.steps[j];
        const double angle = angle_from_sides(d1, d2, d1 + d2 - 2.0 * g);
        const double side = convex ? 1.0 : (rng.coin() ? 1.0 : -1.0);
        moves.turns.push_back(side * (kPi - angle));
    }
    return moves;
}

Chain sample_good_chain(const GoodPair& gp, int n, std::uint64_t seed, bool convex) {
    return chain_from_moves(sample_good_moves(gp, n, seed, convex));
}

Chain mobius_apply(const Mat2& m, const Chain& c) {
    std::vector<HPoint> pts;
    pts.reserve(c.size());
    for (const auto& p : c.points())
        pts.push_back(mobius_apply(m, p));
    return Chain(std::move(pts));
}

} // namespace avk
