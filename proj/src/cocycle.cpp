#include "avk/cocycle.hpp"

#include <cmath>
#include <sstream>

namespace avk {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

MatChain::MatChain(std::vector<Mat2> mats) : mats_(std::move(mats)) {
    if (mats_.empty())
        throw Error("MatChain: need at least one matrix");
    const std::size_t n = mats_.size();
    orbit_.reserve(n + 1);
    orbit_.emplace_back(0.0, 1.0);
    Mat2 prod = Mat2::identity();
    for (std::size_t j = 1; j <= n; ++j) {
        prod = prod * mats_[n - j];
        orbit_.push_back(mobius_apply(prod, HPoint{0.0, 1.0}));
    }
}

double op_norm(const Mat2& m) {
    const double u = std::hypot(m.a + m.d, m.b - m.c);
    const double v = std::hypot(m.a - m.d, m.b + m.c);
    return (u + v) / 2.0;
}

double op_norm_geometric(const Mat2& m) {
    return std::exp(dist(mobius_apply(m, HPoint{0.0, 1.0}), HPoint{0.0, 1.0}) / 2.0);
}

double ap_residual(const MatChain& mc) {
    const std::size_t n = mc.size();
    if (n < 2)
        throw Error("ap_residual: need at least two matrices");
    const auto& mats = mc.mats();
    Mat2 prod = Mat2::identity();
    for (std::size_t j = n; j >= 1; --j)
        prod = prod * mats[j - 1];
    double r = std::log(op_norm(prod));
    for (std::size_t i = 2; i <= n - 1; ++i)
        r += std::log(op_norm(mats[i - 1]));
    for (std::size_t i = 2; i <= n; ++i)
        r -= std::log(op_norm(mats[i - 1] * mats[i - 2]));
    return r;
}

bool dk_hypotheses(const MatChain& mc, double kappa, double eps) {
    if (!(kappa > 0.0) || !(eps > 0.0) || !(eps < 1.0))
        throw Error("dk_hypotheses: need kappa > 0 and 0 < eps < 1");
    const auto& mats = mc.mats();
    const double norm_floor = 1.0 / (kappa * kappa);
    for (const auto& m : mats)
        if (op_norm(m) < norm_floor)
            return false;
    for (std::size_t i = 1; i < mats.size(); ++i) {
        const double ratio =
            op_norm(mats[i] * mats[i - 1]) / (op_norm(mats[i]) * op_norm(mats[i - 1]));
        if (ratio < eps)
            return false;
    }
    return true;
}

Dictionary dictionary(double a, double b, double c) {
    if (!(c > 1.0))
        throw PreconditionFailed("dictionary: c must exceed 1");
    const double needed = std::log(4.0) + std::log(c / (c - 1.0));
    if (!(a - 2.0 * b > needed))
        throw PreconditionFailed("dictionary: requires a - 2b > log 4 + log(c/(c-1)): " +
                                 fmt(a - 2.0 * b) + " <= " + fmt(needed));
    return {std::exp(-a), std::exp(-b), (c - 1.0) / (4.0 * c), 4.0 * c};
}

double stable_length_lb(const Mat2& f) {
    const HPoint i{0.0, 1.0};
    const HPoint fi = mobius_apply(f, i);
    const HPoint ffi = mobius_apply(f, fi);
    return dist(ffi, i) - dist(fi, i) - 2.0 * std::log(2.0);
}

double stable_length_empirical(const Mat2& f, int iterations) {
    if (iterations < 1)
        throw Error("stable_length_empirical: need at least one iteration");
    HPoint z{0.0, 1.0};
    for (int k = 0; k < iterations; ++k)
        z = mobius_apply(f, z);
    return dist(z, HPoint{0.0, 1.0}) / iterations;
}

Mat2 random_mat2(SeedStream& rng, double smin, double smax) {
    const double t1 = rng.uniform(0.0, kTwoPi);
    const double s = rng.uniform(smin, smax);
    const double t2 = rng.uniform(0.0, kTwoPi);
    return Mat2::rotation(t1) * Mat2::axis_move(s) * Mat2::rotation(t2);
}

MetricChain MatChain::orbit_metric() const {
    const std::size_t n = mats_.size();
    const std::size_t m = n + 1;
    const HPoint base{0.0, 1.0};
    std::vector<double> d(m * m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        Mat2 q = Mat2::identity();
        for (std::size_t j = i + 1; j <= n; ++j) {
            q = q * mats_[n - j]; // extend to Q = A_{n-i} ... A_{n-j+1}
            d[i * m + j] = d[j * m + i] = dist(base, mobius_apply(q, base));
        }
    }
    return MetricChain(m, std::move(d));
}

MatChain mat_chain_from_moves(const ChainMoves& moves, SeedStream& rng) {
    const std::size_t n = moves.steps.size();
    if (n < 1 || moves.turns.size() + 1 != n)
        throw Error("mat_chain_from_moves: need n steps and n - 1 turns");
    // The walk factors as F_j = M_1 ... M_j with M_1 = T(s_1) and
    // M_j = R(turn_{j-1}) T(s_j); with B_j = F_j R(rho_j) fixing x_j = B~_j i,
    // the matrices are A_{n-j+1} = B_{j-1}^{-1} B_j = R(-rho_{j-1}) M_j R(rho_j).
    std::vector<double> rho(n + 1);
    for (auto& r : rho)
        r = rng.uniform(0.0, kTwoPi);
    std::vector<Mat2> mats(n);
    for (std::size_t j = 1; j <= n; ++j) {
        Mat2 m = Mat2::axis_move(moves.steps[j - 1]);
        if (j >= 2)
            m = Mat2::rotation(moves.turns[j - 2]) * m;
        mats[n - j] = Mat2::rotation(-rho[j - 1]) * m * Mat2::rotation(rho[j]);
    }
    return MatChain(std::move(mats));
}

} // namespace avk
