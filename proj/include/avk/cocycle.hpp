#pragma once

#include <cstdint>
#include <vector>

#include "avk/catspaces.hpp"
#include "avk/chains.hpp"
#include "avk/hyp2.hpp"
#include "avk/seedstream.hpp"

namespace avk {

// Chain of matrices A_1, ..., A_n with the derived orbit
//   x_0 = i,  x_j = A~_n ... A~_{n-j+1} i,
// so that d(x_j, x_{j-1}) = 2 log ||A_{n-j+1}|| and the interior Gromov
// products see the pair norms ||A_{i} A_{i-1}||.
class MatChain {
public:
    explicit MatChain(std::vector<Mat2> mats);

    const std::vector<Mat2>& mats() const { return mats_; }
    const std::vector<HPoint>& orbit() const { return orbit_; }
    std::size_t size() const { return mats_.size(); } // n
    Chain orbit_chain() const { return Chain(orbit_); }

    // Pairwise orbit distances evaluated as d(i, Q~ i) over the partial
    // products Q = A_{n-i} ... A_{n-j+1}, which stays accurate for chains too
    // long for the cumulative orbit coordinates to separate cleanly.
    MetricChain orbit_metric() const;

private:
    std::vector<Mat2> mats_;
    std::vector<HPoint> orbit_;
};

// Largest singular value, from the closed form
//   2 sigma_max = hypot(a + d, b - c) + hypot(a - d, b + c).
// At least 1 for determinant-1 matrices.
double op_norm(const Mat2& m);

// Same quantity through the action on the plane: exp(d(A~i, i) / 2).
// Kept as an independent route for cross-checking op_norm.
double op_norm_geometric(const Mat2& m);

// log ||A_n...A_1|| + sum_{i=2}^{n-1} log ||A_i|| - sum_{i=2}^{n} log ||A_i A_{i-1}||,
// no absolute value. Equals -tension(orbit)/2.
double ap_residual(const MatChain& mc);

// ||A_j|| >= kappa^{-2} for all j and ||A_j A_{j-1}|| / (||A_j|| ||A_{j-1}||) >= eps
// for all j >= 2.
bool dk_hypotheses(const MatChain& mc, double kappa, double eps);

struct Dictionary {
    double kappa;
    double eps;
    double c0;
    double c1;
};

// Geometric-to-matrix parameter translation: (e^{-a}, e^{-b}, (c-1)/(4c), 4c),
// valid when a - 2b > log 4 + log(c / (c - 1)); then kappa <= c0 eps^2.
// Throws PreconditionFailed otherwise.
Dictionary dictionary(double a, double b, double c);

// Lower bound d(f^2 i, i) - d(f i, i) - 2 log 2 for the stable length
// inf_n d(f^n i, i) / n.
double stable_length_lb(const Mat2& f);

// Empirical stable length d(f^N i, i) / N with the orbit iterated pointwise
// (never through ||f^N||).
double stable_length_empirical(const Mat2& f, int iterations);

// Random element rot(theta1) diag(e^{s/2}, e^{-s/2}) rot(theta2) with s
// uniform in [smin, smax] and uniform angles.
Mat2 random_mat2(SeedStream& rng, double smin, double smax);

// Matrices A_1..A_n whose orbit realizes the given chain moves up to an
// isometry, built from the local turn/step factors so the entries never see
// the chain's global coordinates. The per-step rotation freedom comes from rng.
MatChain mat_chain_from_moves(const ChainMoves& moves, SeedStream& rng);

} // namespace avk
