#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "avk/hyp2.hpp"

namespace avk::oracle {

// Compensated (Kahan) summation.
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Tension straight from the definition with compensated summation; ground
// truth for the module-level closed forms. dist_fn(i, j) is the backend
// distance between points i and j of the chain, 0 <= i, j <= n.
template <class DistFn>
double tension(std::size_t point_count, DistFn&& dist_fn) {
    if (point_count < 2)
        return 0.0;
    const std::size_t n = point_count - 1;
    KahanSum s;
    for (std::size_t j = 1; j + 1 <= n; ++j)
        s.add(dist_fn(j - 1, j + 1));
    for (std::size_t j = 2; j + 1 <= n; ++j)
        s.add(-dist_fn(j - 1, j));
    s.add(-dist_fn(0, n));
    return s.value();
}

// Independent convexity check: Euclidean convex hull (monotone chain, keeping
// collinear boundary points) of the global Klein-disk images, recentered at a
// middle vertex; the chain is convex iff the polygon's vertex cycle equals the
// hull's boundary cycle up to rotation and orientation. Chains whose points
// are all collinear count as convex, matching the turn-sign test.
bool convex_hull_klein(std::span<const HPoint> points);

} // namespace avk::oracle
