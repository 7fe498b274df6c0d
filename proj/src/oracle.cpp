#include "avk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace avk::oracle {

namespace {

struct P2 {
    double x, y;
};

double cross(const P2& o, const P2& a, const P2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Monotone chain keeping collinear boundary points, so a convex polygon with
// degenerate (straight) corners reports every input vertex on the hull.
std::vector<std::size_t> hull_indices(const std::vector<P2>& pts) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return pts[i].x < pts[j].x || (pts[i].x == pts[j].x && pts[i].y < pts[j].y);
    });
    const auto build = [&](bool lower) {
        std::vector<std::size_t> h;
        for (std::size_t idx : order) {
            while (h.size() >= 2) {
                const double c = cross(pts[h[h.size() - 2]], pts[h.back()], pts[idx]);
                if (lower ? c < 0.0 : c > 0.0)
                    h.pop_back();
                else
                    break;
            }
            h.push_back(idx);
        }
        return h;
    };
    std::vector<std::size_t> lower = build(true);
    std::vector<std::size_t> upper = build(false);
    std::reverse(upper.begin(), upper.end());
    // drop shared endpoints
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

bool cyclic_equal(const std::vector<std::size_t>& a, std::vector<std::size_t> b) {
    if (a.size() != b.size())
        return false;
    const std::size_t m = a.size();
    for (int orientation = 0; orientation < 2; ++orientation) {
        for (std::size_t shift = 0; shift < m; ++shift) {
            bool match = true;
            for (std::size_t i = 0; i < m && match; ++i)
                match = a[i] == b[(i + shift) % m];
            if (match)
                return true;
        }
        std::reverse(b.begin(), b.end());
    }
    return false;
}

} // namespace

bool convex_hull_klein(std::span<const HPoint> points) {
    std::vector<HPoint> cyc(points.begin(), points.end());
    if (cyc.size() > 2 && dist(cyc.front(), cyc.back()) < 1e-14)
        cyc.pop_back();
    if (cyc.size() <= 2)
        return true;
    // Recenter at a middle vertex to keep Klein coordinates away from the rim.
    const Mat2 recenter = Mat2::translate_to(cyc[cyc.size() / 2]).inverse();
    std::vector<P2> k;
    k.reserve(cyc.size());
    for (const auto& p : cyc) {
        const auto kk = klein_from_h2(mobius_apply(recenter, p));
        k.push_back({kk[0], kk[1]});
    }
    // All collinear: degenerate polygon, counted convex.
    bool collinear = true;
    for (std::size_t i = 2; i < k.size() && collinear; ++i)
        collinear = std::abs(cross(k[0], k[1], k[i])) < 1e-12;
    if (collinear)
        return true;

    std::vector<std::size_t> cycle(k.size());
    std::iota(cycle.begin(), cycle.end(), 0);
    return cyclic_equal(cycle, hull_indices(k));
}

} // namespace avk::oracle
