#include "avk/catspaces.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "avk/seedstream.hpp"

namespace avk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Quaternion x + y i + z j + w k; points of the half-space have w = 0, z > 0.
struct Quat {
    double x = 0.0, y = 0.0, z = 0.0, w = 0.0;
};

Quat mul(const Quat& p, const Quat& q) {
    return {p.x * q.x - p.y * q.y - p.z * q.z - p.w * q.w,
            p.x * q.y + p.y * q.x + p.z * q.w - p.w * q.z,
            p.x * q.z - p.y * q.w + p.z * q.x + p.w * q.y,
            p.x * q.w + p.y * q.z - p.z * q.y + p.w * q.x};
}

Quat from_complex(std::complex<double> c) { return {c.real(), c.imag(), 0.0, 0.0}; }

double norm2(const Quat& q) { return q.x * q.x + q.y * q.y + q.z * q.z + q.w * q.w; }

Quat conj(const Quat& q) { return {q.x, -q.y, -q.z, -q.w}; }

// (a w + b)(c w + d)^{-1}: Poincare extension of the Mobius action. Assumes
// det = 1, which pins the image height at w.z / |cw + d|^2; evaluating the
// height that way sidesteps the ad - bc cancellation in long frame products.
H3Point apply_sl2c(std::complex<double> a, std::complex<double> b, std::complex<double> c,
                   std::complex<double> d, const H3Point& p) {
    const Quat w{p.x, p.y, p.z, 0.0};
    const Quat num = [&] {
        Quat q = mul(from_complex(a), w);
        q.x += b.real();
        q.y += b.imag();
        return q;
    }();
    const Quat den = [&] {
        Quat q = mul(from_complex(c), w);
        q.x += d.real();
        q.y += d.imag();
        return q;
    }();
    const Quat res = mul(num, conj(den));
    const double s = norm2(den);
    return {res.x / s, res.y / s, p.z / s};
}

} // namespace

H3Point::H3Point(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw InvalidPoint("H3Point: coordinates must be finite");
    if (z <= 0.0)
        throw InvalidPoint("H3Point: height must be strictly positive");
}

double h3_dist(const H3Point& p, const H3Point& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    const double dz = p.z - q.z;
    const double delta = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (delta == 0.0)
        return 0.0;
    const double conj = std::sqrt(dx * dx + dy * dy + (p.z + q.z) * (p.z + q.z));
    const double root = std::sqrt(p.z) * std::sqrt(q.z);
    if (delta < 1e-4) {
        const double excess = (dx * dx + dy * dy + dz * dz) / (conj + 2.0 * root);
        return 2.0 * std::log1p((delta + excess) / (2.0 * root));
    }
    if (delta < 1e100 && p.z > 1e-100 && p.z < 1e100 && q.z > 1e-100 && q.z < 1e100)
        return std::acosh(1.0 + delta * delta / (2.0 * p.z * q.z));
    return 2.0 * (std::log(delta + conj) - std::log(2.0) -
                  0.5 * (std::log(p.z) + std::log(q.z)));
}

MetricTree::MetricTree(int node_count, std::vector<std::tuple<int, int, double>> edges)
    : edges_(std::move(edges)) {
    if (node_count < 1)
        throw Error("MetricTree: need at least one node");
    if (edges_.size() != static_cast<std::size_t>(node_count) - 1)
        throw Error("MetricTree: a tree on m nodes has exactly m - 1 edges");
    adjacency_.assign(node_count, {});
    for (const auto& [u, v, len] : edges_) {
        if (u < 0 || u >= node_count || v < 0 || v >= node_count)
            throw UnknownNode("MetricTree: edge endpoint out of range");
        if (!(len > 0.0))
            throw Error("MetricTree: edge lengths must be positive");
        adjacency_[u].emplace_back(v, len);
        adjacency_[v].emplace_back(u, len);
    }
    // edge count + connectivity => acyclic
    std::vector<char> seen(node_count, 0);
    std::queue<int> fringe;
    fringe.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!fringe.empty()) {
        const int u = fringe.front();
        fringe.pop();
        for (const auto& [v, len] : adjacency_[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                fringe.push(v);
            }
    }
    if (reached != node_count)
        throw Error("MetricTree: edges do not connect all nodes");
}

double MetricTree::dist(int u, int v) const {
    const int m = node_count();
    if (u < 0 || u >= m || v < 0 || v >= m)
        throw UnknownNode("MetricTree::dist: node id out of range");
    if (u == v)
        return 0.0;
    // DFS along the unique path
    std::vector<double> acc(m, -1.0);
    std::vector<int> stack{u};
    acc[u] = 0.0;
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        if (cur == v)
            return acc[v];
        for (const auto& [next, len] : adjacency_[cur])
            if (acc[next] < 0.0) {
                acc[next] = acc[cur] + len;
                stack.push_back(next);
            }
    }
    throw Error("MetricTree::dist: unreachable node (corrupt tree)");
}

double tree_dist(const MetricTree& t, int u, int v) { return t.dist(u, v); }

MetricChain::MetricChain(std::size_t point_count, std::vector<double> distances)
    : count_(point_count), d_(std::move(distances)) {
    if (count_ < 2)
        throw Error("MetricChain: need at least two points");
    if (d_.size() != count_ * count_)
        throw Error("MetricChain: distance matrix size mismatch");
    steps_.reserve(count_ - 1);
    for (std::size_t j = 1; j < count_; ++j) {
        const double s = dist(j - 1, j);
        if (!(s > 0.0))
            throw Error("MetricChain: consecutive points must be distinct");
        steps_.push_back(s);
    }
    gromovs_.reserve(count_ >= 2 ? count_ - 2 : 0);
    for (std::size_t j = 1; j + 1 < count_; ++j) {
        const double g = (steps_[j - 1] + steps_[j] - dist(j - 1, j + 1)) / 2.0;
        if (g < -1e-12)
            throw Error("MetricChain: negative Gromov product beyond tolerance");
        gromovs_.push_back(g);
    }
}

MetricChain MetricChain::from_h2(const Chain& c) {
    const auto& pts = c.points();
    const std::size_t m = pts.size();
    std::vector<double> d(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            d[i * m + j] = d[j * m + i] = avk::dist(pts[i], pts[j]);
    return MetricChain(m, std::move(d));
}

MetricChain MetricChain::from_h3(std::span<const H3Point> pts) {
    const std::size_t m = pts.size();
    std::vector<double> d(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            d[i * m + j] = d[j * m + i] = h3_dist(pts[i], pts[j]);
    return MetricChain(m, std::move(d));
}

MetricChain MetricChain::from_tree(const MetricTree& t, std::span<const int> nodes) {
    const std::size_t m = nodes.size();
    std::vector<double> d(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            d[i * m + j] = d[j * m + i] = t.dist(nodes[i], nodes[j]);
    return MetricChain(m, std::move(d));
}

double tension(const MetricChain& c) {
    const std::size_t n = c.segments();
    if (n <= 2)
        return 0.0;
    double tau = 0.0;
    for (std::size_t j = 1; j <= n - 1; ++j)
        tau += c.dist(j - 1, j + 1);
    for (std::size_t j = 2; j <= n - 1; ++j)
        tau -= c.steps()[j - 1];
    tau -= c.dist(0, n);
    return tau;
}

bool is_good_chain(const MetricChain& c, const GoodPair& gp) {
    for (double s : c.steps())
        if (s < gp.a - 1e-12)
            return false;
    for (double g : c.gromovs())
        if (g > gp.b + 1e-12)
            return false;
    return true;
}

MetricChain metric_chain_from_moves(const ChainMoves& moves) {
    const std::size_t n = moves.steps.size();
    const std::size_t m = n + 1;
    const HPoint base{0.0, 1.0};
    std::vector<double> d(m * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        Mat2 q = Mat2::identity();
        for (std::size_t j = i + 1; j <= n; ++j) {
            Mat2 factor = Mat2::axis_move(moves.steps[j - 1]);
            if (j >= 2 && j > i + 1)
                factor = Mat2::rotation(moves.turns[j - 2]) * factor;
            q = q * factor;
            d[i * m + j] = d[j * m + i] = dist(base, mobius_apply(q, base));
        }
    }
    return MetricChain(m, std::move(d));
}

namespace {

// Interior angles of the comparison chain, from consecutive-triple data.
std::vector<double> comparison_angles(const MetricChain& c) {
    const std::size_t n = c.segments();
    if (n < 2)
        throw Error("comparison_chain: need at least three points");
    std::vector<double> angles;
    angles.reserve(n - 1);
    for (std::size_t j = 1; j <= n - 1; ++j) {
        try {
            angles.push_back(
                angle_from_sides(c.steps()[j - 1], c.steps()[j], c.dist(j - 1, j + 1)));
        } catch (const InvalidSides&) {
            throw DegenerateTriple("comparison_chain: triple at vertex " + std::to_string(j) +
                                   " violates the triangle inequality (backend bug)");
        }
    }
    return angles;
}

ChainMoves comparison_moves(const MetricChain& c) {
    ChainMoves moves;
    moves.steps = c.steps();
    for (double gamma : comparison_angles(c))
        moves.turns.push_back(kPi - gamma);
    return moves;
}

} // namespace

ComparisonChain comparison_chain(const MetricChain& c) {
    Chain image = chain_from_steps_angles(c.steps(), comparison_angles(c));
    return {c, std::move(image)};
}

CatReport verify_cat_comparison(const MetricChain& c) {
    // The image's distance data comes from its move factors; building points
    // first would cap the usable chain extent.
    const ChainMoves image = comparison_moves(c);
    CatReport r;
    r.tau_source = tension(c);
    r.tau_image = tension(image);
    r.endpoint_source = c.dist(0, c.segments());
    r.endpoint_image = endpoint_distance(image);
    r.ok = std::abs(r.tau_source) <= r.tau_image + 1e-9 * static_cast<double>(c.segments());
    return r;
}

H3Frame::H3Frame() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

void H3Frame::advance(double s) {
    const double e = std::exp(s / 2.0);
    // right-multiply by diag(e, 1/e)
    a_ *= e;
    c_ *= e;
    b_ /= e;
    d_ /= e;
}

void H3Frame::spin(double psi) {
    const std::complex<double> e = std::polar(1.0, psi / 2.0);
    a_ *= e;
    c_ *= e;
    b_ /= e;
    d_ /= e;
}

void H3Frame::pitch(double theta) {
    const double co = std::cos(theta / 2.0);
    const double si = std::sin(theta / 2.0);
    const std::complex<double> a = a_ * co - b_ * si;
    const std::complex<double> b = a_ * si + b_ * co;
    const std::complex<double> c = c_ * co - d_ * si;
    const std::complex<double> d = c_ * si + d_ * co;
    a_ = a;
    b_ = b;
    c_ = c;
    d_ = d;
}

H3Point H3Frame::point() const { return apply_sl2c(a_, b_, c_, d_, H3Point{0.0, 0.0, 1.0}); }

H3Moves sample_good_h3_moves(const GoodPair& gp, int n, std::uint64_t seed) {
    if (n < 2)
        throw Error("sample_good_h3_moves: n must be at least 2");
    SeedStream rng = SeedStream(seed).sub("sample_good_chain_h3");
    H3Moves moves;
    moves.steps.resize(static_cast<std::size_t>(n));
    for (auto& s : moves.steps)
        s = rng.uniform(gp.a, 3.0 * gp.a);
    for (int j = 1; j < n; ++j) {
        const double g = rng.uniform(0.0, gp.b);
        const double angle = angle_from_sides(moves.steps[j - 1], moves.steps[j],
                                              moves.steps[j - 1] + moves.steps[j] - 2.0 * g);
        moves.spins.push_back(rng.uniform(0.0, 2.0 * kPi));
        moves.pitches.push_back(kPi - angle);
    }
    return moves;
}

MetricChain metric_chain_from_h3_moves(const H3Moves& moves) {
    const std::size_t n = moves.steps.size();
    const std::size_t m = n + 1;
    const H3Point base{0.0, 0.0, 1.0};
    std::vector<double> d(m * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        H3Frame q;
        for (std::size_t j = i + 1; j <= n; ++j) {
            if (j >= 2 && j > i + 1) {
                q.spin(moves.spins[j - 2]);
                q.pitch(moves.pitches[j - 2]);
            }
            q.advance(moves.steps[j - 1]);
            d[i * m + j] = d[j * m + i] = h3_dist(base, q.point());
        }
    }
    return MetricChain(m, std::move(d));
}

std::vector<H3Point> sample_good_chain_h3(const GoodPair& gp, int n, std::uint64_t seed) {
    const H3Moves moves = sample_good_h3_moves(gp, n, seed);
    std::vector<H3Point> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    H3Frame frame;
    pts.push_back(frame.point());
    frame.advance(moves.steps[0]);
    pts.push_back(frame.point());
    for (int j = 1; j < n; ++j) {
        frame.spin(moves.spins[j - 1]);
        frame.pitch(moves.pitches[j - 1]);
        frame.advance(moves.steps[j]);
        pts.push_back(frame.point());
    }
    return pts;
}

TreeChainSample sample_good_tree_chain(const GoodPair& gp, int n, std::uint64_t seed) {
    if (n < 2)
        throw Error("sample_good_tree_chain: n must be at least 2");
    SeedStream rng = SeedStream(seed).sub("sample_good_tree_chain");
    const std::size_t m = static_cast<std::size_t>(n) + 1;
    std::vector<double> heights(m, 0.0); // pendant height = Gromov product there
    for (std::size_t j = 1; j + 1 < m; ++j)
        heights[j] = rng.uniform(0.0, gp.b);

    std::vector<std::tuple<int, int, double>> edges;
    std::vector<int> chain_nodes(m, 0);
    int next_id = 1; // spine node j gets created in order; node 0 is spine 0
    std::vector<int> spine(m, 0);
    for (std::size_t j = 1; j < m; ++j) {
        double step = rng.uniform(gp.a, 3.0 * gp.a);
        const double floor = heights[j - 1] + heights[j] + 0.05 * gp.a;
        step = std::max(step, floor);
        spine[j] = next_id++;
        edges.emplace_back(spine[j - 1], spine[j], step - heights[j - 1] - heights[j]);
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (heights[j] > 1e-9) {
            chain_nodes[j] = next_id++;
            edges.emplace_back(spine[j], chain_nodes[j], heights[j]);
        } else {
            chain_nodes[j] = spine[j];
        }
    }
    return {MetricTree(next_id, std::move(edges)), std::move(chain_nodes)};
}

MetricChain sample_good_chain_in(Backend backend, const GoodPair& gp, int n, std::uint64_t seed) {
    switch (backend) {
    case Backend::H2: {
        const bool convex = SeedStream(seed).sub("h2_convex").coin();
        return metric_chain_from_moves(sample_good_moves(gp, n, seed, convex));
    }
    case Backend::H3:
        return metric_chain_from_h3_moves(sample_good_h3_moves(gp, n, seed));
    case Backend::Tree: {
        const auto sample = sample_good_tree_chain(gp, n, seed);
        return MetricChain::from_tree(sample.tree, sample.nodes);
    }
    }
    throw Error("sample_good_chain_in: unknown backend");
}

} // namespace avk
