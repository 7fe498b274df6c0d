#include "avk/hyp2.hpp"

#include <algorithm>
#include <cmath>

namespace avk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool finite(double x) { return std::isfinite(x); }

// Clamp an inverse-trig argument that may have drifted past its closed
// domain by rounding. Violations beyond `slack` indicate a caller bug.
double clamp_unit(double x, double slack, const char* who) {
    if (x > 1.0 + slack || x < -1.0 - slack)
        throw InvalidSides(std::string(who) + ": argument outside [-1, 1] beyond tolerance");
    return std::clamp(x, -1.0, 1.0);
}

} // namespace

HPoint::HPoint(double re_, double im_) : re(re_), im(im_) {
    if (!finite(re) || !finite(im))
        throw InvalidPoint("HPoint: coordinates must be finite");
    if (im <= 0.0)
        throw InvalidPoint("HPoint: Im must be strictly positive");
}

Mat2::Mat2(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
    if (!finite(a) || !finite(b) || !finite(c) || !finite(d))
        throw InvalidMatrix("Mat2: entries must be finite");
    const double dt = det();
    if (!(dt > 0.0) || std::abs(dt - 1.0) > 1e-6)
        throw InvalidMatrix("Mat2: determinant must equal 1 within 1e-6");
    const double s = 1.0 / std::sqrt(dt);
    a *= s;
    b *= s;
    c *= s;
    d *= s;
}

Mat2 Mat2::raw(double a_, double b_, double c_, double d_) {
    Mat2 m;
    m.a = a_;
    m.b = b_;
    m.c = c_;
    m.d = d_;
    return m;
}

Mat2 Mat2::inverse() const { return raw(d, -b, -c, a); }

Mat2 Mat2::axis_move(double s) {
    const double e = std::exp(s / 2.0);
    return {e, 0.0, 0.0, 1.0 / e};
}

Mat2 Mat2::rotation(double psi) {
    return {std::cos(psi / 2.0), -std::sin(psi / 2.0), std::sin(psi / 2.0), std::cos(psi / 2.0)};
}

Mat2 Mat2::translate_to(const HPoint& p) {
    const double r = std::sqrt(p.im);
    return {r, p.re / r, 0.0, 1.0 / r};
}

Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
    return Mat2::raw(lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
                     lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d);
}

double dist(const HPoint& p, const HPoint& q) {
    const double dx = p.re - q.re;
    const double dy = p.im - q.im;
    const double delta = std::hypot(dx, dy);      // |p - q|
    if (delta == 0.0)
        return 0.0;
    const double conj = std::hypot(dx, p.im + q.im); // |p - conj(q)|
    const double root = std::sqrt(p.im) * std::sqrt(q.im);

    if (delta < 1e-4) {
        // |p - conj q| - 2 sqrt(Im p Im q) = (dx^2 + dy^2) / (|p - conj q| + 2 sqrt(...)),
        // which avoids the cancellation in arccosh near 1.
        const double excess = (dx * dx + dy * dy) / (conj + 2.0 * root);
        return 2.0 * std::log1p((delta + excess) / (2.0 * root));
    }
    if (delta < 1e100 && p.im > 1e-100 && p.im < 1e100 && q.im > 1e-100 && q.im < 1e100)
        return std::acosh(1.0 + delta * delta / (2.0 * p.im * q.im));
    // Coordinates too extreme for the quotient; same value through logs.
    return 2.0 * (std::log(delta + conj) - std::log(2.0) -
                  0.5 * (std::log(p.im) + std::log(q.im)));
}

double gromov(const HPoint& x, const HPoint& y, const HPoint& z) {
    return (dist(x, z) + dist(z, y) - dist(x, y)) / 2.0;
}

double angle_from_sides(double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0))
        throw DegenerateTriangle("angle_from_sides: sides adjacent to the angle must be positive");
    if (!(c >= 0.0) || c > a + b + 1e-12 || c < std::abs(a - b) - 1e-12)
        throw InvalidSides("angle_from_sides: sides violate the triangle inequality");
    const double cosg = (std::cosh(a) * std::cosh(b) - std::cosh(c)) / (std::sinh(a) * std::sinh(b));
    return std::acos(clamp_unit(cosg, 1e-12, "angle_from_sides"));
}

double lc_length(double a, double b, double gamma) {
    const double s = std::sin(gamma / 2.0);
    const double arg = std::cosh(a - b) + 2.0 * std::sinh(a) * std::sinh(b) * s * s;
    return std::acosh(std::max(arg, 1.0));
}

double saccheri_chord(double leg, double base) {
    return 2.0 * std::asinh(std::cosh(leg) * std::sinh(base / 2.0));
}

HPoint mobius_apply(const Mat2& m, const HPoint& p) {
    // Im of the image is Im(z) det / |cz + d|^2 with det = 1; evaluating it
    // that way instead of through complex division keeps it exact and
    // positive even when frame entries are huge and ad - bc cancels badly.
    const double den_re = m.c * p.re + m.d;
    const double den_im = m.c * p.im;
    const double den2 = den_re * den_re + den_im * den_im;
    const double num_re = m.a * p.re + m.b;
    const double num_im = m.a * p.im;
    return {(num_re * den_re + num_im * den_im) / den2, p.im / den2};
}

HPoint reflect_across(const HPoint& p, const HPoint& g1, const HPoint& g2) {
    const double scale = std::max({1.0, std::abs(g1.re), std::abs(g2.re)});
    if (std::abs(g1.re - g2.re) < 1e-12 * scale) {
        if (std::abs(g1.im - g2.im) < 1e-12 * std::max(g1.im, g2.im))
            throw DegenerateGeodesic("reflect_across: the two geodesic points coincide");
        return {2.0 * g1.re - p.re, p.im}; // vertical line x = Re g1
    }
    // Semicircle with center on the real axis; reflection is inversion.
    const double center = (std::norm(g1.z()) - std::norm(g2.z())) / (2.0 * (g1.re - g2.re));
    const double r2 = (g1.re - center) * (g1.re - center) + g1.im * g1.im;
    const std::complex<double> w = center + r2 / std::conj(p.z() - center);
    return {w.real(), w.imag()};
}

double vertex_angle(const HPoint& x, const HPoint& v, const HPoint& y) {
    return angle_from_sides(dist(v, x), dist(v, y), dist(x, y));
}

double direction_angle(const HPoint& from, const HPoint& to) {
    const double scale = std::max({1.0, std::abs(from.re), std::abs(to.re)});
    if (std::abs(from.re - to.re) < 1e-12 * scale)
        return to.im > from.im ? kPi / 2.0 : -kPi / 2.0;
    const double center = (std::norm(to.z()) - std::norm(from.z())) / (2.0 * (to.re - from.re));
    const double af = std::atan2(from.im, from.re - center);
    const double at = std::atan2(to.im, to.re - center);
    return at > af ? af + kPi / 2.0 : af - kPi / 2.0;
}

HPoint geodesic_point(const HPoint& p, double theta, double s) {
    const Mat2 frame = Mat2::translate_to(p) * Mat2::rotation(kPi / 2.0 - theta);
    return mobius_apply(frame, HPoint{0.0, std::exp(s)});
}

std::array<double, 2> klein_from_h2(const HPoint& p) {
    const std::complex<double> w = (p.z() - std::complex<double>(0.0, 1.0)) /
                                   (p.z() + std::complex<double>(0.0, 1.0));
    const double f = 2.0 / (1.0 + std::norm(w));
    return {f * w.real(), f * w.imag()};
}

int turn_sign(const HPoint& prev, const HPoint& v, const HPoint& next, double tol) {
    // Frame centered at v keeps the cross product scale-meaningful no matter
    // where the chain sits in the plane.
    const auto local = [&](const HPoint& p) {
        return HPoint{(p.re - v.re) / v.im, p.im / v.im};
    };
    const HPoint lp = local(prev);
    const HPoint ln = local(next);
    if ((std::abs(lp.re) < 1e-15 && std::abs(lp.im - 1.0) < 1e-15) ||
        (std::abs(ln.re) < 1e-15 && std::abs(ln.im - 1.0) < 1e-15))
        return 0; // zero-length edge
    const auto kp = klein_from_h2(lp);
    const auto kn = klein_from_h2(ln);
    // v maps to the disk center; edge vectors are -kp and kn.
    const double cross = -kp[0] * kn[1] + kp[1] * kn[0];
    if (std::abs(cross) < tol)
        return 0;
    return cross > 0.0 ? 1 : -1;
}

} // namespace avk
