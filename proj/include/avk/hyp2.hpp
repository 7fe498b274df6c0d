#pragma once

#include <array>
#include <complex>

#include "avk/errors.hpp"

namespace avk {

// Point of the hyperbolic plane in the upper-half-plane model.
// Invariant: im > 0, both coordinates finite.
struct HPoint {
    double re = 0.0;
    double im = 1.0;

    HPoint() = default;
    HPoint(double re_, double im_);

    std::complex<double> z() const { return {re, im}; }
};

// Real 2x2 matrix of determinant 1, acting on the upper half plane by
// fractional linear maps. Construction renormalizes by 1/sqrt(det) when
// |det - 1| <= 1e-6 and det > 0, rejects otherwise.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    Mat2() = default;
    Mat2(double a_, double b_, double c_, double d_);

    // Composition of far-apart frames makes ad - bc cancel catastrophically,
    // so internal products skip the determinant gate; the fractional linear
    // action is projective and insensitive to the resulting scalar drift.
    static Mat2 raw(double a_, double b_, double c_, double d_);

    double det() const { return a * d - b * c; }
    Mat2 inverse() const;

    static Mat2 identity() { return {}; }
    // Hyperbolic translation along the imaginary axis: i -> e^s i.
    static Mat2 axis_move(double s);
    // Elliptic rotation fixing i: chart directions at i rotate by -psi.
    static Mat2 rotation(double psi);
    // Parabolic-free map taking i to p with positive real derivative at i,
    // so chart angles at i are preserved.
    static Mat2 translate_to(const HPoint& p);
};

Mat2 operator*(const Mat2& lhs, const Mat2& rhs);

// Hyperbolic distance, arccosh(1 + |p-q|^2 / (2 Im p Im q)), evaluated
// through the equivalent form 2 log((|p-q| + |p - conj q|)/(2 sqrt(Im p Im q)))
// when |p-q| < 1e-4 (cancellation) or when coordinates are too large for the
// quotient to be formed directly.
double dist(const HPoint& p, const HPoint& q);

// Gromov product (x|y)_z = (d(x,z) + d(z,y) - d(x,y)) / 2.
double gromov(const HPoint& x, const HPoint& y, const HPoint& z);

// Angle opposite side c in the triangle with sides a, b, c, from the
// hyperbolic law of cosines. Throws DegenerateTriangle when a or b is zero,
// InvalidSides when the triangle inequality fails beyond 1e-12 slack.
double angle_from_sides(double a, double b, double c);

// L(a, b, gamma): length of the side opposite the angle gamma enclosed by
// sides a and b. Evaluated as arccosh(cosh(a-b) + 2 sinh a sinh b sin^2(g/2)),
// whose argument never dips below 1.
double lc_length(double a, double b, double gamma);

// Summit of the Saccheri quadrilateral with the given leg and base:
// 2 arcsinh(cosh(leg) sinh(base/2)).
double saccheri_chord(double leg, double base);

// Fractional linear action (az + b)/(cz + d).
HPoint mobius_apply(const Mat2& m, const HPoint& p);

// Mirror image of p across the complete geodesic through g1, g2
// (vertical-line mirror or circle inversion). Throws DegenerateGeodesic
// when g1 == g2.
HPoint reflect_across(const HPoint& p, const HPoint& g1, const HPoint& g2);

// Angle at v between the geodesics toward x and y.
double vertex_angle(const HPoint& x, const HPoint& v, const HPoint& y);

// Chart angle at `from` of the initial tangent of the geodesic toward `to`.
// Conformality of the model makes chart angles equal hyperbolic angles.
double direction_angle(const HPoint& from, const HPoint& to);

// Point at hyperbolic distance s from p along the geodesic leaving p with
// chart direction theta.
HPoint geodesic_point(const HPoint& p, double theta, double s);

// Klein-disk coordinates of p (geodesics become straight chords).
std::array<double, 2> klein_from_h2(const HPoint& p);

// Orientation of the polyline corner prev -> v -> next: sign of the Euclidean
// cross product of the corner's edge vectors after mapping the triple to the
// Klein disk in a frame centered at v. Returns +1, -1, or 0 when the triple
// is collinear within tol (or an edge has zero length).
int turn_sign(const HPoint& prev, const HPoint& v, const HPoint& next, double tol = 1e-12);

} // namespace avk
