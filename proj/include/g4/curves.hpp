// Elliptic curves y^2 = x^3 + a2 x^2 + a4 x + a6 and genus-2 models, with the
// isomorphism-class enumeration and the E(k)/3E(k) reduction used by the
// double-cover searches.
#pragma once

#include <optional>
#include <vector>

#include "g4/function_field.hpp"

namespace g4 {

struct ECPoint {
    bool infinity = true;
    Elem x = 0, y = 0;
    static ECPoint at_infinity() { return ECPoint{}; }
    static ECPoint affine(Elem x, Elem y) { return ECPoint{false, x, y}; }
    bool operator==(const ECPoint& o) const {
        return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
    }
    bool operator<(const ECPoint& o) const {
        if (infinity != o.infinity) return infinity;
        return x != o.x ? x < o.x : y < o.y;
    }
};

class EllipticCurve {
public:
    // y^2 = x^3 + a x + b
    static EllipticCurve short_weierstrass(FieldPtr field, Elem a, Elem b);
    // y^2 = x^3 + r x^2 + s x + t^2, marked point (0, t)
    static EllipticCurve shifted(FieldPtr field, Elem r, Elem s, Elem t);
    // Translate x so that Q moves to x = 0; Q must not be 2-torsion.
    EllipticCurve shifted_to(const ECPoint& Q) const;

    const FieldPtr& field() const { return field_; }
    const Field& F() const { return *field_; }
    Elem a2() const { return a2_; }
    Elem a4() const { return a4_; }
    Elem a6() const { return a6_; }
    // For shifted models: the marked point's y-coordinate t.
    std::optional<Elem> marked_t() const { return t_; }
    bool is_short() const { return a2_ == 0; }

    Poly cubic() const;
    BaseCurve as_base() const { return BaseCurve::hyperelliptic(cubic()); }

    bool contains(const ECPoint& P) const;
    std::vector<ECPoint> points() const;  // infinity first, then by (x, y)
    std::size_t count_points() const;
    long trace() const;

    ECPoint neg(const ECPoint& P) const;
    ECPoint add(const ECPoint& P, const ECPoint& Q) const;
    ECPoint mul(long n, const ECPoint& P) const;

    // Units u giving automorphisms (x, y) -> (u^2 x, u^3 y) of a short model.
    std::vector<Elem> automorphism_units() const;
    ECPoint apply_automorphism(Elem u, const ECPoint& P) const;

private:
    FieldPtr field_;
    Elem a2_ = 0, a4_ = 0, a6_ = 0;
    std::optional<Elem> t_;
};

struct CurveClass {
    Elem a, b;            // lexicographically least (a, b) in the orbit
    std::size_t orbit_size;
    long trace;
};

struct CurveClassSet {
    long trace;
    std::vector<EllipticCurve> representatives;
    std::vector<std::size_t> orbit_sizes;
};

// Orbits of nonsingular (a, b) under (a, b) ~ (sigma(a) u^4, sigma(b) u^6).
std::vector<CurveClass> all_curve_classes(const FieldPtr& field);
CurveClassSet enumerate_classes(const FieldPtr& field, long trace);

// One point per Aut(E)-orbit on E(k)/3E(k); infinity for the identity class,
// otherwise a point of order != 2.  E must be a short model.
std::vector<ECPoint> q_representatives(const EllipticCurve& E);

// y^2 = f with f separable of degree 5 or 6.
std::size_t count_points_genus2(const Poly& f);

}  // namespace g4
