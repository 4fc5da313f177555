// Functions on P^1 and on hyperelliptic models y^2 = h(x): local expansions at
// places, geometric divisors, and point counts of cyclic covers z^m = f.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "g4/poly.hpp"

namespace g4 {

// Truncated Laurent series sum_{i} c[i] t^{val+i}; known up to t^{val+size}.
struct Series {
    int val = 0;
    std::vector<Elem> c;
    int abs_prec() const { return val + static_cast<int>(c.size()); }
    bool is_zero() const;
    // Strips leading zeros; returns false if nothing nonzero is left.
    bool normalize();
    Elem coeff_at(int exponent) const;
};

Series series_add(const Field& F, const Series& a, const Series& b);
Series series_mul(const Field& F, const Series& a, const Series& b);
Series series_scale(const Field& F, const Series& a, Elem s);
Series series_inverse(const Field& F, Series a);
Series series_poly(const Field& F, const Poly& p, const Series& x);

struct Place {
    enum class Kind { Affine, Infinity };
    Kind kind = Kind::Affine;
    Elem x = 0;  // affine x-coordinate
    Elem y = 0;  // affine y, or w = lim y/x^{g+1} at infinity
    bool operator==(const Place& o) const { return kind == o.kind && x == o.x && y == o.y; }
    bool operator<(const Place& o) const;
};

// f = (A + y B) / D.  On P^1, B must be zero.
struct CurveFunction {
    Poly A, B, D;
    CurveFunction() = default;
    CurveFunction(Poly a, Poly b, Poly d) : A(std::move(a)), B(std::move(b)), D(std::move(d)) {}
    static CurveFunction polynomial(Poly a);
    static CurveFunction with_y(Poly a, Poly b);
    bool is_zero() const { return A.is_zero() && B.is_zero(); }
    std::string to_string() const;
};

struct LocalData {
    int valuation = 0;
    Elem unit = 0;  // leading coefficient in the place's fixed uniformizer
};

struct ProfileEntry {
    int valuation;
    int count;  // number of geometric points with this valuation
};

class BaseCurve {
public:
    static BaseCurve projective_line(FieldPtr field);
    // y^2 = h with h separable of degree >= 3; characteristic must be odd.
    static BaseCurve hyperelliptic(Poly h);

    bool is_line() const { return !h_.has_value(); }
    const Poly& h() const { return *h_; }
    const FieldPtr& field() const { return field_; }
    const Field& F() const { return *field_; }
    int genus() const { return genus_; }
    bool odd_degree() const { return h_ && h_->degree() % 2 == 1; }

    // Rational places: affine ones ordered by (x, y), then those at infinity.
    std::vector<Place> rational_places() const;
    std::vector<Place> infinite_places() const;  // rational ones only
    bool on_curve(const Place& P) const;
    std::size_t count_points() const;

    // Local coordinates (x(t), y(t)) at P with the given relative precision.
    std::pair<Series, Series> parametrization(const Place& P, int prec) const;
    // Same curve over a larger field.
    BaseCurve base_change(const Embedding& e) const;

    Series expand(const CurveFunction& f, const Place& P, int min_abs_prec = 0) const;
    LocalData local_data(const CurveFunction& f, const Place& P) const;
    std::vector<ProfileEntry> divisor_profile(const CurveFunction& f) const;

private:
    FieldPtr field_;
    std::optional<Poly> h_;
    int genus_ = 0;
};

struct CoverReport {
    std::size_t points = 0;
    int genus = 0;
    bool irreducible = false;
};

// Genus of z^m = f by Riemann-Hurwitz; nullopt when the valuation data does
// not certify geometric irreducibility (gcd of m and all valuations > 1).
std::optional<int> cover_genus(const BaseCurve& C, const CurveFunction& f, int m);
// Exact count of rational points on the smooth model of z^m = f.
std::size_t count_cover_points_exact(const BaseCurve& C, const CurveFunction& f, int m);
// #{c in F_q : c^d = w} for w != 0.
std::uint32_t local_root_count(const Field& F, int m, const LocalData& ld);

// Change of coordinates x = a + 1/x' (and y' = y x'^{g+1}) moving the places
// above x = a to infinity.  Returns the new model and the same function
// written in the new coordinates.
std::pair<BaseCurve, CurveFunction> shift_to_infinity(const BaseCurve& C, const CurveFunction& f, Elem a);

}  // namespace g4
