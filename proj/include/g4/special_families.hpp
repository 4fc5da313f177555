// Searches outside the double-cover framework: hyperelliptic curves with an
// automorphism of order 4, Kummer covers of degree 5 of the line and of
// degree 3 of elliptic curves, and exact counts for explicit towers.
#pragma once

#include <map>
#include <string>

#include "g4/cover_search.hpp"

namespace g4 {

// y^2 = c0 (x^10 + 1) + c1 (x^9 - x) + c2 (x^8 + x^2) + c3 (x^7 - x^3) + c4 (x^6 + x^4)
std::vector<Poly> order4_family_basis(const FieldPtr& F);
std::vector<SearchJob> hyperelliptic_order4_jobs(const FieldPtr& F);
SearchOutcome hyperelliptic_order4_search(const FieldPtr& F, const SearchOptions& opt = {});

// z^5 = f on P^1 with f supported on four points; q = 1 mod 5.  Shapes are
// the polynomials g (f = c g, c running over F^*/F^*5), normalized so that the
// rational support points sit at 0, 1, infinity and the first exponent is 1.
struct Kummer5Shape {
    Poly g;
    std::string label;
};
std::vector<Kummer5Shape> kummer5_shapes(const FieldPtr& F);
SearchOutcome kummer5_search(const FieldPtr& F);

// z^3 = c y + a x + b over every curve of the given trace; q = 1 mod 3.
// With all_twists the leading coefficient c runs over F^*/F^*3, otherwise c = 1.
std::vector<SearchJob> kummer3_jobs(const EllipticCurve& E, bool all_twists, const std::string& label);
SearchOutcome kummer3_search(const FieldPtr& F, long trace, bool all_twists = false, const SearchOptions& opt = {});

// ---------------------------------------------------------------------------
// explicit towers

// Polynomial in x and y with integer coefficients, keyed by (deg_x, deg_y).
using BivariateTerms = std::map<std::pair<int, int>, long long>;

struct Equation {
    char variable = 'y';  // left-hand side variable
    int exponent = 2;
    BivariateTerms rhs;
};

// Parses "z^3 = y + 37 x + 16", "y^2 = x^5 - 6x^3 + 8 x^2 - 5x + 12", ...
Equation parse_equation(const std::string& text);
BivariateTerms parse_bivariate(const std::string& text);

struct Tower {
    BaseCurve base;
    CurveFunction f;
    int m;
};

// Builds base and cover from the printed equations.  An empty base equation
// means the cover equation lives over the line in x.
Tower make_tower(const FieldPtr& F, const std::string& base_eq, const std::string& cover_eq);

struct SuperellipticCount {
    std::size_t points = 0;
    int genus = -1;
    std::size_t shifted_points = 0;  // recount after moving a finite fibre to infinity
    Elem shift = 0;
    bool consistent() const { return points == shifted_points; }
};

// Exact count of the smooth model of z^m = f; throws when the cover is not
// geometrically irreducible.
SuperellipticCount superelliptic_count(const BaseCurve& base, const CurveFunction& f, int m);

}  // namespace g4
