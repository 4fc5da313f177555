// Dense univariate polynomials over a finite field.
#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "g4/finite_field.hpp"

namespace g4 {

class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr field) : field_(std::move(field)) {}
    Poly(FieldPtr field, std::vector<Elem> coeffs);

    static Poly constant(FieldPtr field, Elem c);
    static Poly monomial(FieldPtr field, Elem c, int degree);
    static Poly x(FieldPtr field) { return monomial(std::move(field), 1, 1); }
    // Integer coefficients, lowest degree first, reduced into the prime field.
    static Poly from_ints(FieldPtr field, std::initializer_list<long long> coeffs);
    static Poly from_ints(FieldPtr field, const std::vector<long long>& coeffs);

    const FieldPtr& field() const { return field_; }
    const Field& F() const { return *field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    Elem lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<Elem>& coeffs() const { return c_; }

    Elem eval(Elem x) const;
    Poly monic() const;
    Poly derivative() const;
    Poly scaled(Elem s) const;
    Poly shifted(int k) const;  // multiply by x^k
    Poly pow(unsigned e) const;
    // f(g(x))
    Poly compose(const Poly& g) const;
    // x^n f(a + 1/x): moves x = a to infinity for a model of degree <= n.
    Poly invert_at(Elem a, int n) const;
    // Apply a map to every coefficient (used for base change).
    Poly mapped(FieldPtr target, const std::vector<Elem>& image) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::string to_string(char var = 'x') const;

private:
    void trim();
    FieldPtr field_;
    std::vector<Elem> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact quotient expected
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic, gcd(0, 0) = 0
bool is_squarefree(const Poly& f);
// f = prod g_i^{e_i} with g_i squarefree, pairwise coprime, non-constant.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);
Poly radical(const Poly& f);
// Multiplicity of every root of a squarefree r in f, grouped: r = prod parts,
// with f's multiplicity constant on each part.  Multiplicity 0 allowed.
std::vector<std::pair<Poly, int>> split_by_multiplicity(const Poly& r, const Poly& f);
std::vector<Elem> roots(const Poly& f);
bool is_irreducible(const Poly& f);
// All monic irreducible polynomials of the given degree, in index order.
std::vector<Poly> monic_irreducibles(const FieldPtr& field, int degree);

}  // namespace g4
