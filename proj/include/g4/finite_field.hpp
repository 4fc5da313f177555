// Arithmetic in small finite fields F_q, q = p^k.
//
// An element is an integer in [0, q) whose base-p digits are the coefficients
// of its polynomial-basis representation (lowest degree first).  Integers
// below p are therefore the prime subfield.  Multiplication goes through
// discrete-log tables built once per field.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace g4 {

using Elem = std::uint32_t;

bool is_prime(std::uint64_t n);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    // Lexicographically least monic irreducible modulus of degree k, where
    // x^k + c_{k-1}x^{k-1} + ... + c_0 is ordered by the integer sum c_i p^i.
    static FieldPtr make(std::uint32_t p, std::uint32_t k = 1);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return k_; }
    std::uint32_t order() const { return q_; }
    // Low-to-high coefficients of the monic modulus (length k + 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const {
        if (k_ == 1) {
            Elem s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        return add_slow(a, b);
    }
    Elem neg(Elem a) const {
        if (k_ == 1) return a == 0 ? 0 : p_ - a;
        return neg_table_[a];
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::int64_t e) const;

    Elem from_int(std::int64_t n) const;
    Elem generator() const { return q_ == 2 ? 1 : exp_[1]; }
    // Discrete log to the base generator(); a must be nonzero.
    std::uint32_t log(Elem a) const;
    Elem exp(std::int64_t e) const;

    int quadratic_character(Elem a) const;
    bool is_square(Elem a) const { return quadratic_character(a) >= 0; }
    // Some square root of a square; throws for nonsquares.
    Elem sqrt(Elem a) const;
    // Least nonsquare in the integer order of encodings (odd q only).
    Elem least_nonsquare() const;
    // True when a is an m-th power of an element of F_q (0 counts as one).
    bool is_power(Elem a, std::uint32_t m) const;

    Elem frobenius(Elem a) const;
    std::vector<Elem> frobenius_orbit(Elem a) const;

    std::vector<std::uint32_t> digits(Elem a) const;
    Elem from_digits(const std::vector<std::uint32_t>& d) const;
    std::string to_string(Elem a) const;

private:
    Field(std::uint32_t p, std::uint32_t k);
    Elem add_slow(Elem a, Elem b) const;
    Elem poly_mulmod(Elem a, Elem b) const;

    std::uint32_t p_, k_, q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
    std::vector<Elem> neg_table_;
    std::vector<std::uint32_t> pow_p_;
};

// root_count(v) = #{z in F_q : z^m = v}.
class PowerResidueTable {
public:
    PowerResidueTable(FieldPtr field, std::uint32_t m);
    std::uint32_t count(Elem v) const { return counts_[v]; }
    std::uint32_t exponent() const { return m_; }
    const FieldPtr& field() const { return field_; }

private:
    FieldPtr field_;
    std::uint32_t m_;
    std::vector<std::uint32_t> counts_;
};

// Image of a subfield inside a larger field of the same characteristic.
struct Embedding {
    FieldPtr small;
    FieldPtr big;
    std::vector<Elem> image;
    Elem operator()(Elem a) const { return image[a]; }
};

Embedding make_embedding(FieldPtr small, FieldPtr big);

// Throws unless char(F) > 3; the curve searches never run below that.
void require_large_characteristic(const Field& field, std::uint32_t min_char = 5);

}  // namespace g4
