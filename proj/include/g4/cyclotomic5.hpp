// Exact arithmetic in Z[zeta_5], division with remainder, reduction of
// rank-2 unimodular hermitian forms, and Frobenius checks for abelian
// surfaces with multiplication by Z[zeta_5].
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace g4::cyclo {

// c0 + c1 z + c2 z^2 + c3 z^3 with z a primitive fifth root of unity.
struct Cyclo {
    std::array<mpq_class, 4> c;
    Cyclo() : c{0, 0, 0, 0} {}
    Cyclo(long a) : c{a, 0, 0, 0} {}
    Cyclo(mpq_class a, mpq_class b, mpq_class d, mpq_class e) : c{a, b, d, e} {}
    bool operator==(const Cyclo& o) const { return c == o.c; }
    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
};

Cyclo zeta();
// Fundamental unit of the real subfield with trace 1; psi_1 sends it to (1 + sqrt 5)/2.
Cyclo varphi();
Cyclo operator+(const Cyclo& x, const Cyclo& y);
Cyclo operator-(const Cyclo& x, const Cyclo& y);
Cyclo operator-(const Cyclo& x);
Cyclo operator*(const Cyclo& x, const Cyclo& y);
Cyclo conj(const Cyclo& x);
Cyclo galois(const Cyclo& x, int k);  // z -> z^k
Cyclo inverse(const Cyclo& x);
Cyclo power(Cyclo x, int e);          // negative e allowed for units
mpq_class trace(const Cyclo& x);
mpq_class norm(const Cyclo& x);       // N_{K/Q}
bool integral(const Cyclo& x);
bool is_real(const Cyclo& x);
std::string to_string(const Cyclo& x);

// a + b sqrt 5
struct Sqrt5 {
    mpq_class a, b;
};
int sign(const Sqrt5& x);
Sqrt5 operator*(const Sqrt5& x, const Sqrt5& y);
Sqrt5 operator-(const Sqrt5& x, const Sqrt5& y);
Sqrt5 operator/(const Sqrt5& x, const Sqrt5& y);
double to_double(const Sqrt5& x);

// The two embeddings on the real subfield: psi_1 with z -> e^{2 pi i/5},
// psi_2 with z -> e^{4 pi i/5}.  x must be real.
Sqrt5 psi(int i, const Cyclo& x);
// ||psi_i(x)|| = psi_i(x conj(x))
Sqrt5 abs2(int i, const Cyclo& x);
mpq_class real_norm(const Cyclo& x);  // N_{K+/Q} of a real element
bool totally_positive(const Cyclo& x);

// Tr_{K/Q}(x conj x)
mpq_class trace_form(const Cyclo& x);

struct Division {
    Cyclo quotient, remainder;
    bool widened = false;  // the 3^4 window did not certify
};
// n = q d + r with N(r) <= N(d)/4 and ||psi_i(r)|| <= ||psi_i(d)||; throws if d = 0
// or no candidate certifies.
Division euclid_divide(const Cyclo& n, const Cyclo& d);

struct CoveringReport {
    struct Row {
        int denominator;
        std::size_t cosets;
        mpq_class max_distance;
        std::size_t within_two;
    };
    std::vector<Row> rows;
    mpq_class max_distance;
    bool ok() const { return max_distance <= 2; }
};
// Exact distance to the lattice (O, trace_form) for every coset of (1/M)O/O.
CoveringReport covering_radius_check(const std::vector<int>& denominators);
// min over y in O of trace_form(x - y)
mpq_class distance_to_lattice(const Cyclo& x);

using Mat2 = std::array<std::array<Cyclo, 2>, 2>;
Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 conj_transpose(const Mat2& a);
Mat2 identity2();
Cyclo det(const Mat2& a);

// [[alpha, conj(beta)], [beta, gamma]]
struct Hermitian2x2 {
    Cyclo alpha, beta, gamma;
    Mat2 matrix() const;
    static Hermitian2x2 from_matrix(const Mat2& m);
    Cyclo det() const { return alpha * gamma - beta * conj(beta); }
};

struct ReductionStep {
    std::string kind;  // "determinant", "balance", "shear", "exchange", "final"
    Mat2 transform;
    Hermitian2x2 after;
    // recorded at exchange steps
    std::optional<Sqrt5> B1, B2, b1, b2, c1, c2;
    mpq_class epsilon = 0;
    mpq_class norm_ratio = 0;  // N_{K+/Q}(gamma/alpha) before the exchange
};

struct Reduction {
    Mat2 C;  // C* C = P
    std::vector<ReductionStep> steps;
};

// Throws std::invalid_argument unless P is hermitian, integral, totally
// positive and unimodular.
Reduction reduce_unimodular(const Hermitian2x2& P);

struct CmReport {
    long q = 0;
    std::vector<long> charpoly;  // leading coefficient first
    std::optional<Cyclo> root;
    bool root_given = false;
    bool root_ok = false;
    mpz_class index = 0;  // [Z[zeta] : Z[pi, conj pi]], 0 when not of full rank
    bool ordinary = false;
    bool ok() const { return root_ok && index == 1 && ordinary; }
};
// Checks a root of the quartic in Z[zeta] (searching all x with trace_form(x)
// <= 4q when none is given), that pi and conj(pi) generate Z[zeta], and that
// the middle coefficient is prime to q.
CmReport verify_frobenius_cm(long q, const std::vector<long>& charpoly, const std::optional<Cyclo>& pi = std::nullopt);

// x^2 h(x + q/x) for the real Weil polynomial h = x^2 + s x + t.
std::vector<long> quartic_from_real(long q, long s, long t);

}  // namespace g4::cyclo
