// Hermitian lattices over imaginary quadratic orders, exact over Q(sqrt d).
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace g4 {

// The order Z[c w] in K = Q(sqrt dK), where w = sqrt(dK)/2 for dK = 0 mod 4
// and w = (1 + sqrt(dK))/2 for dK = 1 mod 4.
struct QuadraticOrder {
    long dK = -4;
    long conductor = 1;
    static QuadraticOrder make(long dK, long conductor);
    long w_trace() const { return dK % 4 == 0 ? 0 : 1; }
    long w_norm() const { return dK % 4 == 0 ? -dK / 4 : (1 - dK) / 4; }
    long discriminant() const { return conductor * conductor * dK; }
    bool operator==(const QuadraticOrder& o) const { return dK == o.dK && conductor == o.conductor; }
};

// a + b w
struct KElem {
    mpq_class a, b;
    KElem() : a(0), b(0) {}
    KElem(mpq_class a_, mpq_class b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const KElem& o) const { return a == o.a && b == o.b; }
};

KElem k_add(const KElem& x, const KElem& y);
KElem k_sub(const KElem& x, const KElem& y);
KElem k_mul(const QuadraticOrder& O, const KElem& x, const KElem& y);
KElem k_conj(const QuadraticOrder& O, const KElem& x);
KElem k_inv(const QuadraticOrder& O, const KElem& x);
mpq_class k_trace(const QuadraticOrder& O, const KElem& x);
mpq_class k_norm(const QuadraticOrder& O, const KElem& x);
KElem k_sqrt_disc(const QuadraticOrder& O);  // sqrt(dK)
bool k_in_order(const QuadraticOrder& O, const KElem& x);
std::string k_to_string(const KElem& x);
// "a/b+c/d*w" and similar sums of rationals and rational multiples of w
KElem k_parse(const std::string& s);

using KVec = std::vector<KElem>;
using KMatrix = std::vector<KVec>;

struct HermitianLattice {
    QuadraticOrder order;
    std::string name;
    KMatrix gram;  // h(x, y) = sum conj(x_i) gram_ij y_j
    // Z-basis of the module inside K^n (2n vectors)
    std::vector<KVec> basis;

    std::size_t rank() const { return gram.size(); }
    // The module O_c^n with the given Gram matrix.
    static HermitianLattice standard(const QuadraticOrder& O, KMatrix gram, std::string name = {});
};

KElem hform(const HermitianLattice& L, const KVec& x, const KVec& y);
bool is_hermitian(const QuadraticOrder& O, const KMatrix& m);
KMatrix conj_transpose(const QuadraticOrder& O, const KMatrix& m);
KMatrix mat_mul(const QuadraticOrder& O, const KMatrix& a, const KMatrix& b);
KMatrix identity_matrix(std::size_t n);
KMatrix scaled(const QuadraticOrder& O, const KMatrix& m, const KElem& s);
KMatrix k_inverse(const QuadraticOrder& O, const KMatrix& m);
// Rank over K.
std::size_t k_rank(const QuadraticOrder& O, KMatrix m);

using QMatrix = std::vector<std::vector<mpq_class>>;
// Gram matrix of Tr h(x, y) on the module basis; throws unless positive definite.
QMatrix trace_gram(const HermitianLattice& L);
mpq_class q_determinant(QMatrix m);
bool positive_definite(const QMatrix& g);

struct ShortVector {
    std::vector<long> coords;  // on the module basis
    KVec v;
    mpq_class length;  // h(v, v)
};
// All nonzero v in the module with h(v, v) <= bound.
std::vector<ShortVector> short_vectors(const HermitianLattice& L, const mpq_class& bound);

// Minimum of h(e_i, e_i) over the coordinate vectors.
mpq_class diagonal_pullback_check(const HermitianLattice& L);

// A^2 = I, A* Q A = Q and rank(A - I) = 2.
bool involution_check(const HermitianLattice& Q, const KMatrix& A);

// Images v_1..v_n in L2 of the standard basis of the free lattice L1 with
// h2(v_i, v_j) = gram1_ij, spanning L2 over the order of L2; nullopt if none.
std::optional<std::vector<KVec>> hermitian_isometric(const HermitianLattice& L1, const HermitianLattice& L2);

// Z-coordinates of v on the module basis of L (throws if v is not in L).
std::vector<mpq_class> module_coordinates(const HermitianLattice& L, const KVec& v);
bool in_module(const HermitianLattice& L, const KVec& v);

// ---------------------------------------------------------------------------
// pushforwards from the maximal order to the order of conductor 2

struct PushforwardModule {
    std::array<std::uint8_t, 4> subgroup;  // rows of G inside (O/2O)^4 = F_2^8
    HermitianLattice lattice;              // M with the induced form over R
};

enum class IsotropyTest { ModuleIntegrality, WeilPairing };

// P is principal on O^4 (O maximal).  Returns every M with O^4 < M < (1/2)O^4,
// [M : O^4] = 16, M stable under R, O M = (1/2)O^4 and the induced form
// (4P on M, paired through Tr(h / (2 sqrt dK))) integral and unimodular.
std::vector<PushforwardModule> enumerate_pushforwards(const HermitianLattice& P,
                                                      IsotropyTest mode = IsotropyTest::ModuleIntegrality);
// Recheck of the four defining conditions for one module.
bool pushforward_conditions_hold(const HermitianLattice& P, const PushforwardModule& M);

// Matrix of Tr(scale * h(x, y)) on the module basis.  With scale = 1/sqrt dK
// it is the integral unimodular pairing of a principal lattice over O.
QMatrix symplectic_gram(const HermitianLattice& L, const KElem& scale);

// True when some v in the module has h(v, v) = length.
bool has_vector_of_length(const HermitianLattice& L, const mpq_class& length);

struct PushforwardSummary {
    std::size_t total = 0;
    std::size_t with_short = 0;     // modules with a vector of length 2
    std::size_t without_short = 0;
    std::vector<std::size_t> class_counts;  // per representative, among those without
    std::size_t unmatched = 0;
    std::size_t multiply_matched = 0;
};
PushforwardSummary summarize_pushforwards(const std::vector<PushforwardModule>& mods,
                                          const std::vector<HermitianLattice>& reps);

// ---------------------------------------------------------------------------
// data file

// Blocks "order <dK> <conductor> rank <n> [name <label>]" followed by n rows.
std::vector<HermitianLattice> load_hermitian_forms(const std::string& path);
std::vector<HermitianLattice> load_schiemann_forms(const std::string& path, const QuadraticOrder& O, std::size_t rank);
std::string default_forms_path();

}  // namespace g4
