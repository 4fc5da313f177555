#include "g4/hermitian.hpp"

#include "integer_span.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#ifndef G4_DATA_DIR
#define G4_DATA_DIR "data"
#endif

namespace g4 {

QuadraticOrder QuadraticOrder::make(long dK, long conductor) {
    if (dK >= 0) throw std::invalid_argument("discriminant must be negative");
    long r = ((dK % 4) + 4) % 4;
    if (r != 0 && r != 1) throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
    if (conductor < 1) throw std::invalid_argument("conductor must be positive");
    QuadraticOrder O;
    O.dK = dK;
    O.conductor = conductor;
    return O;
}

// ---------------------------------------------------------------------------
// arithmetic in K

KElem k_add(const KElem& x, const KElem& y) { return KElem(x.a + y.a, x.b + y.b); }
KElem k_sub(const KElem& x, const KElem& y) { return KElem(x.a - y.a, x.b - y.b); }

KElem k_mul(const QuadraticOrder& O, const KElem& x, const KElem& y) {
    mpq_class bb = x.b * y.b;
    return KElem(x.a * y.a - O.w_norm() * bb, x.a * y.b + x.b * y.a + O.w_trace() * bb);
}

KElem k_conj(const QuadraticOrder& O, const KElem& x) { return KElem(x.a + O.w_trace() * x.b, -x.b); }

mpq_class k_trace(const QuadraticOrder& O, const KElem& x) { return 2 * x.a + O.w_trace() * x.b; }

mpq_class k_norm(const QuadraticOrder& O, const KElem& x) {
    return x.a * x.a + O.w_trace() * x.a * x.b + O.w_norm() * x.b * x.b;
}

KElem k_inv(const QuadraticOrder& O, const KElem& x) {
    mpq_class n = k_norm(O, x);
    if (n == 0) throw std::domain_error("inverse of zero");
    KElem c = k_conj(O, x);
    return KElem(c.a / n, c.b / n);
}

KElem k_sqrt_disc(const QuadraticOrder& O) { return KElem(-O.w_trace(), 2); }

bool k_in_order(const QuadraticOrder& O, const KElem& x) {
    if (x.a.get_den() != 1 || x.b.get_den() != 1) return false;
    mpz_class r = x.b.get_num() % O.conductor;
    return r == 0;
}

std::string k_to_string(const KElem& x) {
    std::ostringstream s;
    if (x.b == 0) {
        s << x.a.get_str();
        return s.str();
    }
    if (x.a != 0) s << x.a.get_str() << (x.b > 0 ? "+" : "");
    if (x.b == -1)
        s << "-";
    else if (x.b != 1)
        s << x.b.get_str() << "*";
    s << "w";
    return s.str();
}

KElem k_parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty field element");
    KElem out;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        bool neg = false;
        if (term[0] == '+' || term[0] == '-') {
            neg = term[0] == '-';
            term = term.substr(1);
        }
        bool has_w = !term.empty() && term.back() == 'w';
        if (has_w) {
            term.pop_back();
            if (!term.empty() && term.back() == '*') term.pop_back();
            if (term.empty()) term = "1";
        }
        if (term.empty() || term.find_first_not_of("0123456789/") != std::string::npos)
            throw std::invalid_argument("bad field element: " + text);
        mpq_class v;
        if (v.set_str(term, 10) != 0) throw std::invalid_argument("bad field element: " + text);
        v.canonicalize();
        if (neg) v = -v;
        if (has_w)
            out.b += v;
        else
            out.a += v;
    }
    return out;
}

// ---------------------------------------------------------------------------
// matrices

HermitianLattice HermitianLattice::standard(const QuadraticOrder& O, KMatrix gram, std::string name) {
    HermitianLattice L;
    L.order = O;
    L.name = std::move(name);
    std::size_t n = gram.size();
    L.gram = std::move(gram);
    for (int s = 0; s < 2; ++s)
        for (std::size_t j = 0; j < n; ++j) {
            KVec v(n);
            v[j] = s == 0 ? KElem(1) : KElem(0, O.conductor);
            L.basis.push_back(v);
        }
    return L;
}

KElem hform(const HermitianLattice& L, const KVec& x, const KVec& y) {
    const auto& O = L.order;
    KElem acc;
    std::size_t n = L.rank();
    for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        KElem col;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            col = k_add(col, k_mul(O, k_conj(O, x[i]), L.gram[i][j]));
        }
        acc = k_add(acc, k_mul(O, col, y[j]));
    }
    return acc;
}

KMatrix conj_transpose(const QuadraticOrder& O, const KMatrix& m) {
    std::size_t r = m.size(), c = r ? m[0].size() : 0;
    KMatrix t(c, KVec(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) t[j][i] = k_conj(O, m[i][j]);
    return t;
}

bool is_hermitian(const QuadraticOrder& O, const KMatrix& m) {
    for (auto& row : m)
        if (row.size() != m.size()) return false;
    return conj_transpose(O, m) == m;
}

KMatrix mat_mul(const QuadraticOrder& O, const KMatrix& a, const KMatrix& b) {
    std::size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
    KMatrix out(r, KVec(c));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < c; ++j) out[i][j] = k_add(out[i][j], k_mul(O, a[i][l], b[l][j]));
        }
    return out;
}

KMatrix identity_matrix(std::size_t n) {
    KMatrix m(n, KVec(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = KElem(1);
    return m;
}

KMatrix scaled(const QuadraticOrder& O, const KMatrix& m, const KElem& s) {
    KMatrix out = m;
    for (auto& row : out)
        for (auto& e : row) e = k_mul(O, e, s);
    return out;
}

KMatrix k_inverse(const QuadraticOrder& O, const KMatrix& m) {
    std::size_t n = m.size();
    KMatrix a = m, inv = identity_matrix(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("matrix is singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        KElem s = k_inv(O, a[c][c]);
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] = k_mul(O, a[c][j], s);
            inv[c][j] = k_mul(O, inv[c][j], s);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            KElem f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = k_sub(a[i][j], k_mul(O, f, a[c][j]));
                inv[i][j] = k_sub(inv[i][j], k_mul(O, f, inv[c][j]));
            }
        }
    }
    return inv;
}

std::size_t k_rank(const QuadraticOrder& O, KMatrix m) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        KElem inv = k_inv(O, m[r][c]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            KElem f = k_mul(O, m[i][c], inv);
            for (std::size_t j = c; j < cols; ++j) m[i][j] = k_sub(m[i][j], k_mul(O, f, m[r][j]));
        }
        ++r;
    }
    return r;
}

namespace {

std::vector<mpq_class> flatten(const KVec& v) {
    std::vector<mpq_class> out;
    out.reserve(2 * v.size());
    for (auto& e : v) {
        out.push_back(e.a);
        out.push_back(e.b);
    }
    return out;
}

// Solves x * B = target for rational x (B square, invertible).
std::vector<mpq_class> solve_left(QMatrix B, std::vector<mpq_class> target) {
    std::size_t n = B.size();
    // transpose: B^T x = target
    QMatrix A(n, std::vector<mpq_class>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) A[i][j] = B[j][i];
        A[i][n] = target[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && A[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("module basis is degenerate");
        std::swap(A[p], A[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || A[i][c] == 0) continue;
            mpq_class f = A[i][c] / A[c][c];
            for (std::size_t j = c; j <= n; ++j) A[i][j] -= f * A[c][j];
        }
    }
    std::vector<mpq_class> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = A[i][n] / A[i][i];
    return x;
}

QMatrix basis_matrix(const HermitianLattice& L) {
    QMatrix B;
    for (auto& b : L.basis) B.push_back(flatten(b));
    return B;
}

mpz_class common_denominator(const QMatrix& m) {
    mpz_class d = 1;
    for (auto& row : m)
        for (auto& e : row) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_den_mpz_t());
    return d;
}

std::vector<std::vector<long long>> to_integer(const QMatrix& m, const mpz_class& d) {
    std::vector<std::vector<long long>> out(m.size(), std::vector<long long>(m.empty() ? 0 : m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            mpq_class v = m[i][j] * d;
            if (v.get_den() != 1 || !v.get_num().fits_slong_p()) throw std::overflow_error("gram entry too large");
            out[i][j] = v.get_num().get_si();
        }
    return out;
}

using detail::integer_span;

mpq_class integer_determinant(const std::vector<std::vector<long long>>& m) {
    QMatrix q(m.size(), std::vector<mpq_class>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) q[i][j] = static_cast<long>(m[i][j]);
    return q_determinant(q);
}

}  // namespace

std::vector<mpq_class> module_coordinates(const HermitianLattice& L, const KVec& v) {
    auto x = solve_left(basis_matrix(L), flatten(v));
    for (auto& e : x)
        if (e.get_den() != 1) throw std::domain_error("vector is not in the module");
    return x;
}

bool in_module(const HermitianLattice& L, const KVec& v) {
    auto x = solve_left(basis_matrix(L), flatten(v));
    return std::all_of(x.begin(), x.end(), [](const mpq_class& e) { return e.get_den() == 1; });
}

mpq_class q_determinant(QMatrix m) {
    std::size_t n = m.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

bool positive_definite(const QMatrix& g) {
    for (std::size_t k = 1; k <= g.size(); ++k) {
        QMatrix minor(k, std::vector<mpq_class>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = g[i][j];
        if (q_determinant(minor) <= 0) return false;
    }
    return true;
}

QMatrix symplectic_gram(const HermitianLattice& L, const KElem& scale) {
    std::size_t N = L.basis.size();
    QMatrix g(N, std::vector<mpq_class>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            g[i][j] = k_trace(L.order, k_mul(L.order, scale, hform(L, L.basis[i], L.basis[j])));
    return g;
}

QMatrix trace_gram(const HermitianLattice& L) {
    if (!is_hermitian(L.order, L.gram)) throw std::invalid_argument("form is not hermitian");
    QMatrix g = symplectic_gram(L, KElem(1));
    if (!positive_definite(g)) throw std::invalid_argument("form is not positive definite");
    return g;
}

// ---------------------------------------------------------------------------
// short vectors

namespace {

// Fincke-Pohst on an integer Gram matrix; calls visit(x) for each nonzero x
// with x^T G x <= bound.  Floating point only steers the enumeration, every
// reported vector is checked exactly.
void enumerate_short(const std::vector<std::vector<long long>>& G, long long bound,
                     const std::function<void(const std::vector<long>&, long long)>& visit) {
    std::size_t n = G.size();
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q[i][j] = static_cast<double>(G[i][j]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    std::vector<long> x(n, 0);
    const double slack = 1e-6 * (1.0 + static_cast<double>(bound));
    std::function<void(std::size_t, double)> rec = [&](std::size_t level, double remaining) {
        std::size_t i = level - 1;
        double c = 0;
        for (std::size_t j = i + 1; j < n; ++j) c -= q[i][j] * static_cast<double>(x[j]);
        double r = std::sqrt(std::max(0.0, remaining + slack) / q[i][i]);
        long lo = static_cast<long>(std::ceil(c - r - 1e-9)), hi = static_cast<long>(std::floor(c + r + 1e-9));
        for (long v = lo; v <= hi; ++v) {
            x[i] = v;
            double t = static_cast<double>(v) - c;
            double rem = remaining - q[i][i] * t * t;
            if (rem < -slack) continue;
            if (i == 0) {
                bool zero = std::all_of(x.begin(), x.end(), [](long e) { return e == 0; });
                if (zero) continue;
                long long val = 0;
                for (std::size_t a = 0; a < n; ++a) {
                    if (!x[a]) continue;
                    long long row = 0;
                    for (std::size_t b = 0; b < n; ++b) row += G[a][b] * x[b];
                    val += row * x[a];
                }
                if (val <= bound) visit(x, val);
            } else {
                rec(i, rem);
            }
        }
        x[i] = 0;
    };
    rec(n, static_cast<double>(bound));
}

KVec combine_basis(const HermitianLattice& L, const std::vector<long>& x) {
    KVec v(L.rank());
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (!x[a]) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            const KElem& e = L.basis[a][j];
            if (e.is_zero()) continue;
            v[j] = k_add(v[j], KElem(e.a * x[a], e.b * x[a]));
        }
    }
    return v;
}

}  // namespace

std::vector<ShortVector> short_vectors(const HermitianLattice& L, const mpq_class& bound) {
    QMatrix g = trace_gram(L);
    mpz_class d = common_denominator(g);
    auto G = to_integer(g, d);
    // Tr h(v, v) = 2 h(v, v)
    mpq_class scaled_bound = 2 * bound * d;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled_bound.get_num_mpz_t(), scaled_bound.get_den_mpz_t());
    std::vector<ShortVector> out;
    if (fl < 0) return out;
    enumerate_short(G, fl.get_si(), [&](const std::vector<long>& x, long long val) {
        ShortVector s;
        s.coords = x;
        s.v = combine_basis(L, x);
        s.length = mpq_class(static_cast<long>(val)) / (2 * d);
        out.push_back(std::move(s));
    });
    return out;
}

bool has_vector_of_length(const HermitianLattice& L, const mpq_class& length) {
    for (auto& s : short_vectors(L, length))
        if (s.length == length) return true;
    return false;
}

mpq_class diagonal_pullback_check(const HermitianLattice& L) {
    mpq_class best = L.gram.at(0).at(0).a;
    for (std::size_t i = 0; i < L.rank(); ++i) best = std::min(best, L.gram[i][i].a);
    return best;
}

bool involution_check(const HermitianLattice& Q, const KMatrix& A) {
    const auto& O = Q.order;
    std::size_t n = Q.rank();
    if (A.size() != n) return false;
    for (auto& row : A)
        for (auto& e : row)
            if (!k_in_order(O, e)) return false;
    if (mat_mul(O, A, A) != identity_matrix(n)) return false;
    if (mat_mul(O, mat_mul(O, conj_transpose(O, A), Q.gram), A) != Q.gram) return false;
    KMatrix diff = A;
    for (std::size_t i = 0; i < n; ++i) diff[i][i] = k_sub(diff[i][i], KElem(1));
    return k_rank(O, diff) == 2;
}

// ---------------------------------------------------------------------------
// isometries

std::optional<std::vector<KVec>> hermitian_isometric(const HermitianLattice& L1, const HermitianLattice& L2) {
    if (L1.rank() != L2.rank() || !(L1.order == L2.order)) return std::nullopt;
    const auto& O = L2.order;
    std::size_t n = L1.rank(), N = L2.basis.size();
    mpq_class bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, L1.gram[i][i].a);
    auto sv = short_vectors(L2, bound);

    // h2 in coordinates: a-part and b-part as integer bilinear forms
    QMatrix ha(N, std::vector<mpq_class>(N)), hb(N, std::vector<mpq_class>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            KElem e = hform(L2, L2.basis[i], L2.basis[j]);
            ha[i][j] = e.a;
            hb[i][j] = e.b;
        }
    mpz_class da = common_denominator(ha), db = common_denominator(hb);
    mpz_class den = lcm(da, db);
    auto Ia = to_integer(ha, den), Ib = to_integer(hb, den);

    struct Cand {
        const ShortVector* s;
        std::vector<long long> ga, gb;  // H * x
    };
    std::vector<std::vector<Cand>> cands(n);
    for (auto& s : sv)
        for (std::size_t j = 0; j < n; ++j)
            if (s.length == L1.gram[j][j].a && L1.gram[j][j].b == 0) {
                Cand c{&s, std::vector<long long>(N, 0), std::vector<long long>(N, 0)};
                for (std::size_t a = 0; a < N; ++a)
                    for (std::size_t b = 0; b < N; ++b) {
                        c.ga[a] += Ia[a][b] * s.coords[b];
                        c.gb[a] += Ib[a][b] * s.coords[b];
                    }
                cands[j].push_back(std::move(c));
            }
    // targets scaled by den
    std::vector<std::vector<std::pair<long long, long long>>> target(n, std::vector<std::pair<long long, long long>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            mpq_class a = L1.gram[i][j].a * den, b = L1.gram[i][j].b * den;
            if (a.get_den() != 1 || b.get_den() != 1) {
                // cannot be met by integral coordinates
                target[i][j] = {LLONG_MIN, LLONG_MIN};
                continue;
            }
            target[i][j] = {a.get_num().get_si(), b.get_num().get_si()};
        }

    // action of rho = c w on module coordinates
    std::vector<std::vector<long long>> rho(N, std::vector<long long>(N));
    KElem rho_e(0, O.conductor);
    for (std::size_t a = 0; a < N; ++a) {
        KVec v = L2.basis[a];
        for (auto& e : v) e = k_mul(O, rho_e, e);
        auto x = module_coordinates(L2, v);  // throws if the module is not stable
        for (std::size_t b = 0; b < N; ++b) rho[a][b] = x[b].get_num().get_si();
    }

    std::vector<const Cand*> chosen(n, nullptr);
    std::optional<std::vector<KVec>> result;
    std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
        if (j == n) {
            std::vector<std::vector<long long>> rows;
            for (auto* c : chosen) {
                std::vector<long long> x(c->s->coords.begin(), c->s->coords.end());
                rows.push_back(x);
                std::vector<long long> y(N, 0);
                for (std::size_t a = 0; a < N; ++a)
                    for (std::size_t b = 0; b < N; ++b) y[b] += x[a] * rho[a][b];
                rows.push_back(y);
            }
            mpq_class det = integer_determinant(rows);
            if (det != 1 && det != -1) return false;
            std::vector<KVec> images;
            for (auto* c : chosen) images.push_back(c->s->v);
            result = images;
            return true;
        }
        for (auto& c : cands[j]) {
            bool ok = true;
            for (std::size_t i = 0; i < j && ok; ++i) {
                // h(v_i, v_j) = x_i^T H x_j
                long long a = 0, b = 0;
                for (std::size_t t = 0; t < N; ++t) {
                    a += chosen[i]->s->coords[t] * c.ga[t];
                    b += chosen[i]->s->coords[t] * c.gb[t];
                }
                ok = a == target[i][j].first && b == target[i][j].second;
            }
            if (!ok) continue;
            chosen[j] = &c;
            if (rec(j + 1)) return true;
        }
        chosen[j] = nullptr;
        return false;
    };
    rec(0);
    return result;
}

// ---------------------------------------------------------------------------
// pushforwards

namespace {

using Bits = std::uint8_t;

int parity(unsigned v) { return std::popcount(v) & 1; }

std::size_t f2_rank(std::vector<Bits> rows) {
    std::size_t r = 0;
    for (int bit = 7; bit >= 0; --bit) {
        std::size_t p = r;
        while (p < rows.size() && !((rows[p] >> bit) & 1)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && ((rows[i] >> bit) & 1)) rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

// All 4-dimensional subspaces of F_2^8 in reduced echelon form.
template <class F>
void for_each_subspace(F&& visit) {
    for (unsigned mask = 0; mask < 256; ++mask) {
        if (std::popcount(mask) != 4) continue;
        std::array<int, 4> piv{};
        int k = 0;
        for (int b = 0; b < 8; ++b)
            if ((mask >> b) & 1) piv[k++] = b;
        // row i has its pivot at piv[i] and free bits at non-pivot positions above it
        std::array<std::vector<int>, 4> free;
        int total = 0;
        for (int i = 0; i < 4; ++i) {
            for (int b = piv[i] + 1; b < 8; ++b)
                if (!((mask >> b) & 1)) free[i].push_back(b);
            total += static_cast<int>(free[i].size());
        }
        for (std::uint32_t assign = 0; assign < (1u << total); ++assign) {
            std::array<Bits, 4> rows{};
            int used = 0;
            for (int i = 0; i < 4; ++i) {
                Bits r = static_cast<Bits>(1u << piv[i]);
                for (int b : free[i])
                    if ((assign >> used++) & 1) r |= static_cast<Bits>(1u << b);
                rows[i] = r;
            }
            visit(rows);
        }
    }
}

void check_principal(const HermitianLattice& P) {
    if (P.order.conductor != 1) throw std::invalid_argument("pushforwards start from the maximal order");
    if (P.rank() != 4) throw std::invalid_argument("pushforwards are implemented in rank 4");
    trace_gram(P);
    QMatrix E = symplectic_gram(P, k_inv(P.order, k_sqrt_disc(P.order)));
    for (auto& row : E)
        for (auto& e : row)
            if (e.get_den() != 1) throw std::invalid_argument("form is not integral");
    mpq_class det = q_determinant(E);
    if (det != 1) throw std::invalid_argument("form is not principal");
}

HermitianLattice lifted_module(const HermitianLattice& P, const std::array<Bits, 4>& G) {
    std::vector<std::vector<long long>> rows;
    for (int k = 0; k < 8; ++k) {
        std::vector<long long> r(8, 0);
        r[k] = 2;
        rows.push_back(r);
    }
    for (Bits g : G) {
        std::vector<long long> r(8, 0);
        for (int k = 0; k < 8; ++k) r[k] = (g >> k) & 1;
        rows.push_back(r);
    }
    auto span = integer_span(rows);
    QuadraticOrder R = QuadraticOrder::make(P.order.dK, 2);
    HermitianLattice M;
    M.order = R;
    M.gram = scaled(P.order, P.gram, KElem(4));
    for (auto& r : span) {
        KVec v(4);
        // coordinates 0..3 on e_j, 4..7 on w e_j; rows are doubled
        for (int j = 0; j < 4; ++j) {
            mpq_class a(static_cast<long>(r[j]), 2), b(static_cast<long>(r[4 + j]), 2);
            a.canonicalize();
            b.canonicalize();
            v[j] = KElem(a, b);
        }
        M.basis.push_back(v);
    }
    return M;
}

}  // namespace

std::vector<PushforwardModule> enumerate_pushforwards(const HermitianLattice& P, IsotropyTest mode) {
    check_principal(P);
    const auto& O = P.order;
    // module basis of P: e_0..e_3, w e_0..w e_3 -> bit k
    QMatrix E = symplectic_gram(P, k_inv(O, k_sqrt_disc(O)));
    std::array<Bits, 8> Jrow{};
    for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 8; ++l)
            if (mpz_class(E[k][l].get_num()) % 2 != 0) Jrow[k] |= static_cast<Bits>(1u << l);
    auto pair = [&](Bits u, Bits v) {
        unsigned acc = 0;
        for (int k = 0; k < 8; ++k)
            if ((u >> k) & 1) acc ^= parity(Jrow[k] & v);
        return acc;
    };
    // multiplication by w modulo 2
    std::array<Bits, 8> wimg{};
    for (int k = 0; k < 4; ++k) wimg[k] = static_cast<Bits>(1u << (k + 4));
    for (int k = 4; k < 8; ++k) {
        Bits b = 0;
        if (O.w_trace() & 1) b |= static_cast<Bits>(1u << k);
        if (O.w_norm() & 1) b |= static_cast<Bits>(1u << (k - 4));
        wimg[k] = b;
    }
    auto wmul = [&](Bits v) {
        Bits out = 0;
        for (int k = 0; k < 8; ++k)
            if ((v >> k) & 1) out ^= wimg[k];
        return out;
    };

    // pairing of the induced form Tr(4P / (2 sqrt dK)) on O^4, for the
    // integrality test on the lifted module
    std::vector<std::vector<long long>> S(8, std::vector<long long>(8));
    for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 8; ++l) {
            mpq_class v = 2 * E[k][l];
            S[k][l] = v.get_num().get_si();
        }

    // R = Z[c w] with c = 2; c w acts on (1/2)O^4 / O^4 as c times the action of w
    const long c = 2;
    auto rho = [&](Bits v) { return c % 2 ? wmul(v) : Bits(0); };

    std::vector<PushforwardModule> out;
    for_each_subspace([&](const std::array<Bits, 4>& G) {
        std::vector<Bits> span_g(G.begin(), G.end());
        for (Bits g : G) {
            span_g.push_back(rho(g));
            if (f2_rank(span_g) != 4) return;
            span_g.pop_back();
        }
        std::vector<Bits> gen(G.begin(), G.end());
        for (Bits g : G) gen.push_back(wmul(g));
        if (f2_rank(gen) != 8) return;
        if (mode == IsotropyTest::WeilPairing) {
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (pair(G[i], G[j])) return;
            out.push_back({G, lifted_module(P, G)});
            return;
        }
        // integrality and unimodularity on the lifted module: basis rows are
        // doubled coordinates, so the pairing is C S C^T / 4
        std::vector<std::vector<long long>> rows;
        for (int k = 0; k < 8; ++k) {
            std::vector<long long> r(8, 0);
            r[k] = 2;
            rows.push_back(r);
        }
        for (Bits g : G) {
            std::vector<long long> r(8, 0);
            for (int k = 0; k < 8; ++k) r[k] = (g >> k) & 1;
            rows.push_back(r);
        }
        auto C = integer_span(rows);
        std::vector<std::vector<long long>> CS(8, std::vector<long long>(8, 0)), F(8, std::vector<long long>(8, 0));
        for (int i = 0; i < 8; ++i)
            for (int k = 0; k < 8; ++k)
                if (C[i][k])
                    for (int l = 0; l < 8; ++l) CS[i][l] += C[i][k] * S[k][l];
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                long long v = 0;
                for (int l = 0; l < 8; ++l) v += CS[i][l] * C[j][l];
                if (v % 4 != 0) return;
                F[i][j] = v / 4;
            }
        mpq_class det = integer_determinant(F);
        if (det != 1 && det != -1) return;
        out.push_back({G, lifted_module(P, G)});
    });
    return out;
}

bool pushforward_conditions_hold(const HermitianLattice& P, const PushforwardModule& M) {
    const auto& L = M.lattice;
    const auto& O = P.order;
    if (L.basis.size() != 8) return false;
    // O^4 < M
    for (auto& b : P.basis)
        if (!in_module(L, b)) return false;
    // M < (1/2) O^4
    for (auto& b : L.basis) {
        KVec v = b;
        for (auto& e : v) e = KElem(2 * e.a, 2 * e.b);
        if (!in_module(P, v)) return false;
    }
    // index 16
    QMatrix C;
    for (auto& b : P.basis) C.push_back(module_coordinates(L, b));
    mpq_class det = abs(q_determinant(C));
    if (det != 16) return false;
    // stable under R = Z[2w]
    for (auto& b : L.basis) {
        KVec v = b;
        for (auto& e : v) e = k_mul(O, KElem(0, 2), e);
        if (!in_module(L, v)) return false;
    }
    // O M = (1/2) O^4
    std::vector<std::vector<long long>> rows;
    for (int s = 0; s < 2; ++s)
        for (auto& b : L.basis) {
            KVec v = b;
            if (s) for (auto& e : v) e = k_mul(O, KElem(0, 1), e);
            std::vector<long long> r(8);
            for (int j = 0; j < 4; ++j) {
                mpq_class a = 2 * v[j].a, c = 2 * v[j].b;
                if (a.get_den() != 1 || c.get_den() != 1) return false;
                r[j] = a.get_num().get_si();
                r[4 + j] = c.get_num().get_si();
            }
            rows.push_back(r);
        }
    auto span = integer_span(rows);
    if (span.size() != 8 || abs(integer_determinant(span)) != 1) return false;
    // induced pairing integral and unimodular
    QMatrix F = symplectic_gram(L, k_inv(O, KElem(-2 * O.w_trace(), 4)));
    for (auto& row : F)
        for (auto& e : row)
            if (e.get_den() != 1) return false;
    return abs(q_determinant(F)) == 1;
}

PushforwardSummary summarize_pushforwards(const std::vector<PushforwardModule>& mods,
                                          const std::vector<HermitianLattice>& reps) {
    PushforwardSummary s;
    s.total = mods.size();
    s.class_counts.assign(reps.size(), 0);
    for (auto& m : mods) {
        if (has_vector_of_length(m.lattice, 2)) {
            ++s.with_short;
            continue;
        }
        ++s.without_short;
        std::size_t hits = 0, which = 0;
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (hermitian_isometric(reps[i], m.lattice)) {
                ++hits;
                which = i;
            }
        if (hits == 0)
            ++s.unmatched;
        else if (hits > 1)
            ++s.multiply_matched;
        else
            ++s.class_counts[which];
    }
    return s;
}

// ---------------------------------------------------------------------------
// data file

std::vector<HermitianLattice> load_hermitian_forms(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<HermitianLattice> out;
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&](std::string& l) {
        while (std::getline(in, l)) {
            ++lineno;
            auto h = l.find('#');
            if (h != std::string::npos) l.erase(h);
            if (l.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    while (next_line(line)) {
        std::istringstream hs(line);
        std::string kw, rk, nk, name;
        long dK = 0, c = 0;
        std::size_t n = 0;
        if (!(hs >> kw >> dK >> c >> rk >> n) || kw != "order" || rk != "rank" || n == 0)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected block header");
        if (hs >> nk) {
            if (nk != "name" || !(hs >> name)) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad name");
        }
        QuadraticOrder O = QuadraticOrder::make(dK, c);
        KMatrix g;
        for (std::size_t i = 0; i < n; ++i) {
            if (!next_line(line)) throw std::runtime_error(path + ": truncated block");
            std::istringstream rs(line);
            KVec row;
            std::string tok;
            while (rs >> tok) row.push_back(k_parse(tok));
            if (row.size() != n) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": wrong row length");
            g.push_back(row);
        }
        for (auto& row : g)
            for (auto& e : row)
                if (!k_in_order(O, e)) throw std::runtime_error(path + ": entry outside the order in " + name);
        if (!is_hermitian(O, g)) throw std::runtime_error(path + ": form " + name + " is not hermitian");
        out.push_back(HermitianLattice::standard(O, std::move(g), name));
    }
    return out;
}

std::vector<HermitianLattice> load_schiemann_forms(const std::string& path, const QuadraticOrder& O,
                                                   std::size_t rank) {
    std::vector<HermitianLattice> out;
    for (auto& L : load_hermitian_forms(path))
        if (L.order == O && L.rank() == rank) out.push_back(std::move(L));
    return out;
}

std::string default_forms_path() {
    if (const char* d = std::getenv("G4_DATA_DIR")) return std::string(d) + "/hermitian_forms.txt";
    return std::string(G4_DATA_DIR) + "/hermitian_forms.txt";
}

}  // namespace g4
