#include "g4/cyclotomic5.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "integer_span.hpp"

namespace g4::cyclo {

namespace {

// reduce a vector of coefficients of z^0..z^4 to the basis 1, z, z^2, z^3
Cyclo from5(std::array<mpq_class, 5> p) {
    return Cyclo(p[0] - p[4], p[1] - p[4], p[2] - p[4], p[3] - p[4]);
}

mpq_class round_half(const mpq_class& x) {
    mpq_class h = x + mpq_class(1, 2);
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return mpq_class(f);
}

}  // namespace

Cyclo zeta() { return Cyclo(0, 1, 0, 0); }
Cyclo varphi() { return Cyclo(0, 0, -1, -1); }

Cyclo operator+(const Cyclo& x, const Cyclo& y) {
    return Cyclo(x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]);
}
Cyclo operator-(const Cyclo& x, const Cyclo& y) {
    return Cyclo(x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]);
}
Cyclo operator-(const Cyclo& x) { return Cyclo(-x.c[0], -x.c[1], -x.c[2], -x.c[3]); }

Cyclo operator*(const Cyclo& x, const Cyclo& y) {
    std::array<mpq_class, 5> p{0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        if (x.c[i] == 0) continue;
        for (int j = 0; j < 4; ++j) p[(i + j) % 5] += x.c[i] * y.c[j];
    }
    return from5(p);
}

Cyclo galois(const Cyclo& x, int k) {
    k = ((k % 5) + 5) % 5;
    if (k == 0) throw std::invalid_argument("not an automorphism");
    std::array<mpq_class, 5> p{0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) p[(i * k) % 5] += x.c[i];
    return from5(p);
}

Cyclo conj(const Cyclo& x) { return galois(x, 4); }

mpq_class trace(const Cyclo& x) { return 4 * x.c[0] - x.c[1] - x.c[2] - x.c[3]; }

mpq_class norm(const Cyclo& x) { return (x * galois(x, 2) * galois(x, 3) * galois(x, 4)).c[0]; }

Cyclo inverse(const Cyclo& x) {
    mpq_class n = norm(x);
    if (n == 0) throw std::domain_error("inverse of zero");
    Cyclo r = galois(x, 2) * galois(x, 3) * galois(x, 4);
    for (auto& e : r.c) e /= n;
    return r;
}

Cyclo power(Cyclo x, int e) {
    if (e < 0) {
        x = inverse(x);
        e = -e;
    }
    Cyclo r(1);
    while (e > 0) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

bool integral(const Cyclo& x) {
    return std::all_of(x.c.begin(), x.c.end(), [](const mpq_class& e) { return e.get_den() == 1; });
}

bool is_real(const Cyclo& x) { return x.c[1] == 0 && x.c[2] == x.c[3]; }

std::string to_string(const Cyclo& x) {
    std::ostringstream s;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        if (x.c[i] == 0) continue;
        mpq_class v = x.c[i];
        if (!first) s << (v > 0 ? " + " : " - ");
        else if (v < 0) s << "-";
        mpq_class a = abs(v);
        if (i == 0 || a != 1) s << a.get_str();
        if (i > 0) s << (a != 1 ? "*" : "") << "z" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return first ? "0" : s.str();
}

// ---------------------------------------------------------------------------
// Q(sqrt 5)

int sign(const Sqrt5& x) {
    int sa = sgn(x.a), sb = sgn(x.b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with 5 b^2
    return x.a * x.a > 5 * x.b * x.b ? sa : sb;
}

Sqrt5 operator*(const Sqrt5& x, const Sqrt5& y) { return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a}; }
Sqrt5 operator-(const Sqrt5& x, const Sqrt5& y) { return {x.a - y.a, x.b - y.b}; }
Sqrt5 operator/(const Sqrt5& x, const Sqrt5& y) {
    mpq_class n = y.a * y.a - 5 * y.b * y.b;
    if (n == 0) throw std::domain_error("division by zero");
    Sqrt5 num = x * Sqrt5{y.a, -y.b};
    return {num.a / n, num.b / n};
}
double to_double(const Sqrt5& x) { return x.a.get_d() + x.b.get_d() * std::sqrt(5.0); }

Sqrt5 psi(int i, const Cyclo& x) {
    if (!is_real(x)) throw std::invalid_argument("element is not real");
    // z^2 + z^3 -> -(1 + sqrt 5)/2 under psi_1
    mpq_class r0 = x.c[0], r2 = x.c[2];
    Sqrt5 v{r0 - r2 / 2, -r2 / 2};
    if (i == 2) v.b = -v.b;
    else if (i != 1) throw std::invalid_argument("embedding index is 1 or 2");
    return v;
}

Sqrt5 abs2(int i, const Cyclo& x) { return psi(i, x * conj(x)); }

mpq_class real_norm(const Cyclo& x) {
    Sqrt5 v = psi(1, x);
    return v.a * v.a - 5 * v.b * v.b;
}

bool totally_positive(const Cyclo& x) { return is_real(x) && sign(psi(1, x)) > 0 && sign(psi(2, x)) > 0; }

mpq_class trace_form(const Cyclo& x) { return trace(x * conj(x)); }

// ---------------------------------------------------------------------------
// division

Division euclid_divide(const Cyclo& n, const Cyclo& d) {
    if (d.is_zero()) throw std::domain_error("division by zero");
    Cyclo z = n * inverse(d);
    Cyclo base(round_half(z.c[0]), round_half(z.c[1]), round_half(z.c[2]), round_half(z.c[3]));
    mpq_class Nd = norm(d);
    Sqrt5 d1 = abs2(1, d), d2 = abs2(2, d);
    for (int w : {1, 2}) {
        struct Cand {
            mpq_class dist;
            Cyclo q;
        };
        std::vector<Cand> cands;
        int side = 2 * w + 1;
        for (int idx = 0; idx < side * side * side * side; ++idx) {
            Cyclo q = base;
            int t = idx;
            for (int k = 0; k < 4; ++k) {
                q.c[k] += t % side - w;
                t /= side;
            }
            cands.push_back({trace_form(z - q), q});
        }
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.dist < b.dist; });
        for (auto& c : cands) {
            Cyclo r = n - c.q * d;
            if (4 * norm(r) > Nd) continue;
            if (sign(abs2(1, r) - d1) > 0 || sign(abs2(2, r) - d2) > 0) continue;
            return {c.q, r, w == 2};
        }
    }
    throw std::logic_error("no certified remainder for " + to_string(n) + " / " + to_string(d));
}

// ---------------------------------------------------------------------------
// covering radius

namespace {

long long qform_int(const std::array<long long, 4>& v) {
    long long s = 0, ss = 0;
    for (auto e : v) {
        s += e;
        ss += e * e;
    }
    return 5 * ss - s * s;
}

}  // namespace

mpq_class distance_to_lattice(const Cyclo& x) {
    mpz_class D = 1;
    for (auto& e : x.c) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), e.get_den_mpz_t());
    if (!D.fits_slong_p()) throw std::overflow_error("denominator too large");
    long long M = D.get_si();
    std::array<long long, 4> X{};
    for (int i = 0; i < 4; ++i) {
        mpq_class v = x.c[i] * D;
        X[i] = v.get_num().get_si();
    }
    // start from coordinate rounding, then search the box allowed by
    // trace_form(v) >= |v|^2
    std::array<long long, 4> y0{};
    std::array<long long, 4> diff{};
    for (int i = 0; i < 4; ++i) {
        long long f = X[i] >= 0 ? X[i] / M : -((-X[i] + M - 1) / M);
        if (2 * (X[i] - f * M) >= M) ++f;
        y0[i] = f;
        diff[i] = X[i] - f * M;
    }
    long long best = qform_int(diff);
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(best))) / M + 2;
    std::array<long long, 4> y{};
    for (y[0] = y0[0] - r; y[0] <= y0[0] + r; ++y[0])
        for (y[1] = y0[1] - r; y[1] <= y0[1] + r; ++y[1])
            for (y[2] = y0[2] - r; y[2] <= y0[2] + r; ++y[2])
                for (y[3] = y0[3] - r; y[3] <= y0[3] + r; ++y[3]) {
                    for (int i = 0; i < 4; ++i) diff[i] = X[i] - y[i] * M;
                    best = std::min(best, qform_int(diff));
                }
    mpq_class out(static_cast<long>(best), static_cast<unsigned long>(M * M));
    out.canonicalize();
    return out;
}

CoveringReport covering_radius_check(const std::vector<int>& denominators) {
    CoveringReport rep;
    rep.max_distance = 0;
    for (int M : denominators) {
        if (M < 1) throw std::invalid_argument("denominator must be positive");
        CoveringReport::Row row{M, 0, 0, 0};
        for (int idx = 0; idx < M * M * M * M; ++idx) {
            Cyclo x;
            int t = idx;
            for (int k = 0; k < 4; ++k) {
                x.c[k] = mpq_class(t % M, M);
                x.c[k].canonicalize();
                t /= M;
            }
            mpq_class dist = distance_to_lattice(x);
            ++row.cosets;
            if (dist <= 2) ++row.within_two;
            row.max_distance = std::max(row.max_distance, dist);
        }
        rep.max_distance = std::max(rep.max_distance, row.max_distance);
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// 2x2 matrices

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

Mat2 conj_transpose(const Mat2& a) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = conj(a[j][i]);
    return r;
}

Mat2 identity2() {
    Mat2 r;
    r[0][0] = r[1][1] = Cyclo(1);
    return r;
}

Cyclo det(const Mat2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

Mat2 Hermitian2x2::matrix() const {
    Mat2 m;
    m[0][0] = alpha;
    m[0][1] = conj(beta);
    m[1][0] = beta;
    m[1][1] = gamma;
    return m;
}

Hermitian2x2 Hermitian2x2::from_matrix(const Mat2& m) {
    if (!(m[0][1] == conj(m[1][0])) || !is_real(m[0][0]) || !is_real(m[1][1]))
        throw std::invalid_argument("matrix is not hermitian");
    return {m[0][0], m[1][0], m[1][1]};
}

namespace {

Mat2 inverse2(const Mat2& a) {
    Cyclo di = inverse(det(a));
    Mat2 r;
    r[0][0] = a[1][1] * di;
    r[0][1] = -a[0][1] * di;
    r[1][0] = -a[1][0] * di;
    r[1][1] = a[0][0] * di;
    return r;
}

Mat2 diag(const Cyclo& u, const Cyclo& v) {
    Mat2 r;
    r[0][0] = u;
    r[1][1] = v;
    return r;
}

const Sqrt5 PHI2{mpq_class(3, 2), mpq_class(1, 2)};      // phi^2
const Sqrt5 PHI_2{mpq_class(3, 2), mpq_class(-1, 2)};    // phi^-2

}  // namespace

Reduction reduce_unimodular(const Hermitian2x2& P) {
    for (auto* e : {&P.alpha, &P.beta, &P.gamma})
        if (!integral(*e)) throw std::invalid_argument("entries must lie in Z[zeta_5]");
    if (!is_real(P.alpha) || !is_real(P.gamma)) throw std::invalid_argument("diagonal must be real");
    if (!totally_positive(P.alpha)) throw std::invalid_argument("form is not totally positive");
    Cyclo D = P.det();
    if (!totally_positive(D)) throw std::invalid_argument("form is not totally positive");
    if (real_norm(D) != 1) throw std::invalid_argument("form is not unimodular");

    Reduction R;
    R.C = identity2();
    Hermitian2x2 cur = P;
    auto apply = [&](const Mat2& T, const std::string& kind) -> ReductionStep& {
        cur = Hermitian2x2::from_matrix(mat_mul(mat_mul(conj_transpose(T), cur.matrix()), T));
        R.C = mat_mul(inverse2(T), R.C);
        ReductionStep s;
        s.kind = kind;
        s.transform = T;
        s.after = cur;
        R.steps.push_back(s);
        return R.steps.back();
    };

    // determinant: D = varphi^(2k)
    int k = 0;
    const Cyclo u2 = varphi() * varphi(), u2i = inverse(u2);
    for (int guard = 0; !(D == Cyclo(1)); ++guard) {
        if (guard > 10000) throw std::logic_error("determinant is not a power of the fundamental unit");
        if (sign(psi(1, D) - Sqrt5{1, 0}) > 0) {
            D = D * u2i;
            ++k;
        } else {
            D = D * u2;
            --k;
        }
    }
    if (k != 0) apply(diag(power(varphi(), -k), Cyclo(1)), "determinant");

    const Cyclo vp = varphi(), vpi = inverse(varphi());
    for (int round = 0;; ++round) {
        if (round > 10000) throw std::logic_error("reduction does not terminate");
        // balance psi_1(alpha)/psi_2(alpha) into [phi^-2, phi^2]
        for (int guard = 0;; ++guard) {
            if (guard > 10000) throw std::logic_error("balancing does not terminate");
            Sqrt5 a1 = psi(1, cur.alpha), a2 = psi(2, cur.alpha);
            if (sign(a1 - PHI2 * a2) > 0)
                apply(diag(vpi, vp), "balance");
            else if (sign(a1 - PHI_2 * a2) < 0)
                apply(diag(vp, vpi), "balance");
            else
                break;
        }
        Division div = euclid_divide(cur.beta, cur.alpha);
        if (!div.quotient.is_zero()) {
            Mat2 T = identity2();
            T[0][1] = -conj(div.quotient);
            apply(T, "shear");
        }
        if (cur.alpha == Cyclo(1)) {
            if (!cur.beta.is_zero() || !(cur.gamma == Cyclo(1)))
                throw std::logic_error("reduced form is not the identity");
            ReductionStep s;
            s.kind = "final";
            s.transform = identity2();
            s.after = cur;
            R.steps.push_back(s);
            break;
        }
        mpq_class Na = real_norm(cur.alpha);
        if (Na < 4) throw std::logic_error("totally positive integer of norm below 4 other than 1");
        Cyclo B = cur.beta * conj(cur.beta);
        Sqrt5 al1 = psi(1, cur.alpha), al2 = psi(2, cur.alpha);
        Sqrt5 sq1 = al1 * al1, sq2 = al2 * al2;
        mpq_class eps = 1 / Na;
        mpq_class ratio = real_norm(cur.gamma) / Na;
        if (ratio > eps * eps + mpq_class(68, 25) * eps + mpq_class(1, 4) || ratio >= 1)
            throw std::logic_error("exchange does not decrease the norm");
        Mat2 swap;
        swap[0][1] = swap[1][0] = Cyclo(1);
        auto& s = apply(swap, "exchange");
        s.B1 = psi(1, B);
        s.B2 = psi(2, B);
        s.b1 = psi(1, B) / sq1;
        s.b2 = psi(2, B) / sq2;
        s.c1 = Sqrt5{1, 0} / sq1;
        s.c2 = Sqrt5{1, 0} / sq2;
        s.epsilon = eps;
        s.norm_ratio = ratio;
        if (!(real_norm(cur.alpha) < Na)) throw std::logic_error("norm of the corner did not decrease");
    }
    return R;
}

// ---------------------------------------------------------------------------
// Frobenius

namespace {

using ICyclo = std::array<long long, 4>;

ICyclo imul(const ICyclo& x, const ICyclo& y) {
    std::array<long long, 5> p{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p[(i + j) % 5] += x[i] * y[j];
    return {p[0] - p[4], p[1] - p[4], p[2] - p[4], p[3] - p[4]};
}

ICyclo iconj(const ICyclo& x) {
    std::array<long long, 5> p{};
    for (int i = 0; i < 4; ++i) p[(4 * i) % 5] += x[i];
    return {p[0] - p[4], p[1] - p[4], p[2] - p[4], p[3] - p[4]};
}

bool is_root(const std::vector<long>& f, const ICyclo& x) {
    ICyclo acc{0, 0, 0, 0};
    for (long c : f) {
        acc = imul(acc, x);
        acc[0] += c;
    }
    return acc == ICyclo{0, 0, 0, 0};
}

ICyclo to_int(const Cyclo& x) {
    ICyclo r{};
    for (int i = 0; i < 4; ++i) r[i] = x.c[i].get_num().get_si();
    return r;
}

}  // namespace

std::vector<long> quartic_from_real(long q, long s, long t) { return {1, s, t + 2 * q, s * q, q * q}; }

CmReport verify_frobenius_cm(long q, const std::vector<long>& charpoly, const std::optional<Cyclo>& pi) {
    if (charpoly.size() != 5 || charpoly[0] != 1) throw std::invalid_argument("expected a monic quartic");
    CmReport rep;
    rep.q = q;
    rep.charpoly = charpoly;
    rep.ordinary = std::gcd(charpoly[2], q) == 1;
    if (pi) {
        rep.root_given = true;
        rep.root = *pi;
        rep.root_ok = integral(*pi) && is_root(charpoly, to_int(*pi));
    } else {
        // a root pi of a q-Weil polynomial has |psi(pi)|^2 = q at every
        // embedding, so trace_form(pi) = 4q and each coordinate is at most 2 sqrt(q)
        long b = static_cast<long>(std::floor(2 * std::sqrt(static_cast<double>(q)))) + 1;
        ICyclo x{};
        for (x[0] = -b; x[0] <= b && !rep.root_ok; ++x[0])
            for (x[1] = -b; x[1] <= b && !rep.root_ok; ++x[1])
                for (x[2] = -b; x[2] <= b && !rep.root_ok; ++x[2])
                    for (x[3] = -b; x[3] <= b; ++x[3]) {
                        if (qform_int(x) > 4 * q) continue;
                        if (is_root(charpoly, x)) {
                            rep.root = Cyclo(static_cast<long>(x[0]), static_cast<long>(x[1]), static_cast<long>(x[2]),
                                             static_cast<long>(x[3]));
                            rep.root_ok = true;
                            break;
                        }
                    }
    }
    if (rep.root_ok) {
        ICyclo p = to_int(*rep.root), pb = iconj(p);
        std::vector<std::vector<long long>> rows;
        ICyclo pa{1, 0, 0, 0};
        for (int a = 0; a < 4; ++a) {
            ICyclo m = pa;
            for (int bexp = 0; bexp < 4; ++bexp) {
                rows.push_back({m[0], m[1], m[2], m[3]});
                m = imul(m, pb);
            }
            pa = imul(pa, p);
        }
        auto span = detail::integer_span(rows);
        if (span.size() == 4) {
            mpz_class d = 1;
            for (int i = 0; i < 4; ++i) d *= static_cast<long>(span[i][i]);
            rep.index = abs(d);
        }
    }
    return rep;
}

}  // namespace g4::cyclo
