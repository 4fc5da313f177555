#include "g4/function_field.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace g4 {

namespace {

struct PrecisionLoss : std::runtime_error {
    PrecisionLoss() : std::runtime_error("series precision exhausted") {}
};

Series exact_series(int val, std::vector<Elem> head, int prec) {
    head.resize(std::max<std::size_t>(head.size(), prec), 0);
    return Series{val, std::move(head)};
}

Series add_constant(const Field& F, const Series& s, Elem c) {
    if (s.abs_prec() <= 0) throw PrecisionLoss();
    Series r = s;
    if (r.val > 0) {
        std::vector<Elem> v(r.val, 0);
        v.insert(v.end(), r.c.begin(), r.c.end());
        r.c = std::move(v);
        r.val = 0;
    }
    r.c[-r.val] = F.add(r.c[-r.val], c);
    return r;
}

// Square root of a power series H with constant term y0^2, y0 != 0.
std::vector<Elem> sqrt_series(const Field& F, const std::vector<Elem>& H, Elem y0, int prec) {
    std::vector<Elem> y(prec, 0);
    y[0] = y0;
    Elem inv2y0 = F.inv(F.add(y0, y0));
    for (int k = 1; k < prec; ++k) {
        Elem s = k < static_cast<int>(H.size()) ? H[k] : 0;
        for (int i = 1; i < k; ++i) s = F.sub(s, F.mul(y[i], y[k - i]));
        y[k] = F.mul(s, inv2y0);
    }
    return y;
}

// u(t) with H(u) = t^2, where H(0) = 0 and H'(0) != 0.
Series weierstrass_branch(const Field& F, const Poly& H, int prec) {
    Elem h1 = H.coeff(1);
    if (h1 == 0) throw std::logic_error("branch point is singular");
    Elem inv_h1 = F.inv(h1);
    Series t2 = exact_series(2, {1}, prec);
    Series u = series_scale(F, t2, inv_h1);
    for (int iter = 0; iter < prec; ++iter) {
        Series rhs = t2;
        Series upow = u;
        for (int j = 2; j <= H.degree(); ++j) {
            upow = series_mul(F, upow, u);
            if (H.coeff(j) != 0) rhs = series_add(F, rhs, series_scale(F, upow, F.neg(H.coeff(j))));
        }
        Series next = series_scale(F, rhs, inv_h1);
        next.c.resize(std::min<std::size_t>(next.c.size(), prec));
        if (next.val == u.val && next.c == u.c) break;
        u = std::move(next);
    }
    return u;
}

std::vector<std::pair<Poly, std::vector<int>>> refine(const Poly& r, const std::vector<Poly>& fs) {
    std::vector<std::pair<Poly, std::vector<int>>> pieces{{r, {}}};
    for (const auto& f : fs) {
        std::vector<std::pair<Poly, std::vector<int>>> next;
        for (auto& [piece, mults] : pieces) {
            for (auto& [part, k] : split_by_multiplicity(piece, f)) {
                auto m = mults;
                m.push_back(k);
                next.emplace_back(part, std::move(m));
            }
        }
        pieces = std::move(next);
    }
    return pieces;
}

}  // namespace

bool Series::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](Elem e) { return e == 0; });
}

bool Series::normalize() {
    std::size_t i = 0;
    while (i < c.size() && c[i] == 0) ++i;
    if (i == c.size()) {
        val += static_cast<int>(i);
        c.clear();
        return false;
    }
    c.erase(c.begin(), c.begin() + static_cast<long>(i));
    val += static_cast<int>(i);
    return true;
}

Elem Series::coeff_at(int exponent) const {
    if (exponent < val) return 0;
    int i = exponent - val;
    if (i >= static_cast<int>(c.size())) throw PrecisionLoss();
    return c[i];
}

Series series_add(const Field& F, const Series& a, const Series& b) {
    int val = std::min(a.val, b.val);
    int ap = std::min(a.abs_prec(), b.abs_prec());
    Series r{val, std::vector<Elem>(std::max(0, ap - val), 0)};
    for (int i = 0; i < static_cast<int>(r.c.size()); ++i) r.c[i] = F.add(a.coeff_at(val + i), b.coeff_at(val + i));
    return r;
}

Series series_mul(const Field& F, const Series& a, const Series& b) {
    std::size_t n = std::min(a.c.size(), b.c.size());
    Series r{a.val + b.val, std::vector<Elem>(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return r;
}

Series series_scale(const Field& F, const Series& a, Elem s) {
    Series r = a;
    for (auto& x : r.c) x = F.mul(x, s);
    return r;
}

Series series_inverse(const Field& F, Series a) {
    if (!a.normalize()) throw PrecisionLoss();
    std::size_t n = a.c.size();
    std::vector<Elem> b(n, 0);
    Elem b0 = F.inv(a.c[0]);
    b[0] = b0;
    for (std::size_t k = 1; k < n; ++k) {
        Elem s = 0;
        for (std::size_t i = 1; i <= k; ++i) s = F.add(s, F.mul(a.c[i], b[k - i]));
        b[k] = F.neg(F.mul(b0, s));
    }
    return Series{-a.val, std::move(b)};
}

Series series_poly(const Field& F, const Poly& p, const Series& x) {
    int prec = static_cast<int>(x.c.size());
    if (p.degree() <= 0) return exact_series(0, {p.coeff(0)}, std::max(prec, 1));
    Series r = series_scale(F, x, p.lead());
    for (int i = p.degree() - 1; i >= 0; --i) {
        r = add_constant(F, r, p.coeff(i));
        if (i > 0) r = series_mul(F, r, x);
    }
    return r;
}

bool Place::operator<(const Place& o) const {
    if (kind != o.kind) return kind == Kind::Affine;
    if (x != o.x) return x < o.x;
    return y < o.y;
}

CurveFunction CurveFunction::polynomial(Poly a) {
    FieldPtr F = a.field();
    return CurveFunction(std::move(a), Poly(F), Poly::constant(F, 1));
}

CurveFunction CurveFunction::with_y(Poly a, Poly b) {
    FieldPtr F = a.field() ? a.field() : b.field();
    return CurveFunction(std::move(a), std::move(b), Poly::constant(F, 1));
}

std::string CurveFunction::to_string() const {
    std::string s;
    if (!A.is_zero()) s = A.to_string();
    if (!B.is_zero()) {
        if (!s.empty()) s += " + ";
        s += B.degree() == 0 && B.lead() == 1 ? "y" : "(" + B.to_string() + ")*y";
    }
    if (s.empty()) s = "0";
    if (D.degree() > 0 || D.lead() != 1) s = "(" + s + ")/(" + D.to_string() + ")";
    return s;
}

BaseCurve BaseCurve::projective_line(FieldPtr field) {
    BaseCurve C;
    C.field_ = std::move(field);
    C.genus_ = 0;
    return C;
}

BaseCurve BaseCurve::hyperelliptic(Poly h) {
    if (h.F().characteristic() == 2) throw std::invalid_argument("characteristic 2 models are not supported");
    if (h.degree() < 3) throw std::invalid_argument("model degree must be at least 3");
    if (!is_squarefree(h)) throw std::invalid_argument("model polynomial is not separable");
    BaseCurve C;
    C.field_ = h.field();
    C.genus_ = (h.degree() - 1) / 2;
    C.h_ = std::move(h);
    return C;
}

std::vector<Place> BaseCurve::infinite_places() const {
    std::vector<Place> out;
    if (is_line() || odd_degree()) {
        out.push_back(Place{Place::Kind::Infinity, 0, 0});
        return out;
    }
    Elem c = h_->lead();
    if (F().is_square(c)) {
        Elem s = F().sqrt(c), t = F().neg(s);
        out.push_back(Place{Place::Kind::Infinity, 0, std::min(s, t)});
        out.push_back(Place{Place::Kind::Infinity, 0, std::max(s, t)});
    }
    return out;
}

std::vector<Place> BaseCurve::rational_places() const {
    std::vector<Place> out;
    for (Elem x = 0; x < F().order(); ++x) {
        if (is_line()) {
            out.push_back(Place{Place::Kind::Affine, x, 0});
            continue;
        }
        Elem v = h_->eval(x);
        if (v == 0) {
            out.push_back(Place{Place::Kind::Affine, x, 0});
        } else if (F().is_square(v)) {
            Elem s = F().sqrt(v), t = F().neg(s);
            out.push_back(Place{Place::Kind::Affine, x, std::min(s, t)});
            out.push_back(Place{Place::Kind::Affine, x, std::max(s, t)});
        }
    }
    for (auto& P : infinite_places()) out.push_back(P);
    return out;
}

bool BaseCurve::on_curve(const Place& P) const {
    if (is_line()) return true;
    if (P.kind == Place::Kind::Affine) return F().mul(P.y, P.y) == h_->eval(P.x);
    if (odd_degree()) return P.y == 0;
    return F().mul(P.y, P.y) == h_->lead() && P.y != 0;
}

std::size_t BaseCurve::count_points() const { return rational_places().size(); }

std::pair<Series, Series> BaseCurve::parametrization(const Place& P, int prec) const {
    const Field& K = F();
    if (P.kind == Place::Kind::Affine) {
        if (is_line()) return {exact_series(0, {P.x, 1}, prec), Series{}};
        if (P.y != 0) {
            Series x = exact_series(0, {P.x, 1}, prec);
            Poly H = h_->compose(Poly(field_, {P.x, 1}));
            return {x, Series{0, sqrt_series(K, H.coeffs(), P.y, prec)}};
        }
        Poly H = h_->compose(Poly(field_, {P.x, 1}));
        Series u = weierstrass_branch(K, H, prec);
        return {add_constant(K, u, P.x), exact_series(1, {1}, prec)};
    }
    if (is_line()) return {exact_series(-1, {1}, prec), Series{}};
    int g = genus_;
    int n = 2 * g + 2;
    std::vector<Elem> rev(n + 1, 0);
    for (int i = 0; i <= n; ++i) rev[i] = h_->coeff(n - i);
    Poly Hrev(field_, rev);
    if (odd_degree()) {
        Series u = weierstrass_branch(K, Hrev, prec + 2 * g + 2);
        Series x = series_inverse(K, u);
        Series t = exact_series(1, {1}, prec + 2 * g + 2);
        Series upow = u;
        for (int i = 1; i <= g; ++i) upow = series_mul(K, upow, u);
        Series y = series_mul(K, t, series_inverse(K, upow));
        x.c.resize(std::min<std::size_t>(x.c.size(), prec));
        y.c.resize(std::min<std::size_t>(y.c.size(), prec));
        return {x, y};
    }
    Series w{0, sqrt_series(K, Hrev.coeffs(), P.y, prec)};
    w.val = -(g + 1);
    return {exact_series(-1, {1}, prec), w};
}

BaseCurve BaseCurve::base_change(const Embedding& e) const {
    if (is_line()) return projective_line(e.big);
    return hyperelliptic(h_->mapped(e.big, e.image));
}

Series BaseCurve::expand(const CurveFunction& f, const Place& P, int min_abs_prec) const {
    if (f.is_zero()) throw std::domain_error("expansion of the zero function");
    const Field& K = F();
    for (int prec = 24; prec <= 2048; prec *= 2) {
        try {
            auto [x, y] = parametrization(P, prec);
            Series num = series_poly(K, f.A, x);
            if (!f.B.is_zero()) num = series_add(K, num, series_mul(K, y, series_poly(K, f.B, x)));
            Series den = series_poly(K, f.D, x);
            Series s = series_mul(K, num, series_inverse(K, den));
            if (!s.normalize()) continue;
            if (s.abs_prec() < min_abs_prec) continue;
            return s;
        } catch (const PrecisionLoss&) {
            continue;
        }
    }
    throw std::runtime_error("local expansion did not converge");
}

LocalData BaseCurve::local_data(const CurveFunction& f, const Place& P) const {
    if (P.kind == Place::Kind::Affine) {
        Elem d = f.D.eval(P.x);
        if (d != 0) {
            Elem v = f.A.eval(P.x);
            if (!f.B.is_zero()) v = F().add(v, F().mul(P.y, f.B.eval(P.x)));
            if (v != 0) return LocalData{0, F().div(v, d)};
        }
    }
    Series s = expand(f, P);
    return LocalData{s.val, s.c[0]};
}

std::vector<ProfileEntry> BaseCurve::divisor_profile(const CurveFunction& f) const {
    if (f.is_zero()) throw std::domain_error("divisor of the zero function");
    FieldPtr K = field_;
    std::map<int, int> acc;
    auto note = [&](int v, int count) {
        if (v != 0 && count != 0) acc[v] += count;
    };
    Poly one = Poly::constant(K, 1);

    if (is_line() || f.B.is_zero()) {
        if (!is_line() && f.A.is_zero()) throw std::domain_error("zero function");
        Poly r = radical(f.A * f.D * (is_line() ? one : *h_));
        std::vector<Poly> fs{f.A, f.D};
        if (!is_line()) fs.push_back(*h_);
        for (auto& [piece, m] : refine(r, fs)) {
            int v = m[0] - m[1];
            if (is_line()) {
                note(v, piece.degree());
            } else if (m[2] > 0) {
                note(2 * v, piece.degree());
            } else {
                note(v, 2 * piece.degree());
            }
        }
        int dinf = f.D.degree() - f.A.degree();
        if (is_line()) {
            note(dinf, 1);
        } else if (odd_degree()) {
            note(2 * dinf, 1);
        } else {
            note(dinf, 2);
        }
    } else {
        Poly G = f.A.is_zero() ? f.B.monic() : gcd(f.A, f.B);
        Poly A1 = f.A / G, B1 = f.B / G;
        Poly N1 = A1 * A1 - (*h_) * B1 * B1;
        Poly r = radical(G * N1 * f.D * (*h_));
        for (auto& [piece, m] : refine(r, {G, N1, f.D, *h_})) {
            int nu = m[0], mu = m[1], nd = m[2];
            if (m[3] > 0) {
                note(2 * nu + mu - 2 * nd, piece.degree());
            } else {
                note(nu + mu - nd, piece.degree());
                note(nu - nd, piece.degree());
            }
        }
        int g = genus_;
        int dA = f.A.is_zero() ? -1 : f.A.degree();
        int dB = f.B.degree();
        int dD = f.D.degree();
        if (odd_degree()) {
            int vA = f.A.is_zero() ? 1 << 20 : -2 * dA;
            int vB = -(2 * g + 1) - 2 * dB;
            note(std::min(vA, vB) + 2 * dD, 1);
        } else {
            int vA = f.A.is_zero() ? 1 << 20 : -dA;
            int vB = -(g + 1) - dB;
            if (vA != vB) {
                note(std::min(vA, vB) + dD, 2);
            } else {
                Elem la = f.A.lead(), lb = f.B.lead();
                bool cancels = F().mul(la, la) == F().mul(h_->lead(), F().mul(lb, lb));
                if (!cancels) {
                    note(vA + dD, 2);
                } else {
                    Poly N = f.A * f.A - (*h_) * f.B * f.B;
                    note(vA + dD, 1);
                    note(-N.degree() - vA + dD, 1);
                }
            }
        }
    }
    std::vector<ProfileEntry> out;
    long long total = 0;
    for (auto& [v, c] : acc) {
        out.push_back(ProfileEntry{v, c});
        total += static_cast<long long>(v) * c;
    }
    if (total != 0) throw std::logic_error("divisor profile has nonzero degree");
    return out;
}

std::optional<int> cover_genus(const BaseCurve& C, const CurveFunction& f, int m) {
    auto profile = C.divisor_profile(f);
    int g = m;
    int ram = 0;
    for (auto& e : profile) {
        int a = std::abs(e.valuation);
        g = std::gcd(g, a);
        ram += e.count * (m - std::gcd(m, a));
    }
    if (g != 1) return std::nullopt;
    int twice = m * (2 * C.genus() - 2) + ram;
    if (twice % 2) throw std::logic_error("odd Riemann-Hurwitz total");
    return twice / 2 + 1;
}

std::uint32_t local_root_count(const Field& F, int m, const LocalData& ld) {
    int d = std::gcd(m, std::abs(ld.valuation));
    if (d == 0) d = m;
    std::uint32_t g = std::gcd(static_cast<std::uint32_t>(d), F.order() - 1);
    return F.is_power(ld.unit, g) ? g : 0;
}

std::size_t count_cover_points_exact(const BaseCurve& C, const CurveFunction& f, int m) {
    if (f.is_zero()) throw std::domain_error("cover of the zero function");
    std::size_t total = 0;
    for (const auto& P : C.rational_places()) total += local_root_count(C.F(), m, C.local_data(f, P));
    return total;
}

std::pair<BaseCurve, CurveFunction> shift_to_infinity(const BaseCurve& C, const CurveFunction& f, Elem a) {
    FieldPtr K = C.field();
    auto inv = [&](const Poly& p) { return p.is_zero() ? p : p.invert_at(a, p.degree()); };
    Poly At = inv(f.A), Bt = inv(f.B), Dt = inv(f.D);
    int dA = f.A.is_zero() ? 0 : f.A.degree();
    int dB = f.B.is_zero() ? 0 : f.B.degree();
    int dD = f.D.degree();
    int g1 = C.is_line() ? 0 : C.genus() + 1;
    int E = f.B.is_zero() ? dA : std::max(f.A.is_zero() ? 0 : dA, dB + g1);
    Poly A2 = At.shifted(E - dA);
    Poly B2 = f.B.is_zero() ? Poly(K) : Bt.shifted(E - dB - g1);
    Poly D2 = Dt;
    int e = E - dD;
    if (e > 0) {
        D2 = D2.shifted(e);
    } else if (e < 0) {
        A2 = A2.shifted(-e);
        B2 = B2.shifted(-e);
    }
    CurveFunction f2(A2, B2, D2);
    if (C.is_line()) return {BaseCurve::projective_line(K), f2};
    Poly h2 = C.h().invert_at(a, 2 * C.genus() + 2);
    return {BaseCurve::hyperelliptic(h2), f2};
}

}  // namespace g4
