#include "g4/special_families.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace g4 {

namespace {

std::vector<Elem> all_elements(const Field& K) {
    std::vector<Elem> v(K.order());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// hyperelliptic curves with an automorphism of order 4

std::vector<Poly> order4_family_basis(const FieldPtr& F) {
    auto P = [&](std::initializer_list<long long> c) { return Poly::from_ints(F, c); };
    return {
        P({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}),
        P({0, -1, 0, 0, 0, 0, 0, 0, 0, 1}),
        P({0, 0, 1, 0, 0, 0, 0, 0, 1}),
        P({0, 0, 0, -1, 0, 0, 0, 1}),
        P({0, 0, 0, 0, 1, 0, 1}),
    };
}

std::vector<SearchJob> hyperelliptic_order4_jobs(const FieldPtr& F) {
    const Field& K = *F;
    if (K.characteristic() == 2) throw std::domain_error("hyperelliptic family needs odd characteristic");
    Elem nu = K.least_nonsquare();
    BaseCurve L = BaseCurve::projective_line(F);
    Place inf = L.infinite_places().at(0);
    std::vector<CurveFunction> basis;
    for (auto& p : order4_family_basis(F)) basis.push_back(CurveFunction::polynomial(p));
    std::vector<SearchJob> jobs;
    // degree 10 (c0 a square class) and degree 9 (c0 = 0, c1 a square class)
    for (int lead = 0; lead < 2; ++lead) {
        auto fam = std::make_shared<LinearFamily>();
        fam->field = F;
        fam->m = 2;
        fam->basis = basis;
        fam->choices.assign(5, all_elements(K));
        if (lead == 1) fam->choices[0] = {0};
        fam->choices[lead] = {1, nu};
        fam->rows = place_rows(L, basis, {{inf, -(10 - lead)}}, 2);
        CandidateCheck check = genus_check(L, *fam, 4);
        auto part = split_family("deg" + std::to_string(10 - lead), fam, check, "P^1", 3);
        jobs.insert(jobs.end(), part.begin(), part.end());
    }
    return jobs;
}

SearchOutcome hyperelliptic_order4_search(const FieldPtr& F, const SearchOptions& opt) {
    return run_jobs(hyperelliptic_order4_jobs(F), opt);
}

// ---------------------------------------------------------------------------
// degree-5 Kummer covers of the line

std::vector<Kummer5Shape> kummer5_shapes(const FieldPtr& F) {
    const Field& K = *F;
    const std::uint32_t q = K.order();
    if (q % 5 != 1) throw std::domain_error("degree-5 Kummer covers need q = 1 mod 5");
    Elem nu = K.least_nonsquare();
    Poly X = Poly::x(F);
    auto lin = [&](Elem a) { return X - Poly::constant(F, a); };
    Poly pair0 = X * X - Poly::constant(F, nu);
    std::vector<Kummer5Shape> out;
    // four rational points 0, 1, infinity, lambda; exponent 1 at 0
    for (Elem lam = 0; lam < q; ++lam) {
        if (lam == 0 || lam == 1) continue;
        for (int a1 = 1; a1 < 5; ++a1)
            for (int al = 1; al < 5; ++al) {
                if ((1 + a1 + al) % 5 == 0) continue;
                out.push_back({X * lin(1).pow(a1) * lin(lam).pow(al),
                               "(1,1,1,1) lambda=" + std::to_string(lam)});
            }
    }
    // two rational points (a and infinity) and a conjugate pair at x^2 = nu
    for (Elem a = 0; a < q; ++a)
        for (int e : {1, 2, 4}) out.push_back({lin(a).pow(e) * pair0, "(1,1,2) a=" + std::to_string(a)});
    // two conjugate pairs
    for (const Poly& g : monic_irreducibles(F, 2))
        if (!(g == pair0)) out.push_back({pair0 * g.pow(4), "(2,2) " + g.to_string()});
    // infinity and a cubic orbit
    for (const Poly& g : monic_irreducibles(F, 3)) out.push_back({g, "(1,3) " + g.to_string()});
    return out;
}

SearchOutcome kummer5_search(const FieldPtr& F) {
    const Field& K = *F;
    const std::uint32_t q = K.order();
    BaseCurve L = BaseCurve::projective_line(F);
    SearchOutcome out;
    for (const Kummer5Shape& shape : kummer5_shapes(F)) {
        const Poly& g = shape.g;
        std::uint32_t zeros = 0;
        std::uint32_t hist[5] = {0, 0, 0, 0, 0};
        for (Elem x = 0; x < q; ++x) {
            Elem v = g.eval(x);
            if (v == 0) ++zeros;
            else ++hist[K.log(v) % 5];
        }
        int deg = g.degree();
        // f = gen^j g
        for (std::uint32_t j = 0; j < 5; ++j) {
            std::uint32_t n = zeros + 5 * hist[(5 - j) % 5];
            if (deg % 5 != 0) {
                n += 1;
            } else {
                n += (K.log(g.lead()) + j) % 5 == 0 ? 5 : 0;
            }
            ++out.examined;
            if (static_cast<int>(n) <= out.max_points) continue;
            CurveFunction f = CurveFunction::polynomial(g.scaled(K.exp(j)));
            auto genus = cover_genus(L, f, 5);
            if (!genus || *genus != 4) {
                ++out.rejected;
                continue;
            }
            std::size_t exact = count_cover_points_exact(L, f, 5);
            if (exact != n) throw std::logic_error("degree-5 fast count disagrees for " + f.to_string());
            out.max_points = static_cast<int>(n);
            out.witness = SearchWitness{"P^1", f.to_string(), shape.label, {}, out.max_points};
        }
    }
    out.jobs = 1;
    return out;
}

// ---------------------------------------------------------------------------
// degree-3 Kummer covers of elliptic curves

std::vector<SearchJob> kummer3_jobs(const EllipticCurve& E, bool all_twists, const std::string& label) {
    const FieldPtr& F = E.field();
    const Field& K = *F;
    require_large_characteristic(K);
    if (K.order() % 3 != 1) throw std::domain_error("degree-3 Kummer covers need q = 1 mod 3");
    BaseCurve C = E.as_base();
    Place inf = C.infinite_places().at(0);
    auto fam = std::make_shared<LinearFamily>();
    fam->field = F;
    fam->m = 3;
    fam->basis = {CurveFunction::with_y(Poly(F), Poly::constant(F, 1)),
                  CurveFunction::polynomial(Poly::x(F)), CurveFunction::polynomial(Poly::constant(F, 1))};
    fam->choices.assign(3, all_elements(K));
    fam->choices[0] = all_twists ? std::vector<Elem>{1, K.exp(1), K.exp(2)} : std::vector<Elem>{1};
    fam->rows = place_rows(C, fam->basis, {{inf, -3}}, 3);
    CandidateCheck check = genus_check(C, *fam, 4);
    return split_family(label, fam, check, "y^2 = " + C.h().to_string(), 2);
}

SearchOutcome kummer3_search(const FieldPtr& F, long trace, bool all_twists, const SearchOptions& opt) {
    std::vector<SearchJob> jobs;
    for (const EllipticCurve& E : enumerate_classes(F, trace).representatives) {
        std::string label = "E[" + std::to_string(E.a4()) + "," + std::to_string(E.a6()) + "]";
        auto part = kummer3_jobs(E, all_twists, label);
        jobs.insert(jobs.end(), part.begin(), part.end());
    }
    return run_jobs(jobs, opt);
}

// ---------------------------------------------------------------------------
// equation parsing

namespace {

struct Scanner {
    const std::string& s;
    std::size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool at_end() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("cannot parse '" + s + "': " + what + " at position " + std::to_string(i));
    }
    long long number() {
        skip();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected a number");
        long long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
        return v;
    }
};

// One product of numbers and powers of x and y.
void parse_term(Scanner& sc, long long sign, BivariateTerms& out) {
    long long coeff = sign;
    int dx = 0, dy = 0;
    bool any = false;
    for (;;) {
        char c = sc.peek();
        if (c == '*') {
            ++sc.i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coeff *= sc.number();
        } else if (c == 'x' || c == 'y') {
            ++sc.i;
            int e = 1;
            if (sc.peek() == '^') {
                ++sc.i;
                e = static_cast<int>(sc.number());
            }
            (c == 'x' ? dx : dy) += e;
        } else {
            break;
        }
        any = true;
    }
    if (!any) sc.fail("empty term");
    out[{dx, dy}] += coeff;
}

}  // namespace

BivariateTerms parse_bivariate(const std::string& text) {
    Scanner sc{text};
    BivariateTerms out;
    long long sign = 1;
    if (sc.peek() == '-') {
        sign = -1;
        ++sc.i;
    } else if (sc.peek() == '+') {
        ++sc.i;
    }
    parse_term(sc, sign, out);
    while (!sc.at_end()) {
        char c = sc.peek();
        if (c != '+' && c != '-') sc.fail("expected + or -");
        ++sc.i;
        parse_term(sc, c == '-' ? -1 : 1, out);
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

Equation parse_equation(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("equation without '=': " + text);
    std::string lhs = text.substr(0, eq);
    Scanner sc{lhs};
    Equation E;
    char v = sc.peek();
    if (!std::isalpha(static_cast<unsigned char>(v))) sc.fail("expected a variable");
    E.variable = v;
    ++sc.i;
    E.exponent = 1;
    if (sc.peek() == '^') {
        ++sc.i;
        E.exponent = static_cast<int>(sc.number());
    }
    if (!sc.at_end()) sc.fail("unexpected text on the left-hand side");
    E.rhs = parse_bivariate(text.substr(eq + 1));
    return E;
}

namespace {

Poly x_part(const FieldPtr& F, const BivariateTerms& t, int dy) {
    std::vector<long long> c;
    for (auto& [k, v] : t) {
        if (k.second != dy) continue;
        if (static_cast<int>(c.size()) <= k.first) c.resize(k.first + 1, 0);
        c[k.first] += v;
    }
    return Poly::from_ints(F, c);
}

}  // namespace

Tower make_tower(const FieldPtr& F, const std::string& base_eq, const std::string& cover_eq) {
    Equation cov = parse_equation(cover_eq);
    int max_dy = 0;
    for (auto& [k, v] : cov.rhs) max_dy = std::max(max_dy, k.second);
    if (base_eq.empty()) {
        if (max_dy > 0) throw std::invalid_argument("cover of the line cannot involve y");
        return Tower{BaseCurve::projective_line(F), CurveFunction::polynomial(x_part(F, cov.rhs, 0)), cov.exponent};
    }
    Equation base = parse_equation(base_eq);
    if (base.variable != 'y' || base.exponent != 2) throw std::invalid_argument("base must be y^2 = h(x)");
    for (auto& [k, v] : base.rhs)
        if (k.second != 0) throw std::invalid_argument("base right-hand side must be a polynomial in x");
    if (max_dy > 1) throw std::invalid_argument("cover must be linear in y");
    BaseCurve C = BaseCurve::hyperelliptic(x_part(F, base.rhs, 0));
    return Tower{C, CurveFunction::with_y(x_part(F, cov.rhs, 0), x_part(F, cov.rhs, 1)), cov.exponent};
}

SuperellipticCount superelliptic_count(const BaseCurve& base, const CurveFunction& f, int m) {
    if (f.is_zero()) throw std::invalid_argument("zero function");
    auto g = cover_genus(base, f, m);
    if (!g) throw std::invalid_argument("z^" + std::to_string(m) + " = " + f.to_string() + " is not irreducible");
    SuperellipticCount out;
    out.genus = *g;
    out.points = count_cover_points_exact(base, f, m);
    // move a fibre where f is a unit to infinity and count again
    const Field& K = base.F();
    Elem shift = 0;
    for (Elem a = 0; a < K.order(); ++a) {
        bool clean = true;
        for (const Place& P : base.rational_places())
            if (P.kind == Place::Kind::Affine && P.x == a) clean = clean && base.local_data(f, P).valuation == 0;
        if (clean && f.D.eval(a) != 0) {
            shift = a;
            break;
        }
    }
    auto [C2, f2] = shift_to_infinity(base, f, shift);
    out.shift = shift;
    out.shifted_points = count_cover_points_exact(C2, f2, m);
    return out;
}

}  // namespace g4
