#include <random>

#include "doctest.h"
#include "g4/special_families.hpp"

using namespace g4;

namespace {

// Direct (x, y) enumeration on y^2 = f plus the points at infinity.
int brute_hyperelliptic(const Field& K, const Poly& f) {
    int n = 0;
    for (Elem x = 0; x < K.order(); ++x)
        for (Elem y = 0; y < K.order(); ++y)
            if (K.mul(y, y) == f.eval(x)) ++n;
    if (f.degree() % 2 == 1) return n + 1;
    return n + (K.is_square(f.lead()) ? 2 : 0);
}

}  // namespace

TEST_CASE("order-4 family members are invariant under the automorphism") {
    auto F = Field::make(13);
    for (auto& g : order4_family_basis(F)) {
        // x^10 g(-1/x) = g(x)
        Poly h = Poly(F);
        for (int i = 0; i <= g.degree(); ++i) {
            Elem c = g.coeff(i);
            if (i % 2) c = F->neg(c);
            h = h + Poly::monomial(F, c, 10 - i);
        }
        CHECK(h == g);
    }
}

TEST_CASE("order-4 family search matches brute force over F_5 and F_7") {
    for (std::uint32_t p : {5u, 7u}) {
        auto F = Field::make(p);
        const Field& K = *F;
        auto basis = order4_family_basis(F);
        Elem nu = K.least_nonsquare();
        int best = -1;
        std::vector<Elem> c(5);
        for (Elem c0 : {Elem(0), Elem(1), nu})
            for (c[1] = 0; c[1] < p; ++c[1])
                for (c[2] = 0; c[2] < p; ++c[2])
                    for (c[3] = 0; c[3] < p; ++c[3])
                        for (c[4] = 0; c[4] < p; ++c[4]) {
                            c[0] = c0;
                            if (c0 == 0 && c[1] != 1 && c[1] != nu) continue;
                            Poly f(F);
                            for (int i = 0; i < 5; ++i) f = f + basis[i].scaled(c[i]);
                            if (f.degree() < 9 || !is_squarefree(f)) continue;
                            int n = brute_hyperelliptic(K, f);
                            CHECK(n <= 2 * static_cast<int>(p + 1));
                            best = std::max(best, n);
                        }
        SearchOptions unpruned;
        unpruned.prune = false;
        CHECK(hyperelliptic_order4_search(F).max_points == best);
        CHECK(hyperelliptic_order4_search(F, unpruned).max_points == best);
    }
}

TEST_CASE("degree-5 Kummer shapes all have genus 4") {
    auto F = Field::make(11);
    BaseCurve L = BaseCurve::projective_line(F);
    auto shapes = kummer5_shapes(F);
    CHECK(shapes.size() > 100);
    for (auto& s : shapes) CHECK(cover_genus(L, CurveFunction::polynomial(s.g), 5) == 4);
    CHECK_THROWS(kummer5_shapes(Field::make(13)));
}

TEST_CASE("degree-5 Kummer search over F_11") {
    auto r = kummer5_search(Field::make(11));
    CHECK(r.max_points < 34);
    CHECK(r.max_points <= 11 + 1 + 4 * 6);
}

TEST_CASE("degree-3 Kummer local counts are cube tests") {
    auto F = Field::make(13);
    PowerResidueTable cubes(F, 3);
    auto E = EllipticCurve::short_weierstrass(F, 1, 2);
    BaseCurve C = E.as_base();
    CurveFunction f = CurveFunction::with_y(Poly::from_ints(F, {3, 5}), Poly::constant(F, 1));
    for (auto& P : C.rational_places()) {
        if (P.kind != Place::Kind::Affine) continue;
        auto ld = C.local_data(f, P);
        if (ld.valuation != 0) continue;
        CHECK(local_root_count(*F, 3, ld) == cubes.count(ld.unit));
    }
}

TEST_CASE("degree-3 Kummer searches find the records") {
    auto F79 = Field::make(79);
    auto E79 = EllipticCurve::short_weierstrass(F79, 1, 6);
    auto r79 = kummer3_search(F79, E79.trace());
    CHECK(r79.max_points == 148);
    auto F97 = Field::make(97);
    auto E97 = EllipticCurve::short_weierstrass(F97, 5, 26);
    auto r97 = kummer3_search(F97, E97.trace());
    CHECK(r97.max_points == 174);
    CHECK_THROWS(kummer3_search(Field::make(11), 0));
}

TEST_CASE("equation parser") {
    auto t = parse_bivariate("x y + 2 x^3 - 11 x^2 + 7x + 1");
    CHECK(t.at({1, 1}) == 1);
    CHECK(t.at({3, 0}) == 2);
    CHECK(t.at({2, 0}) == -11);
    CHECK(t.at({1, 0}) == 7);
    CHECK(t.at({0, 0}) == 1);
    auto e = parse_equation("z^3 = y + 37 x + 16");
    CHECK(e.variable == 'z');
    CHECK(e.exponent == 3);
    CHECK(e.rhs.size() == 3);
    auto neg = parse_bivariate("-x^2 - 3*x*x");
    CHECK(neg.at({2, 0}) == -4);
    CHECK_THROWS(parse_equation("y^2 x^3"));
    CHECK_THROWS(parse_bivariate("x + + 1"));
    CHECK_THROWS(parse_bivariate("x ^"));
}

TEST_CASE("explicit towers") {
    auto F13 = Field::make(13);
    auto T = make_tower(F13, "y^2 = x^3 + 4", "z^2 = x^3 + x^2 - 4 x - 3");
    auto c = superelliptic_count(T.base, T.f, T.m);
    CHECK(c.points == 38);
    CHECK(c.genus == 4);
    CHECK(c.consistent());
    auto F67 = Field::make(67);
    auto S = make_tower(F67, "", "y^6 = x^3 + x - 6");
    auto s = superelliptic_count(S.base, S.f, S.m);
    CHECK(s.points == 129);
    CHECK(s.genus == 4);
    CHECK(s.consistent());
    auto sq = make_tower(F13, "", "y^2 = x^2 + 2x + 1");
    CHECK_THROWS(superelliptic_count(sq.base, sq.f, sq.m));
    CHECK_THROWS(make_tower(F13, "y^3 = x^3 + 1", "z^2 = x"));
}

TEST_CASE("shift invariance of explicit counts") {
    auto F = Field::make(13);
    std::mt19937 rng(3);
    BaseCurve L = BaseCurve::projective_line(F);
    int done = 0;
    while (done < 10) {
        int m = std::vector<int>{2, 3, 4, 6}[rng() % 4];
        Poly f(F, {Elem(rng() % 13), Elem(rng() % 13), Elem(rng() % 13), Elem(rng() % 13), 1});
        CurveFunction cf = CurveFunction::polynomial(f);
        if (!cover_genus(L, cf, m)) continue;
        auto n = count_cover_points_exact(L, cf, m);
        for (Elem a = 0; a < 13; ++a) {
            auto [L2, f2] = shift_to_infinity(L, cf, a);
            CHECK(count_cover_points_exact(L2, f2, m) == n);
        }
        ++done;
    }
}
