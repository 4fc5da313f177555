#include "doctest.h"
#include "g4/poly.hpp"

using namespace g4;

TEST_CASE("division with remainder") {
    auto F = Field::make(13);
    Poly a = Poly::from_ints(F, {5, 0, 3, 1, 7});
    Poly b = Poly::from_ints(F, {1, 2, 1});
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
}

TEST_CASE("gcd and squarefree parts") {
    auto F = Field::make(7);
    Poly x = Poly::x(F);
    Poly one = Poly::constant(F, 1);
    Poly f = (x - one) * (x - one) * (x + one);
    CHECK_FALSE(is_squarefree(f));
    CHECK(radical(f) == ((x - one) * (x + one)).monic());
    auto parts = split_by_multiplicity(radical(f), f);
    int total = 0;
    for (auto& [p, k] : parts) total += p.degree() * k;
    CHECK(total == 3);
}

TEST_CASE("squarefree decomposition in characteristic p") {
    auto F = Field::make(5);
    Poly x = Poly::x(F);
    Poly one = Poly::constant(F, 1);
    // (x^5 - x - 1)^5 (x + 2)^2 has a p-th power factor
    Poly a = (x.pow(5) - x - one);
    Poly f = a.pow(5) * (x + Poly::constant(F, 2)).pow(2);
    auto parts = squarefree_decomposition(f);
    int degree = 0;
    for (auto& [p, e] : parts) {
        CHECK(is_squarefree(p));
        degree += p.degree() * e;
    }
    CHECK(degree == f.degree());
    CHECK(radical(f) == (a * (x + Poly::constant(F, 2))).monic());
    auto mults = split_by_multiplicity(radical(f), f);
    for (auto& [p, k] : mults) CHECK(((p.degree() == 5 && k == 5) || (p.degree() == 1 && k == 2)));
}

TEST_CASE("irreducibility") {
    auto F = Field::make(5);
    CHECK(is_irreducible(Poly::from_ints(F, {2, 0, 1})));
    CHECK_FALSE(is_irreducible(Poly::from_ints(F, {1, 0, 1})));
    CHECK(is_irreducible(Poly::from_ints(F, {-1, -1, 0, 0, 0, 1})));  // x^5 - x - 1
    // number of monic irreducible quadratics over F_q is (q^2 - q)/2
    CHECK(monic_irreducibles(F, 2).size() == 10);
    CHECK(monic_irreducibles(F, 3).size() == 40);
}

TEST_CASE("inversion at a point") {
    auto F = Field::make(11);
    Poly f = Poly::from_ints(F, {3, 1, 0, 1});
    Poly g = f.invert_at(2, 4);
    // g(x') = x'^4 f(2 + 1/x')
    for (Elem t = 1; t < 11; ++t) {
        Elem x = F->add(2, F->inv(t));
        CHECK(g.eval(t) == F->mul(F->pow(t, 4), f.eval(x)));
    }
}
