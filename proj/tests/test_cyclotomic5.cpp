#include <doctest.h>

#include <random>

#include "g4/cyclotomic5.hpp"

using namespace g4::cyclo;

namespace {

Cyclo random_element(std::mt19937& rng, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    return Cyclo(d(rng), d(rng), d(rng), d(rng));
}

// invertible matrix over Z[zeta_5] as a product of elementary pieces
Mat2 random_invertible(std::mt19937& rng) {
    Mat2 C = identity2();
    std::uniform_int_distribution<int> kind(0, 3), e(-2, 2), k(0, 4);
    int steps = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < steps; ++s) {
        Mat2 T = identity2();
        switch (kind(rng)) {
            case 0:
                T[0][1] = random_element(rng, 2);
                break;
            case 1:
                T[1][0] = random_element(rng, 2);
                break;
            case 2:
                T[0][0] = power(varphi(), e(rng)) * power(zeta(), k(rng));
                break;
            default:
                T[0][0] = T[1][1] = Cyclo(0);
                T[0][1] = T[1][0] = Cyclo(1);
        }
        C = mat_mul(C, T);
    }
    return C;
}

}  // namespace

TEST_CASE("arithmetic") {
    std::mt19937 rng(5);
    Cyclo z = zeta();
    CHECK(power(z, 5) == Cyclo(1));
    CHECK(z * conj(z) == Cyclo(1));
    for (int i = 0; i < 200; ++i) {
        Cyclo x = random_element(rng, 6), y = random_element(rng, 6);
        CHECK(norm(x * y) == norm(x) * norm(y));
        CHECK(conj(x * y) == conj(x) * conj(y));
        CHECK(trace(x + y) == trace(x) + trace(y));
        if (!x.is_zero()) CHECK(x * inverse(x) == Cyclo(1));
        Cyclo r = x * conj(x);
        REQUIRE(is_real(r));
        CHECK(norm(x) == real_norm(r));
        // trace_form = 2 ||psi_1|| + 2 ||psi_2||
        Sqrt5 s1 = abs2(1, x), s2 = abs2(2, x);
        CHECK(trace_form(x) == 2 * (s1.a + s2.a));
        CHECK(sign(s1) >= 0);
        CHECK(sign(s2) >= 0);
    }
    CHECK(trace_form(Cyclo(0)) == 0);
    CHECK(trace_form(Cyclo(1)) == 4);
    CHECK(trace_form(z - Cyclo(1)) == 10);
    // the fundamental unit: trace 1 in the real subfield, psi_1 = (1 + sqrt 5)/2
    Sqrt5 p = psi(1, varphi());
    CHECK(p.a == mpq_class(1, 2));
    CHECK(p.b == mpq_class(1, 2));
    CHECK(real_norm(varphi()) == -1);
    CHECK(totally_positive(varphi() * varphi()));
    CHECK_FALSE(totally_positive(varphi()));
    CHECK_THROWS(psi(1, z));
    CHECK(sign(Sqrt5{-2, 1}) == 1);
    CHECK(sign(Sqrt5{3, -1}) == 1);
    CHECK(sign(Sqrt5{-3, 1}) == -1);
}

TEST_CASE("euclidean division") {
    Cyclo z = zeta();
    auto a = euclid_divide(z + Cyclo(3), z + Cyclo(3));
    CHECK(a.quotient == Cyclo(1));
    CHECK(a.remainder.is_zero());
    Cyclo n(4, -7, 2, 9);
    auto b = euclid_divide(n, Cyclo(1));
    CHECK(b.quotient == n);
    CHECK(b.remainder.is_zero());
    CHECK_THROWS(euclid_divide(n, Cyclo(0)));

    std::mt19937 rng(11);
    int widened = 0;
    for (int i = 0; i < 1000; ++i) {
        Cyclo x = random_element(rng, 20), d = random_element(rng, 20);
        if (d.is_zero()) continue;
        auto r = euclid_divide(x, d);
        CHECK(x == r.quotient * d + r.remainder);
        CHECK(integral(r.quotient));
        CHECK(4 * norm(r.remainder) <= norm(d));
        CHECK(sign(abs2(1, r.remainder) - abs2(1, d)) <= 0);
        CHECK(sign(abs2(2, r.remainder) - abs2(2, d)) <= 0);
        widened += r.widened;
    }
    CHECK(widened == 0);
}

TEST_CASE("covering radius") {
    CHECK(distance_to_lattice(Cyclo(0)) == 0);
    CHECK(distance_to_lattice(Cyclo(3, -1, 2, 0)) == 0);
    auto rep = covering_radius_check({2});
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].cosets == 16);
    CHECK(rep.rows[0].within_two == 16);
    auto all = covering_radius_check({2, 3, 4, 5});
    CHECK(all.ok());
    CHECK(all.max_distance <= 2);
    // distances agree with a plain search over a larger box
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        Cyclo x(mpq_class(static_cast<long>(rng() % 7), 7), mpq_class(static_cast<long>(rng() % 7), 7),
                mpq_class(static_cast<long>(rng() % 7), 7), mpq_class(static_cast<long>(rng() % 7), 7));
        for (auto& e : x.c) e.canonicalize();
        mpq_class best = trace_form(x);
        for (int a = -3; a <= 3; ++a)
            for (int b = -3; b <= 3; ++b)
                for (int c = -3; c <= 3; ++c)
                    for (int d = -3; d <= 3; ++d) best = std::min(best, trace_form(x - Cyclo(a, b, c, d)));
        CHECK(distance_to_lattice(x) == best);
    }
}

TEST_CASE("unimodular reduction") {
    Hermitian2x2 I{Cyclo(1), Cyclo(0), Cyclo(1)};
    auto r0 = reduce_unimodular(I);
    CHECK(r0.C == identity2());

    std::mt19937 rng(17);
    int exchanges = 0;
    for (int t = 0; t < 500; ++t) {
        Mat2 C0 = random_invertible(rng);
        Mat2 Pm = mat_mul(conj_transpose(C0), C0);
        auto P = Hermitian2x2::from_matrix(Pm);
        auto R = reduce_unimodular(P);
        CHECK(mat_mul(conj_transpose(R.C), R.C) == Pm);
        CHECK(norm(det(R.C)) == 1);
        REQUIRE(!R.steps.empty());
        CHECK(R.steps.back().kind == "final");
        CHECK(R.steps.back().after.matrix() == identity2());
        for (auto& s : R.steps) {
            CHECK(norm(det(s.transform)) == 1);
            if (s.kind == "exchange") {
                ++exchanges;
                CHECK(s.norm_ratio < 1);
                CHECK(s.epsilon <= mpq_class(1, 4));
                CHECK(s.b1.has_value());
            }
        }
    }
    CHECK(exchanges > 50);

    // determinant varphi^2: the normalization step fires
    Mat2 D = identity2();
    D[0][0] = varphi();
    Mat2 S = identity2();
    S[0][1] = zeta() + Cyclo(2);
    Mat2 C0 = mat_mul(D, S);
    Mat2 Pm = mat_mul(conj_transpose(C0), C0);
    auto R = reduce_unimodular(Hermitian2x2::from_matrix(Pm));
    CHECK(R.steps.front().kind == "determinant");
    CHECK(mat_mul(conj_transpose(R.C), R.C) == Pm);

    CHECK_THROWS_AS(reduce_unimodular({Cyclo(2), Cyclo(0), Cyclo(1)}), std::invalid_argument);   // det 2
    CHECK_THROWS_AS(reduce_unimodular({Cyclo(-1), Cyclo(0), Cyclo(-1)}), std::invalid_argument); // negative
    CHECK_THROWS_AS(reduce_unimodular({zeta(), Cyclo(0), Cyclo(1)}), std::invalid_argument);     // not real
}

TEST_CASE("frobenius") {
    Cyclo z = zeta();
    Cyclo pi = z * z + Cyclo(2) * z - Cyclo(2);
    auto r11 = verify_frobenius_cm(11, {1, 11, 51, 121, 121}, pi);
    CHECK(r11.root_ok);
    CHECK(r11.index == 1);
    CHECK(r11.ordinary);
    CHECK(r11.ok());
    CHECK(pi * conj(pi) == Cyclo(11));

    CHECK(quartic_from_real(11, 11, 29) == std::vector<long>{1, 11, 51, 121, 121});
    auto r61 = verify_frobenius_cm(61, quartic_from_real(61, 29, 209));
    CHECK(r61.ok());
    REQUIRE(r61.root);
    CHECK(*r61.root * conj(*r61.root) == Cyclo(61));

    auto bad = verify_frobenius_cm(11, {1, 0, 0, 0, 1});
    CHECK_FALSE(bad.root_ok);
    CHECK_FALSE(bad.ok());
    // 2z and its conjugate generate a proper suborder
    auto sub = verify_frobenius_cm(4, {1, 2, 4, 8, 16}, Cyclo(2) * z);
    CHECK(sub.root_ok);
    CHECK(sub.index > 1);
    CHECK_FALSE(sub.ok());
}
