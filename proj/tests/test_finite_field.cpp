#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "g4/finite_field.hpp"

using namespace g4;

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> prime_powers_below(std::uint32_t bound) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t p = 2; p < bound; ++p) {
        if (!is_prime(p)) continue;
        std::uint32_t q = p;
        for (std::uint32_t k = 1; q < bound; ++k, q *= p) out.emplace_back(p, k);
    }
    return out;
}

// Product of two elements as polynomials modulo the field's modulus, done
// independently of the log tables.
Elem schoolbook_mul(const Field& F, Elem a, Elem b) {
    std::uint32_t p = F.characteristic(), k = F.degree();
    auto da = F.digits(a), db = F.digits(b);
    std::vector<std::uint32_t> prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    const auto& m = F.modulus();
    for (std::uint32_t d = 2 * k - 1; d >= k; --d) {
        std::uint32_t c = prod[d];
        prod[d] = 0;
        for (std::uint32_t i = 0; i < k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
    }
    prod.resize(k);
    return F.from_digits(prod);
}

}  // namespace

TEST_CASE("make_field rejects bad input") {
    CHECK_THROWS(Field::make(2, 0));
    CHECK_THROWS(Field::make(4, 1));
    CHECK_THROWS(Field::make(1, 1));
}

TEST_CASE("prime field uses the trivial modulus") {
    auto F = Field::make(13);
    CHECK(F->order() == 13);
    CHECK(F->modulus() == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("F_49 modulus is the least irreducible quadratic") {
    auto F = Field::make(7, 2);
    // brute force: first x^2 + c1 x + c0 (index c0 + 7 c1) without roots mod 7
    std::vector<std::uint32_t> expected;
    for (std::uint32_t idx = 0; idx < 49 && expected.empty(); ++idx) {
        std::uint32_t c0 = idx % 7, c1 = idx / 7;
        bool root = false;
        for (std::uint32_t x = 0; x < 7; ++x) root = root || (x * x + c1 * x + c0) % 7 == 0;
        if (!root) expected = {c0, c1, 1};
    }
    CHECK(F->modulus() == expected);
}

TEST_CASE("field axioms on random triples for every q < 100") {
    std::mt19937 rng(12345);
    for (auto [p, k] : prime_powers_below(100)) {
        auto F = Field::make(p, k);
        std::uniform_int_distribution<Elem> pick(0, F->order() - 1);
        for (int i = 0; i < 1000; ++i) {
            Elem a = pick(rng), b = pick(rng), c = pick(rng);
            CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
            CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->add(a, F->neg(a)) == 0);
            CHECK(F->mul(a, b) == schoolbook_mul(*F, a, b));
            if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
        }
    }
}

TEST_CASE("residue tables sum to q") {
    for (auto [p, k] : prime_powers_below(100)) {
        auto F = Field::make(p, k);
        for (std::uint32_t m : {2u, 3u, 5u, 6u}) {
            PowerResidueTable t(F, m);
            std::uint32_t total = 0;
            std::uint32_t g = std::gcd(m, F->order() - 1);
            for (Elem v = 0; v < F->order(); ++v) {
                total += t.count(v);
                if (v != 0) CHECK((t.count(v) == 0 || t.count(v) == g));
            }
            CHECK(t.count(0) == 1);
            CHECK(total == F->order());
        }
    }
}

TEST_CASE("residue table examples") {
    auto F13 = Field::make(13);
    PowerResidueTable sq(F13, 2);
    CHECK(sq.count(4) == 2);
    CHECK(sq.count(0) == 1);
    int twos = 0;
    for (Elem v = 0; v < 13; ++v) twos += sq.count(v) == 2;
    CHECK(twos == 6);
    auto F11 = Field::make(11);
    PowerResidueTable fifth(F11, 5);
    for (Elem v = 1; v < 11; ++v) CHECK((fifth.count(v) == 0 || fifth.count(v) == 5));
}

TEST_CASE("frobenius orbits") {
    auto F13 = Field::make(13);
    for (Elem x = 0; x < 13; ++x) CHECK(F13->frobenius_orbit(x).size() == 1);
    auto F49 = Field::make(7, 2);
    Elem g = F49->generator();
    auto orbit = F49->frobenius_orbit(g);
    CHECK(orbit.size() == 2);
    CHECK(orbit[1] == F49->pow(g, 7));
    CHECK(F49->frobenius_orbit(0).size() == 1);
    for (auto [p, k] : prime_powers_below(100)) {
        auto F = Field::make(p, k);
        for (Elem x = 0; x < F->order(); ++x) {
            auto o = F->frobenius_orbit(x);
            CHECK(k % o.size() == 0);
            if (x < p) CHECK(o.size() == 1);
        }
    }
}

TEST_CASE("square roots and nonsquares") {
    auto F = Field::make(3, 4);
    Elem nu = F->least_nonsquare();
    CHECK_FALSE(F->is_square(nu));
    for (Elem a = 1; a < nu; ++a) CHECK(F->is_square(a));
    for (Elem a = 0; a < F->order(); ++a)
        if (F->is_square(a)) CHECK(F->mul(F->sqrt(a), F->sqrt(a)) == a);
    CHECK_THROWS(F->sqrt(nu));
}

TEST_CASE("embedding of F_q into F_{q^2}") {
    auto small = Field::make(3, 2);
    auto big = Field::make(3, 4);
    auto e = make_embedding(small, big);
    for (Elem a = 0; a < small->order(); ++a)
        for (Elem b = 0; b < small->order(); ++b) {
            CHECK(e(small->add(a, b)) == big->add(e(a), e(b)));
            CHECK(e(small->mul(a, b)) == big->mul(e(a), e(b)));
        }
    std::set<Elem> image(e.image.begin(), e.image.end());
    CHECK(image.size() == small->order());
}
