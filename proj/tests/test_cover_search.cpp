#include <filesystem>
#include <random>

#include "doctest.h"
#include "g4/cover_search.hpp"

using namespace g4;

namespace {

EllipticCurve marked_curve(const FieldPtr& F) {
    auto E = EllipticCurve::short_weierstrass(F, 1, F->from_int(6));
    for (auto& P : E.points())
        if (!P.infinity && P.y != 0) return E.shifted_to(P);
    throw std::logic_error("no point");
}

}  // namespace

TEST_CASE("Riemann-Roch bases have the prescribed poles and zeros") {
    auto F = Field::make(13);
    auto E = marked_curve(F);
    auto C = E.as_base();
    Place Q{Place::Kind::Affine, 0, *E.marked_t()};
    Place inf = C.infinite_places().at(0);
    auto b8 = rr_basis_8(E);
    REQUIRE(b8.size() == 6);
    int expected_pole = 8;
    for (auto& f : b8) {
        CHECK(C.local_data(f, inf).valuation == -expected_pole);
        CHECK(C.local_data(f, Q).valuation >= 2);
        --expected_pole;
        // poles only at infinity
        for (auto& pe : C.divisor_profile(f))
            if (pe.valuation < 0) CHECK(pe.count == 1);
    }
    auto b7 = rr_basis_7(E);
    REQUIRE(b7.size() == 5);
    for (auto& f : b7) CHECK(C.local_data(f, inf).valuation >= -7);
    // independence: evaluation matrix at the affine points has rank 6
    std::vector<std::vector<Elem>> cols;
    for (auto& P : C.rational_places()) {
        if (P.kind != Place::Kind::Affine) continue;
        std::vector<Elem> row;
        for (auto& f : b8) row.push_back(C.local_data(f, P).valuation > 0 ? 0 : C.local_data(f, P).unit);
        cols.push_back(row);
    }
    CHECK(null_space(*F, cols, 6).empty());
    CHECK_THROWS(rr_basis_8(EllipticCurve::short_weierstrass(F, 1, 6)));
}

TEST_CASE("null space") {
    auto F = Field::make(7);
    auto ns = null_space(*F, {{1, 2, 3}, {2, 4, 6}}, 3);
    CHECK(ns.size() == 2);
    for (auto& v : ns) CHECK(F->add(F->add(v[0], F->mul(2, v[1])), F->mul(3, v[2])) == 0);
    CHECK(null_space(*F, {{1, 0}, {0, 1}}, 2).empty());
}

TEST_CASE("fast counts agree with exact counts on valid candidates") {
    for (std::uint32_t p : {5u, 7u, 13u}) {
        auto F = Field::make(p);
        auto jobs = elliptic_cover_jobs(EllipticCurve::short_weierstrass(F, 1, F->from_int(6)), "t");
        REQUIRE(!jobs.empty());
        std::mt19937 rng(p);
        int checked = 0;
        for (int trial = 0; trial < 2000 && checked < 200; ++trial) {
            const SearchJob& J = jobs[rng() % jobs.size()];
            const LinearFamily& fam = *J.family;
            std::vector<Elem> c;
            for (auto& ch : fam.choices) c.push_back(ch[rng() % ch.size()]);
            int fast = family_count(fam, c);
            auto r = J.check(c, fast);  // throws on disagreement
            if (r) {
                CHECK(*r == fast);
                ++checked;
            }
        }
        CHECK(checked == 200);
    }
}

TEST_CASE("twists: f and nu f together count twice the base") {
    auto F = Field::make(11);
    auto E = EllipticCurve::short_weierstrass(F, 1, 6);
    auto C = E.as_base();
    Elem nu = F->least_nonsquare();
    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        Poly A(F, {Elem(rng() % 11), Elem(rng() % 11), Elem(rng() % 11), 1});
        Poly B(F, {Elem(rng() % 11)});
        CurveFunction f = CurveFunction::with_y(A, B);
        CurveFunction g = CurveFunction::with_y(A.scaled(nu), B.scaled(nu));
        CurveFunction h = CurveFunction::with_y(A.scaled(9), B.scaled(9));
        auto n = count_cover_points_exact(C, f, 2);
        CHECK(n + count_cover_points_exact(C, g, 2) == 2 * C.count_points());
        CHECK(n == count_cover_points_exact(C, h, 2));
    }
}

TEST_CASE("pruning does not change the maximum") {
    for (auto [q, t] : {std::pair{7, -4}, std::pair{11, -5}, std::pair{13, -7}}) {
        auto F = Field::make(q);
        SearchOptions on, off;
        off.prune = false;
        auto a = double_covers_given_trace(F, t, on);
        auto b = double_covers_given_trace(F, t, off);
        CHECK(a.max_points == b.max_points);
        REQUIRE(a.witness);
        REQUIRE(b.witness);
        CHECK(a.witness->coeffs == b.witness->coeffs);
        CHECK(a.witness->label == b.witness->label);
        CHECK(b.pruned == 0);
    }
}

TEST_CASE("trace searches") {
    auto F13 = Field::make(13);
    auto r = double_covers_given_trace(F13, -7);
    CHECK(r.max_points == 38);
    auto F17 = Field::make(17);
    CHECK(double_covers_given_trace(F17, -8).max_points < 48);
    CHECK(double_covers_given_trace(F17, -7).max_points == 46);
    CHECK_THROWS(double_covers_given_trace(F13, 8));
}

TEST_CASE("witness reproduces the maximum") {
    auto F = Field::make(13);
    auto E = EllipticCurve::short_weierstrass(F, 0, 4);
    auto jobs = elliptic_cover_jobs(E, "x");
    auto r = run_jobs(jobs, {});
    REQUIRE(r.witness);
    for (auto& J : jobs)
        if (J.label == r.witness->label) {
            CurveFunction f = J.family->combine(r.witness->coeffs);
            CHECK(family_count(*J.family, r.witness->coeffs) == r.max_points);
            CHECK(J.check(r.witness->coeffs, r.max_points) == r.max_points);
            CHECK(f.to_string() == r.witness->function);
        }
}

TEST_CASE("worker count and checkpoints do not change results") {
    auto F = Field::make(13);
    SearchOptions one, three;
    three.workers = 3;
    auto a = double_covers_given_trace(F, -7, one);
    auto b = double_covers_given_trace(F, -7, three);
    CHECK(a.max_points == b.max_points);
    CHECK(a.witness->coeffs == b.witness->coeffs);
    CHECK(a.examined == b.examined);
    CHECK(a.pruned == b.pruned);

    auto dir = std::filesystem::temp_directory_path() / "g4_ckpt_test";
    std::filesystem::remove_all(dir);
    SearchOptions ck;
    ck.checkpoint_dir = dir.string();
    ck.checkpoint_name = "t13";
    auto c = double_covers_given_trace(F, -7, ck);
    auto d = double_covers_given_trace(F, -7, ck);  // served from the file
    CHECK(c.max_points == a.max_points);
    CHECK(d.max_points == a.max_points);
    CHECK(d.witness->coeffs == a.witness->coeffs);
    CHECK(d.examined == a.examined);
    std::filesystem::remove_all(dir);
}

TEST_CASE("genus-2 base with a rational Weierstrass point") {
    auto F = Field::make(47);
    auto r = double_covers_genus_4(Poly::from_ints(F, {12, -5, 8, -6, 0, 1}));
    CHECK(r.max_points == 98);
}
