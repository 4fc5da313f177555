#include <doctest.h>

#include <fstream>
#include <set>

#include "g4/case_ledger.hpp"

using namespace g4;

namespace {

const Ledger& ledger() {
    static Ledger L = load_ledger(default_ledger_path());
    return L;
}

const CaseRecord& row(long q, int N) {
    for (auto& c : ledger().upper)
        if (c.q == q && c.N == N) return c;
    throw std::runtime_error("missing row");
}

const BoundsRow& bounds_for(const std::vector<BoundsRow>& rows, long q) {
    for (auto& r : rows)
        if (r.q == q) return r;
    throw std::runtime_error("missing q");
}

}  // namespace

TEST_CASE("transcription") {
    const auto& L = ledger();
    CHECK(L.upper.size() == 32);
    CHECK(L.lower.size() == 21);
    CHECK(L.extra_witnesses.size() == 1);
    std::set<std::pair<long, int>> seen;
    std::set<long> result_qs;
    for (auto& r : L.results) result_qs.insert(r.q);
    for (auto& c : L.upper) {
        CHECK(seen.insert({c.q, c.N}).second);
        CHECK(c.q < 100);
        CHECK(result_qs.count(c.q));
    }
    std::set<long> lower_qs;
    for (auto& w : L.lower) CHECK(lower_qs.insert(w.q).second);
    CHECK(L.results.size() == 35);

    std::ifstream in(default_ledger_path());
    auto raw = nlohmann::json::parse(in);
    CHECK(to_json(L) == raw);
    CHECK(ledger_from_json(to_json(L)) == L);
    CHECK(ledger_from_json(nlohmann::json::parse(to_json(L).dump())) == L);
}

TEST_CASE("malformed ledgers") {
    auto j = to_json(ledger());
    auto bad = j;
    bad["upper"][0]["strategy"]["kind"] = "guesswork";
    CHECK_THROWS_AS(ledger_from_json(bad), std::invalid_argument);
    bad = j;
    bad["upper"][1]["strategy"].erase("trace");
    CHECK_THROWS_AS(ledger_from_json(bad), std::invalid_argument);
    bad = j;
    bad["version"] = 7;
    CHECK_THROWS_AS(ledger_from_json(bad), std::invalid_argument);
    bad = j;
    bad.erase("lower");
    CHECK_THROWS_AS(ledger_from_json(bad), std::invalid_argument);

    CaseRecord rec = row(13, 39);
    rec.strategy.kind = "guesswork";
    CHECK_THROWS_AS(run_case(rec, {}), std::invalid_argument);
}

TEST_CASE("fields") {
    CHECK(field_for(49)->order() == 49);
    CHECK(field_for(49)->characteristic() == 7);
    CHECK(field_for(97)->degree() == 1);
    CHECK_THROWS(field_for(12));
    CHECK_THROWS(field_for(1));
}

TEST_CASE("verify table") {
    std::vector<WitnessRecord> rows = {ledger().lower[0], ledger().extra_witnesses[0]};
    auto r = verify_table(rows);
    REQUIRE(r.size() == 2);
    CHECK(r[0].passed);
    CHECK(r[0].points == 38);
    CHECK(r[0].genus == 4);
    CHECK(r[1].passed);
    CHECK(r[1].points == 129);

    WitnessRecord corrupt = ledger().lower[0];
    corrupt.N = 39;
    auto c = verify_table({corrupt});
    CHECK_FALSE(c[0].passed);
    CHECK(c[0].points == 38);

    CHECK_THROWS_AS(verify_table({{13, 38, "y^2 = x^3 + 4", "z^2 = x^^3"}}), std::invalid_argument);
    CHECK_THROWS_AS(verify_table({{12, 38, "y^2 = x^3 + 4", "z^2 = x^3 + 1"}}), std::invalid_argument);
}

TEST_CASE("run case") {
    auto a = run_case(row(13, 39), {});
    CHECK(a.status == "eliminated");
    REQUIRE(a.checks.size() == 1);
    CHECK(a.checks[0].detail == "max 38 < 39");

    auto ext = run_case(row(17, 47), {});
    CHECK(ext.status == "external");

    // desk budget refuses the large searches without running them
    auto big = run_case(row(83, 154), {});
    CHECK(big.status == "budget-exceeded");
    CHECK(big.estimated_candidates > kDeskCandidates);
    CHECK(big.checks.empty());
    CHECK(run_case(row(67, 130), {}).status == "budget-exceeded");
    CHECK(run_case(row(61, 120), {}).status == "budget-exceeded");

    // a claim the search refutes is reported, not eliminated
    CaseRecord wrong = row(13, 39);
    wrong.N = 38;
    CHECK(run_case(wrong, {}).status == "witness-found");

    auto h = run_case(row(19, 52), {});
    CHECK(h.status == "eliminated");
}

TEST_CASE("hermitian pipelines") {
    auto d12 = hermitian_pipeline({-3, 2});
    CHECK(d12.ok());
    CHECK_FALSE(d12.genus2_branch);
    auto d16 = hermitian_pipeline({-4, 2});
    CHECK(d16.ok());
    CHECK_FALSE(d16.genus2_branch);
    bool saw = false;
    for (auto& c : d16.checks)
        if (c.name == "pushforwards of 2P") {
            saw = true;
            CHECK(c.detail == "1024 modules, 1024 with a vector of length 2");
        }
    CHECK(saw);
    CHECK_FALSE(hermitian_pipeline({-4, 1}).ok());
}

TEST_CASE("bounds report") {
    const auto& L = ledger();
    auto empty = assemble_bounds(L, {}, {});
    REQUIRE(empty.size() == L.results.size());
    for (auto& r : empty) CHECK(r.status == "not run");

    std::vector<CaseOutcome> cases = {run_case(row(13, 39), {}), run_case(row(19, 52), {}),
                                      run_case(row(19, 51), {})};
    std::vector<WitnessRecord> ws;
    for (auto& w : L.lower)
        if (w.q == 13 || w.q == 19) ws.push_back(w);
    auto checked = verify_table(ws);
    auto rows = assemble_bounds(L, cases, checked);
    CHECK(bounds_for(rows, 13).text == "38");
    CHECK(bounds_for(rows, 13).status == "match");
    CHECK(bounds_for(rows, 19).text == "48\xE2\x80\x93" "50");
    CHECK(bounds_for(rows, 19).status == "match");
    CHECK(bounds_for(rows, 2).status == "match");
    CHECK(bounds_for(rows, 17).status == "not run");

    // a failed witness does not raise the lower bound
    checked[0].passed = false;
    auto worse = assemble_bounds(L, cases, checked);
    CHECK(bounds_for(worse, 13).status == "mismatch");

    for (auto& r : rows)
        if (r.lower && r.upper) CHECK(*r.lower <= *r.upper);

    auto text = report_text(rows);
    CHECK(text.find(" 13  38") != std::string::npos);
}

TEST_CASE("report is independent of the worker count") {
    RunOptions one, three;
    three.search.workers = 3;
    std::vector<CaseOutcome> a = {run_case(row(13, 39), one), run_case(row(17, 48), one)};
    std::vector<CaseOutcome> b = {run_case(row(13, 39), three), run_case(row(17, 48), three)};
    auto w = verify_table({ledger().lower[0]});
    auto ja = report_json(assemble_bounds(ledger(), a, w), a, w).dump(2);
    auto jb = report_json(assemble_bounds(ledger(), b, w), b, w).dump(2);
    CHECK(ja == jb);
}
