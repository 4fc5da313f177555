// Command-line driver for the genus-4 searches and the case ledger.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "g4/case_ledger.hpp"
#include "g4/cyclotomic5.hpp"
#include "g4/hermitian.hpp"
#include "g4/special_families.hpp"

using namespace g4;
using nlohmann::json;

namespace {

struct Globals {
    std::string out;
    std::string checkpoint_dir;
    unsigned workers = 1;
    std::string ledger;
};

json checks_json(const std::vector<Check>& checks) {
    json a = json::array();
    for (auto& c : checks) a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return a;
}

bool print_checks(const std::vector<Check>& checks) {
    bool ok = true;
    for (auto& c : checks) {
        std::cout << "  " << (c.passed ? "pass" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
        ok = ok && c.passed;
    }
    return ok;
}

json outcome_json(const SearchOutcome& r) {
    json j = {{"max_points", r.max_points}, {"examined", r.examined}, {"pruned", r.pruned}};
    if (r.witness)
        j["witness"] = {{"base", r.witness->base}, {"function", r.witness->function}, {"label", r.witness->label}};
    return j;
}

void print_outcome(const SearchOutcome& r) {
    std::cout << "max points " << r.max_points << " (" << r.examined << " candidates, " << r.pruned << " pruned)\n";
    if (r.witness) std::cout << "witness over " << r.witness->base << ": " << r.witness->function << "\n";
}

Budget parse_budget(const std::string& s) { return s == "full" ? Budget::Full : Budget::Desk; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genus-4 curves over small finite fields: searches, eliminations and explicit examples"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--out", g.out, "write a JSON report to this file");
    app.add_option("--checkpoint-dir", g.checkpoint_dir, "directory for search checkpoints");
    app.add_option("--workers", g.workers, "worker threads for the searches")->check(CLI::PositiveNumber);
    app.add_option("--ledger", g.ledger, "ledger file")->check(CLI::ExistingFile);

    long q = 0, n = 0, t = 0;
    int m = 5;
    std::string budget = "desk";
    std::optional<int> below;

    auto* verify = app.add_subcommand("verify-table", "recount every explicit curve in the ledger");
    auto* run_case_cmd = app.add_subcommand("run-case", "run one (q, N) elimination");
    run_case_cmd->add_option("--q", q)->required();
    run_case_cmd->add_option("--n", n)->required();
    run_case_cmd->add_option("--budget", budget)->check(CLI::IsMember({"desk", "full"}));
    auto* run_all_cmd = app.add_subcommand("run-all", "run every elimination, recount the examples, assemble the bounds");
    run_all_cmd->add_option("--budget", budget)->check(CLI::IsMember({"desk", "full"}));
    auto* trace_cmd = app.add_subcommand("search-trace", "double covers of the elliptic curves of one trace");
    trace_cmd->add_option("--q", q)->required();
    trace_cmd->add_option("--t", t)->required();
    trace_cmd->add_option("--below", below, "check that the maximum is below this count");
    auto* hyper_cmd = app.add_subcommand("search-hyper", "hyperelliptic curves with an automorphism of order 4");
    hyper_cmd->add_option("--q", q)->required();
    hyper_cmd->add_option("--below", below, "check that the maximum is below this count");
    auto* kummer_cmd = app.add_subcommand("search-kummer", "cyclic covers of degree 5 of the line or 3 of elliptic curves");
    kummer_cmd->add_option("--q", q)->required();
    kummer_cmd->add_option("--m", m)->required()->check(CLI::IsMember({3, 5}));
    kummer_cmd->add_option("--t", t, "trace of the base elliptic curves (m = 3)");
    kummer_cmd->add_option("--below", below, "check that the maximum is below this count");
    std::string herm_case;
    auto* herm_cmd = app.add_subcommand("hermitian", "pushforward pipeline for a conductor-2 order");
    herm_cmd->add_option("--case", herm_case)->required()->check(CLI::IsMember({"delta12", "delta16", "delta28"}));
    std::string zeta_what;
    auto* zeta_cmd = app.add_subcommand("zeta5", "checks over Z[zeta_5]");
    zeta_cmd->add_option("what", zeta_what)->required()->check(CLI::IsMember({"reduce", "covering", "cm"}));

    CLI11_PARSE(app, argc, argv);

    SearchOptions sopt;
    sopt.workers = g.workers;
    sopt.checkpoint_dir = g.checkpoint_dir;
    auto load = [&] { return load_ledger(g.ledger.empty() ? default_ledger_path() : g.ledger); };
    auto below_check = [&](const SearchOutcome& r) {
        if (!below) return true;
        bool ok = r.max_points < *below;
        std::cout << (ok ? "pass" : "FAIL") << ": max " << r.max_points << (ok ? " < " : " >= ") << *below << "\n";
        return ok;
    };

    json report;
    bool ok = true;
    try {
        if (*verify) {
            auto L = load();
            auto rows = L.lower;
            rows.insert(rows.end(), L.extra_witnesses.begin(), L.extra_witnesses.end());
            auto checked = verify_table(rows);
            for (auto& w : checked) {
                std::cout << (w.passed ? "pass" : "FAIL") << "  q=" << w.record.q << " N=" << w.record.N
                          << " recount " << w.points << " genus " << w.genus << "  "
                          << (w.record.base.empty() ? "" : w.record.base + ", ") << w.record.cover << "\n";
                ok = ok && w.passed;
            }
            report = report_json({}, {}, checked);
        } else if (*run_case_cmd) {
            auto L = load();
            const CaseRecord* rec = nullptr;
            for (auto& c : L.upper)
                if (c.q == q && c.N == n) rec = &c;
            if (!rec) throw std::invalid_argument("no ledger row for this (q, N)");
            auto out = run_case(*rec, {parse_budget(budget), sopt});
            std::cout << "q=" << q << " N=" << n << " " << out.kind << ": " << out.status << "\n";
            ok = print_checks(out.checks) && out.status != "witness-found" && out.status != "failed";
            report = report_json({}, {out}, {});
        } else if (*run_all_cmd) {
            auto L = load();
            RunOptions ro{parse_budget(budget), sopt};
            std::vector<CaseOutcome> cases;
            for (auto& c : L.upper) {
                cases.push_back(run_case(c, ro));
                auto& o = cases.back();
                std::cout << "q=" << o.q << " N=" << o.N << " " << o.kind << ": " << o.status << "\n";
                if (o.status == "failed" || o.status == "witness-found") {
                    print_checks(o.checks);
                    ok = false;
                }
            }
            auto rows = L.lower;
            rows.insert(rows.end(), L.extra_witnesses.begin(), L.extra_witnesses.end());
            auto checked = verify_table(rows);
            for (auto& w : checked) ok = ok && w.passed;
            auto bounds = assemble_bounds(L, cases, checked);
            for (auto& b : bounds) ok = ok && b.status != "mismatch";
            std::cout << "\n" << report_text(bounds);
            report = report_json(bounds, cases, checked);
        } else if (*trace_cmd) {
            auto r = double_covers_given_trace(field_for(q), t, sopt);
            print_outcome(r);
            ok = below_check(r);
            report = outcome_json(r);
        } else if (*hyper_cmd) {
            auto r = hyperelliptic_order4_search(field_for(q), sopt);
            print_outcome(r);
            ok = below_check(r);
            report = outcome_json(r);
        } else if (*kummer_cmd) {
            auto F = field_for(q);
            SearchOutcome r;
            if (m == 5) {
                r = kummer5_search(F);
            } else {
                if (!kummer_cmd->count("--t")) throw std::invalid_argument("--t is required for m = 3");
                r = kummer3_search(F, t, false, sopt);
            }
            print_outcome(r);
            ok = below_check(r);
            report = outcome_json(r);
        } else if (*herm_cmd) {
            OrderSpec order = herm_case == "delta12" ? OrderSpec{-3, 2}
                              : herm_case == "delta16" ? OrderSpec{-4, 2}
                                                       : OrderSpec{-7, 2};
            auto hp = hermitian_pipeline(order);
            ok = print_checks(hp.checks);
            std::cout << (hp.genus2_branch ? "some curves may only be double covers of genus-2 curves\n"
                                           : "every curve is a double cover of an elliptic curve\n");
            report = {{"case", herm_case}, {"checks", checks_json(hp.checks)}, {"genus2_branch", hp.genus2_branch}};
        } else if (*zeta_cmd) {
            using namespace cyclo;
            std::vector<Check> checks;
            if (zeta_what == "reduce") {
                checks.push_back(reduction_round_trips(500, 1));
            } else if (zeta_what == "covering") {
                auto rep = covering_radius_check({2, 3, 4, 5});
                for (auto& r : rep.rows)
                    checks.push_back({"denominator " + std::to_string(r.denominator), r.max_distance <= 2,
                                      std::to_string(r.cosets) + " cosets, max distance " + r.max_distance.get_str()});
            } else {
                auto L = load();
                std::function<void(const CaseRecord&, const Strategy&)> visit = [&](const CaseRecord& c,
                                                                                    const Strategy& s) {
                    if (s.kind == "hermitian_zeta5") {
                        auto cm = verify_frobenius_cm(c.q, quartic_from_real(c.q, s.real_weil->first, s.real_weil->second));
                        checks.push_back({"q=" + std::to_string(c.q) + " N=" + std::to_string(c.N), cm.ok(),
                                          "root " + (cm.root ? to_string(*cm.root) : std::string("none")) + ", index " +
                                              cm.index.get_str()});
                    }
                    for (auto& p : s.parts) visit(c, p);
                };
                for (auto& c : L.upper) visit(c, c.strategy);
            }
            ok = print_checks(checks);
            report = {{"what", zeta_what}, {"checks", checks_json(checks)}};
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (!g.out.empty()) {
        std::ofstream f(g.out);
        if (!f) {
            std::cerr << "error: cannot write " << g.out << "\n";
            return 2;
        }
        f << report.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}
