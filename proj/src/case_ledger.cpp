#include "g4/case_ledger.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "g4/cyclotomic5.hpp"
#include "g4/hermitian.hpp"
#include "g4/special_families.hpp"

namespace g4 {

using nlohmann::json;

namespace {

const std::set<std::string> kKinds = {"none_exist",           "double_cover_elliptic", "hermitian_maximal",
                                      "hermitian_nonmaximal", "hermitian_zeta5",       "composite"};

const char* kDash = "\xE2\x80\x93";

json strategy_json(const Strategy& s) {
    json j;
    j["kind"] = s.kind;
    if (s.trace) j["trace"] = *s.trace;
    if (s.order) j["order"] = {{"dK", s.order->dK}, {"conductor", s.order->conductor}};
    if (!s.genus2_bases.empty()) j["genus2_bases"] = s.genus2_bases;
    if (s.real_weil) j["real_weil"] = {s.real_weil->first, s.real_weil->second};
    if (!s.parts.empty()) {
        j["parts"] = json::array();
        for (auto& p : s.parts) j["parts"].push_back(strategy_json(p));
    }
    return j;
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("ledger: missing field ") + key);
    return j.at(key).get<T>();
}

Strategy strategy_from(const json& j) {
    Strategy s;
    s.kind = field<std::string>(j, "kind");
    if (!kKinds.count(s.kind)) throw std::invalid_argument("ledger: unknown strategy " + s.kind);
    if (j.contains("trace")) s.trace = j["trace"].get<long>();
    if (j.contains("order")) s.order = OrderSpec{field<long>(j["order"], "dK"), field<long>(j["order"], "conductor")};
    if (j.contains("genus2_bases")) s.genus2_bases = j["genus2_bases"].get<std::vector<std::string>>();
    if (j.contains("real_weil")) {
        auto v = j["real_weil"].get<std::vector<long>>();
        if (v.size() != 2) throw std::invalid_argument("ledger: real_weil needs two coefficients");
        s.real_weil = std::make_pair(v[0], v[1]);
    }
    if (j.contains("parts"))
        for (auto& p : j["parts"]) s.parts.push_back(strategy_from(p));

    bool needs_trace = s.kind == "double_cover_elliptic" || s.kind == "hermitian_maximal" ||
                       s.kind == "hermitian_nonmaximal";
    if (needs_trace && !s.trace) throw std::invalid_argument("ledger: " + s.kind + " needs a trace");
    if ((s.kind == "hermitian_maximal" || s.kind == "hermitian_nonmaximal") && !s.order)
        throw std::invalid_argument("ledger: " + s.kind + " needs an order");
    if (s.kind == "hermitian_zeta5" && !s.real_weil) throw std::invalid_argument("ledger: zeta5 needs real_weil");
    if (s.kind == "composite" && s.parts.empty()) throw std::invalid_argument("ledger: empty composite");
    return s;
}

json witness_json(const WitnessRecord& w) { return {{"q", w.q}, {"N", w.N}, {"base", w.base}, {"cover", w.cover}}; }

WitnessRecord witness_from(const json& j) {
    return {field<long>(j, "q"), field<int>(j, "N"), field<std::string>(j, "base"), field<std::string>(j, "cover")};
}

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const Ledger& L) {
    json j;
    j["version"] = L.version;
    j["upper"] = json::array();
    for (auto& c : L.upper) {
        json r = {{"q", c.q}, {"N", c.N}, {"strategy", strategy_json(c.strategy)}};
        if (!c.notes.empty()) r["notes"] = c.notes;
        j["upper"].push_back(r);
    }
    j["lower"] = json::array();
    for (auto& w : L.lower) j["lower"].push_back(witness_json(w));
    j["extra_witnesses"] = json::array();
    for (auto& w : L.extra_witnesses) j["extra_witnesses"].push_back(witness_json(w));
    j["results"] = json::array();
    for (auto& r : L.results) {
        json o = {{"q", r.q}, {"expected", r.expected}};
        if (r.prior_lower) o["prior_lower"] = *r.prior_lower;
        if (r.prior_upper) o["prior_upper"] = *r.prior_upper;
        j["results"].push_back(o);
    }
    return j;
}

Ledger ledger_from_json(const json& j) {
    Ledger L;
    L.version = field<int>(j, "version");
    if (L.version != 1) throw std::invalid_argument("ledger: unsupported version");
    for (auto& r : field<json>(j, "upper")) {
        CaseRecord c{field<long>(r, "q"), field<int>(r, "N"), strategy_from(field<json>(r, "strategy")), {}};
        if (r.contains("notes")) c.notes = r["notes"].get<std::string>();
        L.upper.push_back(std::move(c));
    }
    for (auto& r : field<json>(j, "lower")) L.lower.push_back(witness_from(r));
    if (j.contains("extra_witnesses"))
        for (auto& r : j["extra_witnesses"]) L.extra_witnesses.push_back(witness_from(r));
    for (auto& r : field<json>(j, "results")) {
        ResultRow row{field<long>(r, "q"), {}, {}, field<std::string>(r, "expected")};
        if (r.contains("prior_lower")) row.prior_lower = r["prior_lower"].get<int>();
        if (r.contains("prior_upper")) row.prior_upper = r["prior_upper"].get<int>();
        L.results.push_back(std::move(row));
    }
    return L;
}

Ledger load_ledger(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return ledger_from_json(json::parse(in));
}

std::string default_ledger_path() {
    if (const char* d = std::getenv("G4_DATA_DIR")) return std::string(d) + "/ledger.json";
    return std::string(G4_DATA_DIR) + "/ledger.json";
}

FieldPtr field_for(long q) {
    if (q < 2) throw std::invalid_argument("not a prime power");
    long p = 2;
    while (q % p) ++p;
    std::uint32_t k = 0;
    long r = q;
    while (r % p == 0) {
        r /= p;
        ++k;
    }
    if (r != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return Field::make(static_cast<std::uint32_t>(p), k);
}

// ---------------------------------------------------------------------------
// running cases

namespace {

struct CaseContext {
    long q;
    int N;
    FieldPtr F;
    const RunOptions& opt;
    std::vector<Check>& checks;
    bool witness = false;

    SearchOptions search(const std::string& label) const {
        SearchOptions s = opt.search;
        s.checkpoint_name = "q" + std::to_string(q) + "_" + label;
        return s;
    }
    void add(std::string name, bool ok, std::string detail) { checks.push_back({std::move(name), ok, std::move(detail)}); }
    void search_result(const std::string& name, int max_points) {
        bool ok = max_points < N;
        if (!ok) witness = true;
        add(name, ok, "max " + std::to_string(max_points) + (ok ? " < " : " >= ") + std::to_string(N));
    }
};

Poly sextic_from(const FieldPtr& F, const std::string& text) {
    Equation e = parse_equation(text);
    if (e.variable != 'y' || e.exponent != 2) throw std::invalid_argument("expected y^2 = h(x): " + text);
    std::vector<long long> c;
    for (auto& [deg, v] : e.rhs) {
        if (deg.second != 0) throw std::invalid_argument("expected y^2 = h(x): " + text);
        if (c.size() <= static_cast<std::size_t>(deg.first)) c.resize(deg.first + 1, 0);
        c[deg.first] = v;
    }
    return Poly::from_ints(F, c);
}

void elliptic_branch(CaseContext& ctx, long t) {
    auto r = double_covers_given_trace(ctx.F, t, ctx.search("trace" + std::to_string(t)));
    ctx.search_result("double covers of trace " + std::to_string(t), r.max_points);
}

void discriminant_check(CaseContext& ctx, const Strategy& s) {
    long disc = *s.trace * *s.trace - 4 * ctx.q;
    long want = s.order->conductor * s.order->conductor * s.order->dK;
    ctx.add("frobenius order", disc == want,
            "t^2 - 4q = " + std::to_string(disc) + ", order discriminant " + std::to_string(want));
    // E^4 with trace t has q + 1 - 4t points on the curve
    long count = ctx.q + 1 - 4 * *s.trace;
    ctx.add("isogeny class count", count == ctx.N, "q + 1 - 4t = " + std::to_string(count));
}

void genus2_branch(CaseContext& ctx, const Strategy& s) {
    for (std::size_t i = 0; i < s.genus2_bases.size(); ++i) {
        Poly h = sextic_from(ctx.F, s.genus2_bases[i]);
        std::size_t n = count_points_genus2(h);
        long want = ctx.q + 1 - 2 * *s.trace;
        ctx.add("genus-2 base " + s.genus2_bases[i] + " count", static_cast<long>(n) == want,
                std::to_string(n) + " points, q + 1 - 2t = " + std::to_string(want));
        auto r = double_covers_genus_4(h, ctx.search("genus2_" + std::to_string(i)));
        ctx.search_result("double covers of " + s.genus2_bases[i], r.max_points);
    }
}

void run_strategy(CaseContext& ctx, const Strategy& s) {
    if (s.kind == "double_cover_elliptic") {
        elliptic_branch(ctx, *s.trace);
    } else if (s.kind == "hermitian_maximal") {
        discriminant_check(ctx, s);
        ctx.add("genus-2 bases listed", !s.genus2_bases.empty(), std::to_string(s.genus2_bases.size()));
        elliptic_branch(ctx, *s.trace);
        genus2_branch(ctx, s);
        if (ctx.N <= 2 * (ctx.q + 1)) {
            auto r = hyperelliptic_order4_search(ctx.F, ctx.search("order4"));
            ctx.search_result("hyperelliptic with an order-4 automorphism", r.max_points);
        } else {
            ctx.add("hyperelliptic excluded", true, "N > 2(q + 1)");
        }
    } else if (s.kind == "hermitian_nonmaximal") {
        discriminant_check(ctx, s);
        auto hp = hermitian_pipeline(*s.order);
        for (auto& c : hp.checks) ctx.checks.push_back(c);
        if (hp.genus2_branch)
            ctx.add("genus-2 bases listed", !s.genus2_bases.empty(), std::to_string(s.genus2_bases.size()));
        elliptic_branch(ctx, *s.trace);
        genus2_branch(ctx, s);
    } else if (s.kind == "hermitian_zeta5") {
        for (auto& c : zeta5_pipeline(ctx.q, ctx.N, s.real_weil->first, s.real_weil->second)) {
            if (c.name == "degree-5 Kummer covers" && !c.passed) ctx.witness = true;
            ctx.checks.push_back(c);
        }
    } else if (s.kind == "composite") {
        for (auto& p : s.parts) run_strategy(ctx, p);
    } else if (s.kind == "none_exist") {
        ctx.add("external", true, "isogeny-class census; not recomputed here");
    } else {
        throw std::invalid_argument("unknown strategy " + s.kind);
    }
}

KMatrix block_swap() {
    KMatrix A(4, KVec(4));
    A[0][1] = A[1][0] = A[2][3] = A[3][2] = KElem(1);
    return A;
}

std::string summary_detail(const PushforwardSummary& s, const std::vector<HermitianLattice>& reps) {
    std::ostringstream os;
    os << s.total << " modules, " << s.with_short << " with a vector of length 2";
    if (s.without_short) {
        os << ", " << s.without_short << " without:";
        for (std::size_t i = 0; i < reps.size(); ++i) os << " " << reps[i].name << "=" << s.class_counts[i];
        os << ", unmatched " << s.unmatched;
    }
    return os.str();
}

}  // namespace

bool HermitianPipeline::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

HermitianPipeline hermitian_pipeline(const OrderSpec& order) {
    HermitianPipeline out;
    auto add = [&](std::string n, bool ok, std::string d) { out.checks.push_back({std::move(n), ok, std::move(d)}); };
    if (order.conductor != 2) {
        add("order", false, "conductor must be 2");
        return out;
    }
    auto O = QuadraticOrder::make(order.dK, 1);
    auto R = QuadraticOrder::make(order.dK, 2);
    auto forms = load_schiemann_forms(default_forms_path(), O, 4);
    auto reps = load_schiemann_forms(default_forms_path(), R, 4);
    add("principal forms", !forms.empty(), std::to_string(forms.size()) + " over the maximal order");
    for (auto& P : forms) {
        auto twice = HermitianLattice::standard(O, scaled(O, P.gram, KElem(2)), P.name);
        mpq_class d = diagonal_pullback_check(twice);
        if (d <= 2) {
            add("2" + P.name + " pulls back", true, "diagonal entry " + d.get_str() + " gives degree 4 on E");
            continue;
        }
        auto mods = enumerate_pushforwards(P);
        auto s = summarize_pushforwards(mods, reps);
        bool ok = s.total > 0 && s.unmatched == 0 && s.multiply_matched == 0;
        add("pushforwards of 2" + P.name, ok, summary_detail(s, reps));
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (s.class_counts[i] == 0) continue;
            out.genus2_branch = true;
            add("involution on " + reps[i].name, involution_check(reps[i], block_swap()), "block swap, rank(A - I) = 2");
        }
    }
    return out;
}

Check reduction_round_trips(int count, unsigned seed) {
    using namespace cyclo;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> kind(0, 3), e(-2, 2), k(0, 4), coef(-2, 2);
    auto element = [&] { return Cyclo(coef(rng), coef(rng), coef(rng), coef(rng)); };
    int ok = 0;
    for (int t = 0; t < count; ++t) {
        Mat2 C0 = identity2();
        int steps = 1 + static_cast<int>(rng() % 4);
        for (int s = 0; s < steps; ++s) {
            Mat2 T = identity2();
            switch (kind(rng)) {
                case 0: T[0][1] = element(); break;
                case 1: T[1][0] = element(); break;
                case 2: T[0][0] = power(varphi(), e(rng)) * power(zeta(), k(rng)); break;
                default:
                    T[0][0] = T[1][1] = Cyclo(0);
                    T[0][1] = T[1][0] = Cyclo(1);
            }
            C0 = mat_mul(C0, T);
        }
        Mat2 P = mat_mul(conj_transpose(C0), C0);
        auto red = reduce_unimodular(Hermitian2x2::from_matrix(P));
        ok += mat_mul(conj_transpose(red.C), red.C) == P && red.steps.back().after.matrix() == identity2();
    }
    return {"rank-2 reduction", ok == count, std::to_string(ok) + "/" + std::to_string(count) + " reduced to the identity"};
}

std::vector<Check> zeta5_pipeline(long q, int N, long s, long t) {
    using namespace cyclo;
    std::vector<Check> out;
    long count = q + 1 + 2 * s;
    out.push_back({"isogeny class count", count == N, "q + 1 + 2s = " + std::to_string(count)});
    auto cm = verify_frobenius_cm(q, quartic_from_real(q, s, t));
    std::string root = cm.root ? to_string(*cm.root) : std::string("none");
    out.push_back({"frobenius in Z[zeta_5]", cm.ok(),
                   "root " + root + ", index " + cm.index.get_str() + (cm.ordinary ? ", ordinary" : ", not ordinary")});
    auto cov = covering_radius_check({2, 3, 4, 5});
    out.push_back({"covering radius", cov.ok(), "max sampled distance " + cov.max_distance.get_str()});
    out.push_back(reduction_round_trips(100, static_cast<unsigned>(q)));
    auto k5 = kummer5_search(field_for(q));
    bool ok = k5.max_points < N;
    out.push_back({"degree-5 Kummer covers", ok,
                   "max " + std::to_string(k5.max_points) + (ok ? " < " : " >= ") + std::to_string(N)});
    return out;
}

std::uint64_t estimated_candidates(const Strategy& s, long q) {
    std::uint64_t n = 0;
    if (s.trace && s.kind != "none_exist") n += trace_search_size(field_for(q), *s.trace);
    for (auto& p : s.parts) n += estimated_candidates(p, q);
    return n;
}

CaseOutcome run_case(const CaseRecord& rec, const RunOptions& opt) {
    if (!kKinds.count(rec.strategy.kind)) throw std::invalid_argument("unknown strategy " + rec.strategy.kind);
    CaseOutcome out{rec.q, rec.N, rec.strategy.kind, {}, {}, 0};
    if (rec.strategy.kind == "none_exist") {
        out.status = "external";
        out.checks.push_back({"external", true, "isogeny-class census; not recomputed here"});
        return out;
    }
    out.estimated_candidates = estimated_candidates(rec.strategy, rec.q);
    if (opt.budget == Budget::Desk && out.estimated_candidates > kDeskCandidates) {
        out.status = "budget-exceeded";
        return out;
    }
    CaseContext ctx{rec.q, rec.N, field_for(rec.q), opt, out.checks};
    run_strategy(ctx, rec.strategy);
    bool all = std::all_of(out.checks.begin(), out.checks.end(), [](const Check& c) { return c.passed; });
    out.status = ctx.witness ? "witness-found" : all ? "eliminated" : "failed";
    return out;
}

std::vector<CaseOutcome> run_all(const Ledger& L, const RunOptions& opt) {
    std::vector<CaseOutcome> out;
    for (auto& c : L.upper) out.push_back(run_case(c, opt));
    return out;
}

// ---------------------------------------------------------------------------
// explicit curves

std::vector<WitnessCheck> verify_table(const std::vector<WitnessRecord>& rows) {
    std::vector<WitnessCheck> out;
    for (auto& r : rows) {
        Tower T = [&] {
            try {
                return make_tower(field_for(r.q), r.base, r.cover);
            } catch (const std::exception& e) {
                throw std::invalid_argument("q = " + std::to_string(r.q) + ": " + e.what());
            }
        }();
        auto c = superelliptic_count(T.base, T.f, T.m);
        WitnessCheck w{r, c.points, c.genus, false};
        w.passed = c.consistent() && c.genus == 4 && c.points == static_cast<std::size_t>(r.N);
        out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// bounds

std::vector<BoundsRow> assemble_bounds(const Ledger& L, const std::vector<CaseOutcome>& cases,
                                       const std::vector<WitnessCheck>& witnesses) {
    std::map<std::pair<long, int>, const CaseOutcome*> outcome;
    for (auto& c : cases) outcome[{c.q, c.N}] = &c;
    std::vector<const WitnessRecord*> all_witnesses;
    for (auto& w : L.lower) all_witnesses.push_back(&w);
    for (auto& w : L.extra_witnesses) all_witnesses.push_back(&w);
    auto checked = [&](const WitnessRecord& w) -> const WitnessCheck* {
        for (auto& c : witnesses)
            if (c.record == w) return &c;
        return nullptr;
    };
    const bool nothing = cases.empty() && witnesses.empty();

    std::vector<BoundsRow> out;
    for (auto& res : L.results) {
        BoundsRow row;
        row.q = res.q;
        row.expected = res.expected;
        row.lower = res.prior_lower;
        row.upper = res.prior_upper;
        std::size_t required = 0, ran = 0;

        for (auto* w : all_witnesses) {
            if (w->q != res.q) continue;
            ++required;
            auto* c = checked(*w);
            if (!c) continue;
            ++ran;
            if (c->passed && (!row.lower || *row.lower < w->N)) row.lower = w->N;
        }

        std::vector<const CaseRecord*> rows;
        for (auto& c : L.upper)
            if (c.q == res.q) rows.push_back(&c);
        std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->N > b->N; });
        bool chain = true;
        for (auto* c : rows) {
            bool external = c->strategy.kind == "none_exist";
            auto it = outcome.find({c->q, c->N});
            bool done = it != outcome.end() && it->second->status != "budget-exceeded";
            if (!external) {
                ++required;
                ran += done;
            }
            if (!chain || !row.upper || *row.upper != c->N) {
                chain = false;
                continue;
            }
            bool eliminated = external || (done && it->second->status == "eliminated");
            if (eliminated)
                row.upper = c->N - 1;
            else
                chain = false;
        }

        if (row.lower && row.upper)
            row.text = *row.lower == *row.upper ? std::to_string(*row.lower)
                                                : std::to_string(*row.lower) + kDash + std::to_string(*row.upper);
        else
            row.text = (row.lower ? std::to_string(*row.lower) : std::string("?")) + kDash +
                       (row.upper ? std::to_string(*row.upper) : std::string("?"));

        if (nothing || (required > 0 && ran == 0))
            row.status = "not run";
        else if (ran < required)
            row.status = "incomplete";
        else if (row.lower && row.upper && *row.lower > *row.upper)
            row.status = "mismatch";
        else
            row.status = row.text == row.expected ? "match" : "mismatch";
        out.push_back(std::move(row));
    }
    return out;
}

json report_json(const std::vector<BoundsRow>& rows, const std::vector<CaseOutcome>& cases,
                 const std::vector<WitnessCheck>& witnesses) {
    json j;
    j["version"] = 1;
    j["bounds"] = json::array();
    for (auto& r : rows)
        j["bounds"].push_back({{"q", r.q},
                               {"lower", optional_int(r.lower)},
                               {"upper", optional_int(r.upper)},
                               {"range", r.text},
                               {"expected", r.expected},
                               {"status", r.status}});
    j["cases"] = json::array();
    for (auto& c : cases) {
        json checks = json::array();
        for (auto& k : c.checks) checks.push_back({{"name", k.name}, {"passed", k.passed}, {"detail", k.detail}});
        j["cases"].push_back({{"q", c.q},
                              {"N", c.N},
                              {"strategy", c.kind},
                              {"status", c.status},
                              {"estimated_candidates", c.estimated_candidates},
                              {"checks", checks}});
    }
    j["witnesses"] = json::array();
    for (auto& w : witnesses)
        j["witnesses"].push_back({{"q", w.record.q},
                                  {"N", w.record.N},
                                  {"base", w.record.base},
                                  {"cover", w.record.cover},
                                  {"points", w.points},
                                  {"genus", w.genus},
                                  {"passed", w.passed}});
    return j;
}

std::string report_text(const std::vector<BoundsRow>& rows) {
    // the dash is one column wide but three bytes
    auto width = [](const std::string& s) {
        std::size_t n = 0;
        for (unsigned char c : s) n += (c & 0xC0) != 0x80;
        return n;
    };
    auto pad = [&](const std::string& s, std::size_t w) { return s + std::string(w > width(s) ? w - width(s) : 0, ' '); };
    std::ostringstream os;
    os << std::right << std::setw(3) << "q" << "  " << pad("new", 9) << pad("expected", 10) << "status\n";
    for (auto& r : rows)
        os << std::setw(3) << r.q << "  " << pad(r.text, 9) << pad(r.expected, 10) << r.status << "\n";
    return os.str();
}

}  // namespace g4
