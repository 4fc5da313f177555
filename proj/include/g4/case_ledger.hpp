// The ledger of (q, N) cases for genus-4 curves with q < 100: which pairs
// must be ruled out and how, explicit curves realizing the lower bounds, and
// the assembled table of bounds.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "g4/cover_search.hpp"

namespace g4 {

struct OrderSpec {
    long dK = 0;
    long conductor = 1;
    bool operator==(const OrderSpec&) const = default;
};

// kind is one of none_exist, double_cover_elliptic, hermitian_maximal,
// hermitian_nonmaximal, hermitian_zeta5, composite.
struct Strategy {
    std::string kind;
    std::optional<long> trace;
    std::optional<OrderSpec> order;
    std::vector<std::string> genus2_bases;           // "y^2 = x^6 + ..."
    std::optional<std::pair<long, long>> real_weil;  // x^2 + s x + t
    std::vector<Strategy> parts;
    bool operator==(const Strategy&) const = default;
};

struct CaseRecord {
    long q = 0;
    int N = 0;
    Strategy strategy;
    std::string notes;
    bool operator==(const CaseRecord&) const = default;
};

struct WitnessRecord {
    long q = 0;
    int N = 0;
    std::string base;  // empty: the cover lives over the x-line
    std::string cover;
    bool operator==(const WitnessRecord&) const = default;
};

struct ResultRow {
    long q = 0;
    std::optional<int> prior_lower, prior_upper;
    std::string expected;
    bool operator==(const ResultRow&) const = default;
};

struct Ledger {
    int version = 1;
    std::vector<CaseRecord> upper;
    std::vector<WitnessRecord> lower;
    std::vector<WitnessRecord> extra_witnesses;
    std::vector<ResultRow> results;
    bool operator==(const Ledger&) const = default;
};

nlohmann::json to_json(const Ledger& L);
// Throws std::invalid_argument on unknown strategy kinds or missing fields.
Ledger ledger_from_json(const nlohmann::json& j);
Ledger load_ledger(const std::string& path);
std::string default_ledger_path();

FieldPtr field_for(long q);

// ---------------------------------------------------------------------------
// running cases

enum class Budget { Desk, Full };
// Searches whose estimated candidate count exceeds this run only at full budget.
inline constexpr std::uint64_t kDeskCandidates = 2'000'000'000ULL;

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CaseOutcome {
    long q = 0;
    int N = 0;
    std::string kind;
    // eliminated, external, witness-found, budget-exceeded, failed
    std::string status;
    std::vector<Check> checks;
    std::uint64_t estimated_candidates = 0;
};

struct RunOptions {
    Budget budget = Budget::Desk;
    SearchOptions search;
};

// Throws std::invalid_argument for an unknown strategy kind.
CaseOutcome run_case(const CaseRecord& rec, const RunOptions& opt);
std::vector<CaseOutcome> run_all(const Ledger& L, const RunOptions& opt);
std::uint64_t estimated_candidates(const Strategy& s, long q);

// Polarizations on E^4 for the maximal order containing `order` (conductor
// 2), pushed down to the order.  genus2_branch is set when some pushforward
// escapes the length-2 test and is only handled by an involution.
struct HermitianPipeline {
    std::vector<Check> checks;
    bool genus2_branch = false;
    bool ok() const;
};
HermitianPipeline hermitian_pipeline(const OrderSpec& order);

// Frobenius data, covering radius, rank-2 reduction and the degree-5 Kummer
// search for a Jacobian isogenous to A^2, A with real Weil polynomial x^2 + s x + t.
std::vector<Check> zeta5_pipeline(long q, int N, long s, long t);
// Random C*C round trips through the reduction, from a fixed seed.
Check reduction_round_trips(int count, unsigned seed);

// ---------------------------------------------------------------------------
// explicit curves

struct WitnessCheck {
    WitnessRecord record;
    std::size_t points = 0;
    int genus = -1;
    bool passed = false;
};
// Recounts every row; throws std::invalid_argument on malformed equations.
std::vector<WitnessCheck> verify_table(const std::vector<WitnessRecord>& rows);

// ---------------------------------------------------------------------------
// bounds

struct BoundsRow {
    long q = 0;
    std::optional<int> lower, upper;
    std::string text;      // "38" or "48–50"
    std::string expected;
    std::string status;    // match, mismatch, incomplete, not run
};

std::vector<BoundsRow> assemble_bounds(const Ledger& L, const std::vector<CaseOutcome>& cases,
                                       const std::vector<WitnessCheck>& witnesses);

nlohmann::json report_json(const std::vector<BoundsRow>& rows, const std::vector<CaseOutcome>& cases,
                           const std::vector<WitnessCheck>& witnesses);
std::string report_text(const std::vector<BoundsRow>& rows);

}  // namespace g4
