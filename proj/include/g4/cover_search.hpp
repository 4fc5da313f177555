// Exhaustive searches for cyclic covers z^m = f where f runs over a linear
// family of functions on a base curve, and the double-cover searches over
// elliptic and genus-2 bases built on top of them.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "g4/curves.hpp"

namespace g4 {

// One rational place of the base.  The local contribution of the candidate
// with coefficient vector c is #{z : z^d = sum_i coeffs[i] c_i}, where a zero
// value counts as one point (a simple branch point).
struct FamilyRow {
    std::vector<Elem> coeffs;
    int d = 1;
};

// Candidates are sum_i c_i basis[i] with c_i drawn from choices[i].  The last
// coordinate is the one evaluated in bulk.
struct LinearFamily {
    FieldPtr field;
    int m = 2;
    std::vector<CurveFunction> basis;
    std::vector<std::vector<Elem>> choices;
    std::vector<FamilyRow> rows;
    int constant = 0;  // contribution of places not listed in rows

    std::size_t dimension() const { return basis.size(); }
    std::uint64_t size() const;
    CurveFunction combine(const std::vector<Elem>& coeffs) const;
};

// Decides whether a candidate that beats the current best is a genuine
// record; returns its exact count, or nullopt to reject it.
using CandidateCheck = std::function<std::optional<int>(const std::vector<Elem>& coeffs, int fast_count)>;

struct FamilyResult {
    int best = -1;
    std::vector<Elem> witness;
    std::uint64_t examined = 0;
    std::uint64_t pruned = 0;
    std::uint64_t rejected = 0;
};

// Scans the candidates whose leading coordinates equal prefix.  Candidates
// that cannot exceed the running best are abandoned early unless prune is off.
FamilyResult search_family(const LinearFamily& fam, const std::vector<Elem>& prefix, const CandidateCheck& check,
                           bool prune = true);

// Fast count of one candidate, same rules as search_family.
int family_count(const LinearFamily& fam, const std::vector<Elem>& coeffs);

// Standard check: genus of z^m = f equals the target and the exact count
// agrees with the fast one.
CandidateCheck genus_check(const BaseCurve& base, const LinearFamily& fam, int genus);

struct SearchWitness {
    std::string base;  // base curve equation
    std::string function;
    std::string label;  // which sub-search produced it
    std::vector<Elem> coeffs;
    int points = 0;
};

struct SearchOutcome {
    int max_points = -1;
    std::optional<SearchWitness> witness;
    std::uint64_t examined = 0;
    std::uint64_t pruned = 0;
    std::uint64_t rejected = 0;
    std::size_t jobs = 0;
};

// A unit of work: one family with a fixed prefix of coordinates.
struct SearchJob {
    std::string label;
    std::shared_ptr<const LinearFamily> family;
    std::vector<Elem> prefix;
    CandidateCheck check;
    std::string base;
};

struct SearchOptions {
    unsigned workers = 1;
    bool prune = true;
    // Directory for per-search checkpoint files; empty disables them.
    std::string checkpoint_dir;
    std::string checkpoint_name;
};

// Runs all jobs, merging by maximum.  The witness is the first record in job
// order, so the outcome does not depend on the number of workers.
SearchOutcome run_jobs(const std::vector<SearchJob>& jobs, const SearchOptions& opt);

// Splits a family into jobs along its first coordinates (up to split of them).
std::vector<SearchJob> split_family(const std::string& label, std::shared_ptr<const LinearFamily> fam,
                                    const CandidateCheck& check, const std::string& base, int split);

// Riemann-Roch bases on y^2 = x^3 + r x^2 + s x + t^2 with Q = (0, t):
// L(8 inf - 2Q) and L(7 inf - 2Q), highest pole first.
std::vector<CurveFunction> rr_basis_8(const EllipticCurve& E);
std::vector<CurveFunction> rr_basis_7(const EllipticCurve& E);
// L(6 inf) and L(5 inf), used when the marked point is the origin.
std::vector<CurveFunction> rr_basis_origin(const EllipticCurve& E, int pole);

// Linear-map data for a family: rows hold, for each rational place P, the
// coefficient of t^{n_P} in the expansion of each basis function, where
// n_P is the prescribed order of f at P (zero when absent).
std::vector<FamilyRow> place_rows(const BaseCurve& C, const std::vector<CurveFunction>& basis,
                                  const std::vector<std::pair<Place, int>>& prescribed, int m);

// Jobs for the double covers of one elliptic curve (short model).
std::vector<SearchJob> elliptic_cover_jobs(const EllipticCurve& E, const std::string& label);
SearchOutcome double_covers_genus_4(const EllipticCurve& E, const SearchOptions& opt = {});
SearchOutcome double_covers_given_trace(const FieldPtr& F, long trace, const SearchOptions& opt = {});
// Number of candidates examined without pruning.
std::uint64_t trace_search_size(const FieldPtr& F, long trace);

// Double covers of y^2 = h with h of degree 5 or 6 branched at two points.
SearchOutcome double_covers_genus_4(const Poly& sextic, const SearchOptions& opt = {});

// Null space of a matrix over F (rows are equations); returns a basis.
std::vector<std::vector<Elem>> null_space(const Field& F, std::vector<std::vector<Elem>> rows, std::size_t n);

}  // namespace g4
