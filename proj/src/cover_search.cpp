#include "g4/cover_search.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace g4 {

std::uint64_t LinearFamily::size() const {
    std::uint64_t n = 1;
    for (auto& c : choices) n *= c.size();
    return n;
}

CurveFunction LinearFamily::combine(const std::vector<Elem>& coeffs) const {
    const Field& K = *field;
    Poly A(field), B(field), one = Poly::constant(field, 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (coeffs[i] == 0) continue;
        if (basis[i].D != one) throw std::logic_error("family functions must be regular away from infinity");
        A = A + basis[i].A.scaled(coeffs[i]);
        B = B + basis[i].B.scaled(coeffs[i]);
    }
    (void)K;
    return CurveFunction(A, B, one);
}

namespace {

// Field tables and per-exponent residue tables for the inner loop.
struct Kernel {
    std::uint32_t q = 0;
    std::vector<std::uint8_t> add, mul;
    std::vector<std::uint8_t> inv;
    std::vector<std::uint32_t> log;
    // For each g | q-1 used: tables[g][(j*q + k)*q + c] = roots of s_j (k + c)
    std::map<std::uint32_t, std::vector<std::uint8_t>> tables;

    explicit Kernel(const Field& K) : q(K.order()) {
        if (q > 256) throw std::domain_error("search kernel supports fields of at most 256 elements");
        add.resize(q * q);
        mul.resize(q * q);
        inv.assign(q, 0);
        log.assign(q, 0);
        for (Elem a = 0; a < q; ++a) {
            if (a) inv[a] = static_cast<std::uint8_t>(K.inv(a));
            if (a) log[a] = K.log(a);
            for (Elem b = 0; b < q; ++b) {
                add[a * q + b] = static_cast<std::uint8_t>(K.add(a, b));
                mul[a * q + b] = static_cast<std::uint8_t>(K.mul(a, b));
            }
        }
    }
    std::uint32_t roots(std::uint32_t g, Elem v) const {
        if (v == 0) return 1;
        return log[v] % g == 0 ? g : 0;
    }
    const std::vector<std::uint8_t>& table(const Field& K, std::uint32_t g) {
        auto it = tables.find(g);
        if (it != tables.end()) return it->second;
        std::vector<std::uint8_t> t(static_cast<std::size_t>(g) * q * q);
        for (std::uint32_t j = 0; j < g; ++j) {
            Elem s = K.exp(j);
            for (Elem k = 0; k < q; ++k)
                for (Elem c = 0; c < q; ++c)
                    t[(static_cast<std::size_t>(j) * q + k) * q + c] =
                        static_cast<std::uint8_t>(roots(g, mul[s * q + add[k * q + c]]));
        }
        return tables.emplace(g, std::move(t)).first->second;
    }
};

std::uint32_t effective_degree(std::uint32_t q, int d) {
    return std::gcd(static_cast<std::uint32_t>(d), q - 1);
}

}  // namespace

int family_count(const LinearFamily& fam, const std::vector<Elem>& coeffs) {
    const Field& K = *fam.field;
    int total = fam.constant;
    for (auto& r : fam.rows) {
        Elem v = 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) v = K.add(v, K.mul(coeffs[i], r.coeffs[i]));
        std::uint32_t g = effective_degree(K.order(), r.d);
        if (g == 1 || v == 0) {
            total += 1;
        } else {
            total += K.log(v) % g == 0 ? static_cast<int>(g) : 0;
        }
    }
    return total;
}

FamilyResult search_family(const LinearFamily& fam, const std::vector<Elem>& prefix, const CandidateCheck& check,
                           bool prune) {
    const Field& K = *fam.field;
    const std::size_t n = fam.dimension();
    if (n == 0 || fam.choices.size() != n) throw std::invalid_argument("malformed family");
    if (prefix.size() >= n) throw std::invalid_argument("prefix must leave the last coordinate free");
    Kernel ker(K);
    const std::uint32_t q = ker.q;

    // Split rows into constant ones (every value gives one point) and live ones.
    struct Live {
        std::vector<std::uint8_t> coef;  // all coordinates but the last
        std::uint8_t s;                  // last coordinate
        std::uint32_t g;
        const std::uint8_t* tab;
    };
    int constant = fam.constant;
    std::vector<Live> live;
    for (auto& r : fam.rows) {
        std::uint32_t g = effective_degree(q, r.d);
        if (g == 1) {
            ++constant;
            continue;
        }
        Live L;
        for (std::size_t i = 0; i + 1 < n; ++i) L.coef.push_back(static_cast<std::uint8_t>(r.coeffs[i]));
        L.s = static_cast<std::uint8_t>(r.coeffs[n - 1]);
        L.g = g;
        L.tab = ker.table(K, g).data();
        if (L.s != 0) L.tab += static_cast<std::size_t>(ker.log[L.s] % g) * q * q;
        live.push_back(std::move(L));
    }
    const std::size_t R = live.size();
    std::vector<int> tail(R + 1, 0);  // most points the rows from r on can add
    for (std::size_t r = R; r-- > 0;) tail[r] = tail[r + 1] + static_cast<int>(live[r].g);

    const std::vector<Elem>& last = fam.choices[n - 1];
    const std::size_t nl = last.size();
    bool full = nl == q;
    for (std::size_t i = 0; full && i < nl; ++i) full = last[i] == i;

    // partial[l][r]: row value from coordinates < l
    const std::size_t P = prefix.size();
    std::vector<std::vector<std::uint8_t>> partial(n, std::vector<std::uint8_t>(R, 0));
    for (std::size_t r = 0; r < R; ++r) {
        std::uint8_t v = 0;
        for (std::size_t i = 0; i < P; ++i) v = ker.add[v * q + ker.mul[prefix[i] * q + live[r].coef[i]]];
        partial[P][r] = v;
    }
    std::vector<std::size_t> idx(n, 0);
    std::vector<Elem> coeffs(n, 0);
    for (std::size_t i = 0; i < P; ++i) coeffs[i] = prefix[i];
    for (std::size_t i = P; i + 1 < n; ++i) {
        if (fam.choices[i].empty()) return {};
        coeffs[i] = fam.choices[i][0];
    }
    auto refresh = [&](std::size_t from) {
        for (std::size_t l = from; l + 1 < n; ++l)
            for (std::size_t r = 0; r < R; ++r)
                partial[l + 1][r] = ker.add[partial[l][r] * q + ker.mul[coeffs[l] * q + live[r].coef[l]]];
    };
    refresh(P);

    FamilyResult res;
    std::vector<std::uint16_t> acc(nl);
    const std::vector<std::uint8_t>& base = partial[n - 1];
    constexpr std::size_t kBlock = 8;
    for (;;) {
        std::fill(acc.begin(), acc.end(), 0);
        int extra = constant;
        bool abandoned = false;
        for (std::size_t r = 0; r < R; ++r) {
            const Live& L = live[r];
            std::uint8_t b = base[r];
            if (L.s == 0) {
                extra += static_cast<int>(ker.roots(L.g, b));
            } else {
                const std::uint8_t* row = L.tab + static_cast<std::size_t>(ker.mul[b * q + ker.inv[L.s]]) * q;
                if (full) {
                    for (std::size_t c = 0; c < nl; ++c) acc[c] += row[c];
                } else {
                    for (std::size_t c = 0; c < nl; ++c) acc[c] += row[last[c]];
                }
            }
            if (prune && (r + 1) % kBlock == 0 && r + 1 < R) {
                int top = *std::max_element(acc.begin(), acc.end());
                if (top + extra + tail[r + 1] <= res.best) {
                    abandoned = true;
                    break;
                }
            }
        }
        res.examined += nl;
        if (abandoned) {
            res.pruned += nl;
        } else {
            for (std::size_t c = 0; c < nl; ++c) {
                int total = acc[c] + extra;
                if (total <= res.best) continue;
                coeffs[n - 1] = last[c];
                auto exact = check ? check(coeffs, total) : std::optional<int>(total);
                if (!exact) {
                    ++res.rejected;
                    continue;
                }
                res.best = *exact;
                res.witness = coeffs;
            }
        }
        // advance the odometer over coordinates P..n-2
        std::size_t l = n - 1;
        bool done = true;
        while (l > P) {
            --l;
            if (++idx[l] < fam.choices[l].size()) {
                coeffs[l] = fam.choices[l][idx[l]];
                done = false;
                break;
            }
            idx[l] = 0;
            coeffs[l] = fam.choices[l][0];
        }
        if (done) break;
        refresh(l);
    }
    return res;
}

CandidateCheck genus_check(const BaseCurve& base, const LinearFamily& fam, int genus) {
    // The family is shared between worker threads; everything captured is read-only.
    return [base, &fam, genus](const std::vector<Elem>& coeffs, int fast) -> std::optional<int> {
        CurveFunction f = fam.combine(coeffs);
        if (f.is_zero()) return std::nullopt;
        auto g = cover_genus(base, f, fam.m);
        if (!g || *g != genus) return std::nullopt;
        int exact = static_cast<int>(count_cover_points_exact(base, f, fam.m));
        if (exact != fast)
            throw std::logic_error("fast count " + std::to_string(fast) + " disagrees with exact count " +
                                   std::to_string(exact) + " for " + f.to_string());
        return exact;
    };
}

// ---------------------------------------------------------------------------
// job driver

namespace {

struct JobResult {
    FamilyResult r;
    bool done = false;
};

std::string join_coeffs(const std::vector<Elem>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s.empty() ? "-" : s;
}

std::vector<Elem> split_coeffs(const std::string& s) {
    std::vector<Elem> out;
    if (s == "-") return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<Elem>(std::stoul(item)));
    return out;
}

}  // namespace

SearchOutcome run_jobs(const std::vector<SearchJob>& jobs, const SearchOptions& opt) {
    std::vector<JobResult> results(jobs.size());
    std::string ckpt_path;
    if (!opt.checkpoint_dir.empty()) {
        std::filesystem::create_directories(opt.checkpoint_dir);
        ckpt_path = opt.checkpoint_dir + "/" + (opt.checkpoint_name.empty() ? "search" : opt.checkpoint_name) + ".ckpt";
        std::ifstream in(ckpt_path);
        std::string line;
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::size_t i;
            int best;
            std::uint64_t ex, pr, rj;
            std::string coeffs, label;
            if (!(ss >> i >> best >> ex >> pr >> rj >> coeffs)) continue;
            std::getline(ss >> std::ws, label);
            if (i >= jobs.size() || jobs[i].label != label) continue;
            results[i].r = FamilyResult{best, split_coeffs(coeffs), ex, pr, rj};
            results[i].done = true;
        }
    }
    std::mutex io;
    std::ofstream out;
    if (!ckpt_path.empty()) out.open(ckpt_path, std::ios::app);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            if (results[i].done) continue;
            try {
                const SearchJob& J = jobs[i];
                results[i].r = search_family(*J.family, J.prefix, J.check, opt.prune);
                results[i].done = true;
                if (out.is_open()) {
                    std::lock_guard<std::mutex> lock(io);
                    auto& r = results[i].r;
                    out << i << ' ' << r.best << ' ' << r.examined << ' ' << r.pruned << ' ' << r.rejected << ' '
                        << join_coeffs(r.witness) << ' ' << J.label << '\n';
                    out.flush();
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(io);
                if (!failure) failure = std::current_exception();
                next = jobs.size();
                return;
            }
        }
    };
    unsigned w = std::max(1u, opt.workers);
    if (w == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < w; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    SearchOutcome out_;
    out_.jobs = jobs.size();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const FamilyResult& r = results[i].r;
        out_.examined += r.examined;
        out_.pruned += r.pruned;
        out_.rejected += r.rejected;
        if (r.best > out_.max_points) {
            out_.max_points = r.best;
            CurveFunction f = jobs[i].family->combine(r.witness);
            out_.witness = SearchWitness{jobs[i].base, f.to_string(), jobs[i].label, r.witness, r.best};
        }
    }
    return out_;
}

std::vector<SearchJob> split_family(const std::string& label, std::shared_ptr<const LinearFamily> fam,
                                    const CandidateCheck& check, const std::string& base, int split) {
    std::size_t depth = std::min<std::size_t>(static_cast<std::size_t>(std::max(split, 0)), fam->dimension() - 1);
    std::vector<SearchJob> jobs;
    std::vector<Elem> prefix;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == depth) {
            std::string tag = label;
            if (!prefix.empty()) tag += "[" + join_coeffs(prefix) + "]";
            jobs.push_back(SearchJob{tag, fam, prefix, check, base});
            return;
        }
        for (Elem c : fam->choices[i]) {
            prefix.push_back(c);
            rec(i + 1);
            prefix.pop_back();
        }
    };
    rec(0);
    return jobs;
}

// ---------------------------------------------------------------------------
// Riemann-Roch bases on elliptic curves

std::vector<CurveFunction> rr_basis_8(const EllipticCurve& E) {
    auto t = E.marked_t();
    if (!t || *t == 0) throw std::invalid_argument("marked point must have nonzero y-coordinate");
    const FieldPtr& F = E.field();
    const Field& K = *F;
    Elem slope = K.div(E.a4(), K.mul(2, *t));
    Elem mt = K.neg(*t);
    auto mono = [&](Elem c, int d) { return Poly::monomial(F, c, d); };
    return {
        CurveFunction::polynomial(mono(1, 4)),
        CurveFunction::with_y(mono(mt, 2), mono(1, 2)),
        CurveFunction::polynomial(mono(1, 3)),
        CurveFunction::with_y(mono(mt, 1), mono(1, 1)),
        CurveFunction::polynomial(mono(1, 2)),
        CurveFunction::with_y(mono(K.neg(slope), 1) + Poly::constant(F, mt), mono(1, 0)),
    };
}

std::vector<CurveFunction> rr_basis_7(const EllipticCurve& E) {
    auto b = rr_basis_8(E);
    b.erase(b.begin());
    return b;
}

std::vector<CurveFunction> rr_basis_origin(const EllipticCurve& E, int pole) {
    const FieldPtr& F = E.field();
    auto mono = [&](int d) { return Poly::monomial(F, 1, d); };
    std::vector<CurveFunction> b{
        CurveFunction::polynomial(mono(3)),
        CurveFunction::with_y(Poly(F), mono(1)),
        CurveFunction::polynomial(mono(2)),
        CurveFunction::with_y(Poly(F), mono(0)),
        CurveFunction::polynomial(mono(1)),
        CurveFunction::polynomial(mono(0)),
    };
    if (pole == 5) {
        b.erase(b.begin());
    } else if (pole != 6) {
        throw std::invalid_argument("pole order must be 5 or 6");
    }
    return b;
}

std::vector<FamilyRow> place_rows(const BaseCurve& C, const std::vector<CurveFunction>& basis,
                                  const std::vector<std::pair<Place, int>>& prescribed, int m) {
    const Field& K = C.F();
    std::vector<FamilyRow> rows;
    for (const Place& P : C.rational_places()) {
        int n = 0;
        for (auto& [Q, v] : prescribed)
            if (Q == P) n = v;
        FamilyRow row;
        row.d = n == 0 ? m : std::gcd(m, std::abs(n));
        for (const CurveFunction& b : basis) {
            Elem c = 0;
            bool direct = n == 0 && P.kind == Place::Kind::Affine && b.D.eval(P.x) != 0;
            if (direct) {
                c = b.A.eval(P.x);
                if (!b.B.is_zero()) c = K.add(c, K.mul(P.y, b.B.eval(P.x)));
                c = K.div(c, b.D.eval(P.x));
            } else {
                Series s = C.expand(b, P, n + 1);
                c = s.coeff_at(n);
            }
            row.coeffs.push_back(c);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// elliptic bases

namespace {

std::vector<Elem> all_elements(const Field& K) {
    std::vector<Elem> v(K.order());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::string point_label(const ECPoint& Q) {
    if (Q.infinity) return "O";
    return "(" + std::to_string(Q.x) + "," + std::to_string(Q.y) + ")";
}

std::string model_string(const BaseCurve& C) { return "y^2 = " + C.h().to_string(); }

}  // namespace

std::vector<SearchJob> elliptic_cover_jobs(const EllipticCurve& E, const std::string& label) {
    const FieldPtr& F = E.field();
    const Field& K = *F;
    require_large_characteristic(K);
    Elem nu = K.least_nonsquare();
    std::vector<SearchJob> jobs;
    for (const ECPoint& Q : q_representatives(E)) {
        EllipticCurve model = Q.infinity ? E : E.shifted_to(Q);
        BaseCurve C = model.as_base();
        Place inf = C.infinite_places().at(0);
        for (int pole : {8, 7}) {
            std::vector<CurveFunction> basis;
            std::vector<std::pair<Place, int>> prescribed;
            if (Q.infinity) {
                basis = rr_basis_origin(model, pole - 2);
                prescribed = {{inf, -(pole - 2)}};
            } else {
                basis = pole == 8 ? rr_basis_8(model) : rr_basis_7(model);
                Place q0{Place::Kind::Affine, 0, *model.marked_t()};
                prescribed = {{q0, 2}, {inf, -pole}};
            }
            auto fam = std::make_shared<LinearFamily>();
            fam->field = F;
            fam->m = 2;
            fam->basis = basis;
            fam->choices.assign(basis.size(), all_elements(K));
            fam->choices[0] = {1, nu};
            fam->rows = place_rows(C, basis, prescribed, 2);
            CandidateCheck check = genus_check(C, *fam, 4);
            std::string tag = label + " Q=" + point_label(Q) + " L" + std::to_string(pole);
            auto part = split_family(tag, fam, check, model_string(C), 2);
            jobs.insert(jobs.end(), part.begin(), part.end());
        }
    }
    return jobs;
}

SearchOutcome double_covers_genus_4(const EllipticCurve& E, const SearchOptions& opt) {
    std::string label = "E[" + std::to_string(E.a4()) + "," + std::to_string(E.a6()) + "]";
    return run_jobs(elliptic_cover_jobs(E, label), opt);
}

SearchOutcome double_covers_given_trace(const FieldPtr& F, long trace, const SearchOptions& opt) {
    require_large_characteristic(*F);
    long q = F->order();
    if (trace * trace > 4 * q) throw std::domain_error("trace violates the Hasse bound");
    CurveClassSet set = enumerate_classes(F, trace);
    std::vector<SearchJob> jobs;
    for (const EllipticCurve& E : set.representatives) {
        std::string label = "E[" + std::to_string(E.a4()) + "," + std::to_string(E.a6()) + "]";
        auto part = elliptic_cover_jobs(E, label);
        jobs.insert(jobs.end(), part.begin(), part.end());
    }
    return run_jobs(jobs, opt);
}

std::uint64_t trace_search_size(const FieldPtr& F, long trace) {
    std::uint64_t q = F->order();
    std::uint64_t per_q = 2 * q * q * q * q * q + 2 * q * q * q * q;
    std::uint64_t total = 0;
    for (const EllipticCurve& E : enumerate_classes(F, trace).representatives)
        total += per_q * q_representatives(E).size();
    return total;
}

// ---------------------------------------------------------------------------
// genus-2 bases

std::vector<std::vector<Elem>> null_space(const Field& K, std::vector<std::vector<Elem>> rows, std::size_t n) {
    std::vector<int> pivot_of(n, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        Elem inv = K.inv(rows[rank][col]);
        for (auto& v : rows[rank]) v = K.mul(v, inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Elem c = rows[r][col];
            for (std::size_t j = 0; j < n; ++j) rows[r][j] = K.sub(rows[r][j], K.mul(c, rows[rank][j]));
        }
        pivot_of[col] = static_cast<int>(rank);
        ++rank;
    }
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (pivot_of[free] >= 0) continue;
        std::vector<Elem> v(n, 0);
        v[free] = 1;
        for (std::size_t col = 0; col < n; ++col)
            if (pivot_of[col] >= 0) v[col] = K.neg(rows[pivot_of[col]][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

CurveFunction mapped_function(const CurveFunction& f, const Embedding& e) {
    return CurveFunction(f.A.mapped(e.big, e.image), f.B.mapped(e.big, e.image), f.D.mapped(e.big, e.image));
}

CurveFunction combine_functions(const FieldPtr& F, const std::vector<CurveFunction>& fs, const std::vector<Elem>& c) {
    LinearFamily tmp;
    tmp.field = F;
    tmp.basis = fs;
    return tmp.combine(c);
}

// Equations "coefficient of t^e vanishes" for e in [lo, n).
void vanishing_rows(const Field& K, const std::vector<Series>& exps, int lo, int n,
                    std::vector<std::vector<Elem>>& out) {
    for (int e = lo; e < n; ++e) {
        std::vector<Elem> row;
        for (auto& s : exps) row.push_back(s.coeff_at(e));
        out.push_back(std::move(row));
    }
    (void)K;
}

// Projective points of F^k up to squares: first nonzero coordinate in {1, nu}.
std::vector<std::vector<std::vector<Elem>>> square_classes(const Field& K, std::size_t k) {
    Elem nu = K.least_nonsquare();
    std::vector<std::vector<std::vector<Elem>>> out;
    for (std::size_t lead = 0; lead < k; ++lead) {
        std::vector<std::vector<Elem>> ch(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (i < lead) ch[i] = {0};
            else if (i == lead) ch[i] = {1, nu};
            else ch[i] = all_elements(K);
        }
        out.push_back(std::move(ch));
    }
    return out;
}

}  // namespace

SearchOutcome double_covers_genus_4(const Poly& sextic, const SearchOptions& opt) {
    const FieldPtr& F = sextic.field();
    const Field& K = *F;
    if (K.characteristic() == 2) throw std::domain_error("genus-2 searches need odd characteristic");
    if (sextic.degree() != 5 && sextic.degree() != 6) throw std::invalid_argument("model must have degree 5 or 6");
    BaseCurve C0 = BaseCurve::hyperelliptic(sextic);

    // Pick a rational point to serve as the pole of f; move it to infinity.
    BaseCurve C = C0;
    Place inf;
    auto infs = C0.infinite_places();
    if (!infs.empty()) {
        inf = infs[0];
    } else {
        auto pts = C0.rational_places();
        if (pts.empty()) return SearchOutcome{};
        Place p0 = pts[0];
        C = shift_to_infinity(C0, CurveFunction::polynomial(Poly::constant(F, 1)), p0.x).first;
        inf = Place{Place::Kind::Infinity, 0, p0.y};
        if (!C.on_curve(inf)) throw std::logic_error("moved point is not at infinity");
    }
    std::string base = model_string(C);

    // L(6 inf) inside {A + yB : deg A <= 6, deg B <= 3}.
    std::vector<CurveFunction> ambient;
    for (int i = 0; i <= 6; ++i) ambient.push_back(CurveFunction::polynomial(Poly::monomial(F, 1, i)));
    for (int j = 0; j <= 3; ++j) ambient.push_back(CurveFunction::with_y(Poly(F), Poly::monomial(F, 1, j)));
    std::vector<std::vector<Elem>> eqs;
    for (const Place& P : C.infinite_places()) {
        std::vector<Series> exps;
        for (auto& b : ambient) exps.push_back(C.expand(b, P, 1));
        vanishing_rows(K, exps, -12, P == inf ? -6 : 0, eqs);
    }
    if (C.infinite_places().size() == 1 && C.h().degree() == 6)
        throw std::logic_error("a sextic model has zero or two rational points at infinity");
    std::vector<CurveFunction> V;
    for (auto& v : null_space(K, eqs, ambient.size())) V.push_back(combine_functions(F, ambient, v));
    if (V.size() != 5) throw std::logic_error("L(6 inf) has unexpected dimension " + std::to_string(V.size()));

    // Expansions of the basis at every rational place, deep enough for the
    // conditions imposed by D'.
    std::vector<Place> places = C.rational_places();
    std::vector<std::vector<Series>> local(places.size());
    for (std::size_t i = 0; i < places.size(); ++i)
        for (auto& b : V) local[i].push_back(C.expand(b, places[i], 6));
    auto lowest = [&](std::size_t i) { return places[i] == inf ? -6 : 0; };

    // Quadratic points: over F_{q^2}, with F_q coordinates via a fixed basis {1, theta}.
    FieldPtr F2 = Field::make(K.characteristic(), 2 * K.degree());
    Embedding emb = make_embedding(F, F2);
    const Field& K2 = *F2;
    std::vector<std::int64_t> back(K2.order(), -1);
    for (Elem a = 0; a < K.order(); ++a) back[emb(a)] = a;
    Elem theta = 0;
    for (Elem a = 0; a < K2.order(); ++a)
        if (back[a] < 0) {
            theta = a;
            break;
        }
    std::uint64_t qq = K.order();
    Elem theta_q = K2.pow(theta, static_cast<std::int64_t>(qq));
    Elem denom = K2.inv(K2.sub(theta, theta_q));
    auto split = [&](Elem e) -> std::pair<Elem, Elem> {
        Elem v = K2.mul(K2.sub(e, K2.pow(e, static_cast<std::int64_t>(qq))), denom);
        Elem u = K2.sub(e, K2.mul(v, theta));
        if (back[u] < 0 || back[v] < 0) throw std::logic_error("coordinate split left the subfield");
        return {static_cast<Elem>(back[u]), static_cast<Elem>(back[v])};
    };
    BaseCurve C2 = C.base_change(emb);
    std::vector<CurveFunction> V2;
    for (auto& b : V) V2.push_back(mapped_function(b, emb));
    Poly h2 = C.h().mapped(F2, emb.image);

    std::vector<SearchJob> jobs;
    CandidateCheck dummy;
    auto add_divisor = [&](const std::string& tag, std::vector<std::vector<Elem>> conds,
                           const std::vector<std::pair<Place, int>>& prescribed) {
        auto ker = null_space(K, std::move(conds), V.size());
        if (ker.empty()) return;
        std::vector<CurveFunction> L;
        for (auto& v : ker) L.push_back(combine_functions(F, V, v));
        std::vector<FamilyRow> rows = place_rows(C, L, prescribed, 2);
        int part = 0;
        for (auto& ch : square_classes(K, L.size())) {
            auto fam = std::make_shared<LinearFamily>();
            fam->field = F;
            fam->m = 2;
            fam->basis = L;
            fam->choices = ch;
            fam->rows = rows;
            CandidateCheck check = genus_check(C, *fam, 4);
            jobs.push_back(SearchJob{tag + "#" + std::to_string(part++), fam, {}, check, base});
        }
    };
    // D' = P_i + P_j, rational
    for (std::size_t i = 0; i < places.size(); ++i)
        for (std::size_t j = i; j < places.size(); ++j) {
            std::map<std::size_t, int> mult;
            ++mult[i];
            ++mult[j];
            std::vector<std::vector<Elem>> conds;
            std::vector<std::pair<Place, int>> prescribed;
            bool has_inf = false;
            for (auto& [k, m] : mult) {
                int n = 2 * m + lowest(k);
                vanishing_rows(K, local[k], lowest(k), n, conds);
                prescribed.push_back({places[k], n});
                has_inf = has_inf || places[k] == inf;
            }
            if (!has_inf) prescribed.push_back({inf, -6});
            add_divisor("D'=P" + std::to_string(i) + "+P" + std::to_string(j), std::move(conds), prescribed);
        }
    // D' a place of degree 2
    auto quadratic_place = [&](const std::string& tag, Elem xa, Elem yb) {
        Place P{Place::Kind::Affine, xa, yb};
        std::vector<std::vector<Elem>> conds;
        for (int e = 0; e < 2; ++e) {
            std::vector<Elem> re, im;
            for (auto& b : V2) {
                auto [u, v] = split(C2.expand(b, P, 2).coeff_at(e));
                re.push_back(u);
                im.push_back(v);
            }
            conds.push_back(re);
            conds.push_back(im);
        }
        add_divisor(tag, std::move(conds), {{inf, -6}});
    };
    for (Elem x0 = 0; x0 < K.order(); ++x0) {
        Elem v = C.h().eval(x0);
        if (v == 0 || K.is_square(v)) continue;
        quadratic_place("D'=x" + std::to_string(x0), emb(x0), K2.sqrt(emb(v)));
    }
    for (Elem a = 0; a < K2.order(); ++a) {
        if (back[a] >= 0) continue;
        Elem conj = K2.pow(a, static_cast<std::int64_t>(qq));
        if (conj < a) continue;
        Elem v = h2.eval(a);
        if (!K2.is_square(v)) continue;
        Elem b = K2.sqrt(v);
        for (Elem y : {b, K2.neg(b)})
            quadratic_place("D'=(" + std::to_string(a) + "," + std::to_string(y) + ")", a, y);
    }
    (void)dummy;
    return run_jobs(jobs, opt);
}

}  // namespace g4
