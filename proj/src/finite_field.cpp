#include "g4/finite_field.hpp"

#include <numeric>
#include <stdexcept>

namespace g4 {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

using Coeffs = std::vector<std::uint32_t>;

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Remainder of a modulo the monic polynomial m over F_p (low-to-high).
Coeffs poly_rem(Coeffs a, const Coeffs& m, std::uint32_t p) {
    std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - dm;
        if (lead != 0)
            for (std::size_t i = 0; i < dm; ++i)
                a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
        a.pop_back();
    }
    return a;
}

Coeffs monic_from_index(std::uint64_t idx, std::uint32_t deg, std::uint32_t p) {
    Coeffs c(deg + 1, 0);
    for (std::uint32_t i = 0; i < deg; ++i) {
        c[i] = static_cast<std::uint32_t>(idx % p);
        idx /= p;
    }
    c[deg] = 1;
    return c;
}

bool is_irreducible(const Coeffs& f, std::uint32_t p) {
    std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Coeffs r = poly_rem(f, monic_from_index(idx, d, p), p);
            bool zero = true;
            for (auto c : r) zero = zero && c == 0;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > (1u << 22)) throw std::invalid_argument("field too large");
    }
    q_ = static_cast<std::uint32_t>(q);
    pow_p_.resize(k + 1, 1);
    for (std::uint32_t i = 1; i <= k; ++i) pow_p_[i] = pow_p_[i - 1] * p;

    if (k == 1) {
        modulus_ = {0, 1};
    } else {
        std::uint64_t count = q;
        bool found = false;
        for (std::uint64_t idx = 0; idx < count && !found; ++idx) {
            Coeffs f = monic_from_index(idx, k, p);
            if (f[0] != 0 && is_irreducible(f, p)) {
                modulus_ = f;
                found = true;
            }
        }
        if (!found) throw std::logic_error("no irreducible modulus found");
    }

    if (k > 1) {
        neg_table_.resize(q_);
        for (Elem a = 0; a < q_; ++a) {
            auto d = digits(a);
            for (auto& c : d) c = (p_ - c) % p_;
            neg_table_[a] = from_digits(d);
        }
    }

    // Smallest primitive element, found with schoolbook polynomial powers.
    auto slow_pow = [&](Elem a, std::uint64_t e) {
        Elem r = 1, b = a;
        while (e) {
            if (e & 1) r = poly_mulmod(r, b);
            b = poly_mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    Elem g = 0;
    auto divisors = prime_divisors(q_ - 1);
    for (Elem c = 1; c < q_ && g == 0; ++c) {
        bool primitive = true;
        for (auto r : divisors)
            if (slow_pow(c, (q_ - 1) / r) == 1) {
                primitive = false;
                break;
            }
        if (primitive) g = c;
    }
    if (q_ == 2) g = 1;
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
        exp_[i] = x;
        log_[x] = i;
        x = poly_mulmod(x, g);
    }
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t k) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (k < 1) throw std::invalid_argument("extension degree must be at least 1");
    return FieldPtr(new Field(p, k));
}

Elem Field::add_slow(Elem a, Elem b) const {
    Elem r = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * pow_p_[i];
        a /= p_;
        b /= p_;
    }
    return r;
}

Elem Field::poly_mulmod(Elem a, Elem b) const {
    if (k_ == 1) return static_cast<Elem>((std::uint64_t(a) * b) % p_);
    auto da = digits(a), db = digits(b);
    Coeffs prod(2 * k_ - 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i)
        for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    return from_digits(poly_rem(prod, modulus_, p_));
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Elem Field::pow(Elem a, std::int64_t e) const {
    if (a == 0) {
        if (e < 0) throw std::domain_error("negative power of zero");
        return e == 0 ? 1 : 0;
    }
    std::int64_t n = q_ - 1;
    std::int64_t s = (static_cast<std::int64_t>(log_[a]) * (((e % n) + n) % n)) % n;
    return exp_[s];
}

Elem Field::from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

std::uint32_t Field::log(Elem a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
}

Elem Field::exp(std::int64_t e) const {
    std::int64_t n = q_ - 1;
    return exp_[((e % n) + n) % n];
}

int Field::quadratic_character(Elem a) const {
    if (a == 0) return 0;
    if (p_ == 2) return 1;
    return (log_[a] % 2 == 0) ? 1 : -1;
}

Elem Field::sqrt(Elem a) const {
    if (a == 0) return 0;
    if (p_ == 2) return pow(a, q_ / 2);
    if (log_[a] % 2) throw std::domain_error("square root of a nonsquare");
    return exp_[log_[a] / 2];
}

Elem Field::least_nonsquare() const {
    for (Elem a = 1; a < q_; ++a)
        if (quadratic_character(a) < 0) return a;
    throw std::domain_error("every element is a square");
}

bool Field::is_power(Elem a, std::uint32_t m) const {
    if (a == 0) return true;
    std::uint32_t d = std::gcd(m, q_ - 1);
    return log_[a] % d == 0;
}

Elem Field::frobenius(Elem a) const { return pow(a, p_); }

std::vector<Elem> Field::frobenius_orbit(Elem a) const {
    std::vector<Elem> orbit{a};
    for (Elem b = frobenius(a); b != a; b = frobenius(b)) orbit.push_back(b);
    return orbit;
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
    std::vector<std::uint32_t> d(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

Elem Field::from_digits(const std::vector<std::uint32_t>& d) const {
    Elem r = 0;
    for (std::size_t i = 0; i < d.size() && i < k_; ++i) r += (d[i] % p_) * pow_p_[i];
    return r;
}

std::string Field::to_string(Elem a) const {
    if (k_ == 1) return std::to_string(a);
    auto d = digits(a);
    std::string s;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || d[i] != 1) s += std::to_string(d[i]);
        if (i >= 1) s += (d[i] != 1 ? "*a" : "a");
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

PowerResidueTable::PowerResidueTable(FieldPtr field, std::uint32_t m)
    : field_(std::move(field)), m_(m), counts_(field_->order(), 0) {
    if (m < 1) throw std::invalid_argument("exponent must be positive");
    for (Elem z = 0; z < field_->order(); ++z) ++counts_[field_->pow(z, m)];
}

Embedding make_embedding(FieldPtr small, FieldPtr big) {
    if (small->characteristic() != big->characteristic() || big->degree() % small->degree())
        throw std::invalid_argument("no embedding between these fields");
    Embedding e{small, big, std::vector<Elem>(small->order())};
    const auto& mod = small->modulus();
    Elem root = 0;
    bool found = small->degree() == 1;
    for (Elem a = 0; a < big->order() && !found; ++a) {
        Elem v = 0;
        for (std::size_t i = mod.size(); i-- > 0;) v = big->add(big->mul(v, a), mod[i]);
        if (v == 0) {
            root = a;
            found = true;
        }
    }
    if (!found) throw std::logic_error("modulus has no root in the larger field");
    for (Elem x = 0; x < small->order(); ++x) {
        auto d = small->digits(x);
        Elem v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = big->add(big->mul(v, root), d[i]);
        e.image[x] = v;
    }
    return e;
}

void require_large_characteristic(const Field& field, std::uint32_t min_char) {
    if (field.characteristic() < min_char)
        throw std::invalid_argument("characteristic " + std::to_string(field.characteristic()) +
                                    " is not supported here");
}

}  // namespace g4
