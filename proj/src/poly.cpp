#include "g4/poly.hpp"

#include <stdexcept>

namespace g4 {

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, Elem c, int degree) {
    std::vector<Elem> v(degree + 1, 0);
    v[degree] = c;
    return Poly(std::move(field), std::move(v));
}

Poly Poly::from_ints(FieldPtr field, std::initializer_list<long long> coeffs) {
    return from_ints(std::move(field), std::vector<long long>(coeffs));
}

Poly Poly::from_ints(FieldPtr field, const std::vector<long long>& coeffs) {
    std::vector<Elem> v;
    for (auto c : coeffs) v.push_back(field->from_int(c));
    return Poly(std::move(field), std::move(v));
}

Elem Poly::eval(Elem x) const {
    Elem v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = F().add(F().mul(v, x), c_[i]);
    return v;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(F().inv(lead()));
}

Poly Poly::derivative() const {
    std::vector<Elem> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(F().mul(F().from_int(static_cast<long long>(i)), c_[i]));
    return Poly(field_, std::move(d));
}

Poly Poly::scaled(Elem s) const {
    std::vector<Elem> v(c_);
    for (auto& x : v) x = F().mul(x, s);
    return Poly(field_, std::move(v));
}

Poly Poly::shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<Elem> v(k, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(field_, std::move(v));
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(field_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::compose(const Poly& g) const {
    Poly r(field_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(field_, c_[i]);
    return r;
}

Poly Poly::invert_at(Elem a, int n) const {
    if (degree() > n) throw std::invalid_argument("degree exceeds homogenizing degree");
    Poly lin(field_, {1, a});
    Poly r(field_);
    for (int i = 0; i <= degree(); ++i)
        if (c_[i] != 0) r = r + (lin.pow(i) * monomial(field_, c_[i], n - i));
    return r;
}

Poly Poly::mapped(FieldPtr target, const std::vector<Elem>& image) const {
    std::vector<Elem> v;
    for (auto c : c_) v.push_back(image[c]);
    return Poly(std::move(target), std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
    const FieldPtr& f = a.field_ ? a.field_ : b.field_;
    std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f->add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(f, std::move(v));
}

Poly operator-(const Poly& a) {
    std::vector<Elem> v(a.c_);
    for (auto& x : v) x = a.F().neg(x);
    return Poly(a.field_, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    const FieldPtr& f = a.field_ ? a.field_ : b.field_;
    if (a.is_zero() || b.is_zero()) return Poly(f);
    std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = f->add(v[i + j], f->mul(a.c_[i], b.c_[j]));
    }
    return Poly(f, std::move(v));
}

std::string Poly::to_string(char var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        Elem c = c_[i];
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        bool unit = c == 1 && i > 0;
        if (!unit) s += F().to_string(c);
        if (i > 0) {
            if (!unit) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const Field& F = b.F();
    std::vector<Elem> r(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {Poly(b.field()), a};
    std::vector<Elem> q(a.degree() - db + 1, 0);
    Elem inv_lead = F.inv(b.lead());
    for (int i = a.degree(); i >= db; --i) {
        Elem c = F.mul(r[i], inv_lead);
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b.coeff(j)));
    }
    return {Poly(b.field(), std::move(q)), Poly(b.field(), std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) return false;
    return gcd(f, f.derivative()).degree() == 0;
}

namespace {

// g with g^p = f, for f a polynomial in x^p.
Poly pth_root(const Poly& f) {
    const Field& F = f.F();
    std::uint32_t p = F.characteristic();
    std::int64_t e = F.order() / p;
    std::vector<Elem> v;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) v.push_back(F.pow(f.coeff(i), e));
    return Poly(f.field(), std::move(v));
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree decomposition of zero");
    std::vector<std::pair<Poly, int>> out;
    Poly g = f.monic();
    if (g.degree() <= 0) return out;
    Poly c = gcd(g, g.derivative());
    Poly w = g / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) out.emplace_back(z, i);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) {
        int p = static_cast<int>(f.F().characteristic());
        for (auto& [h, e] : squarefree_decomposition(pth_root(c))) out.emplace_back(h, e * p);
    }
    return out;
}

Poly radical(const Poly& f) {
    Poly r = Poly::constant(f.field(), 1);
    for (auto& [g, e] : squarefree_decomposition(f)) r = r * g;
    return r;
}

std::vector<std::pair<Poly, int>> split_by_multiplicity(const Poly& r, const Poly& f) {
    if (f.is_zero()) throw std::domain_error("multiplicities in the zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    Poly current = gcd(r, f);
    Poly outside = r.monic() / current;
    if (outside.degree() > 0) out.emplace_back(outside, 0);
    Poly g = f;
    int k = 1;
    while (current.degree() > 0) {
        g = g / current;
        Poly next = gcd(current, g);
        Poly exact = current / next;
        if (exact.degree() > 0) out.emplace_back(exact, k);
        current = next;
        ++k;
    }
    return out;
}

std::vector<Elem> roots(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
    std::vector<Elem> out;
    for (Elem x = 0; x < f.F().order(); ++x)
        if (f.eval(x) == 0) out.push_back(x);
    return out;
}

bool is_irreducible(const Poly& f) {
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    if (n <= 3) return roots(f).empty();
    // gcd(x^{q^i} - x, f) = 1 for all i <= n/2.
    Poly xq = Poly::x(f.field());
    Poly x = xq;
    for (int i = 1; 2 * i <= n; ++i) {
        Poly r = Poly::constant(f.field(), 1), b = xq;
        std::uint64_t e = f.F().order();
        while (e) {
            if (e & 1) r = (r * b) % f;
            b = (b * b) % f;
            e >>= 1;
        }
        xq = r;
        if (gcd(xq - x, f).degree() > 0) return false;
    }
    return true;
}

std::vector<Poly> monic_irreducibles(const FieldPtr& field, int degree) {
    std::vector<Poly> out;
    std::uint64_t count = 1;
    for (int i = 0; i < degree; ++i) count *= field->order();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<Elem> c(degree + 1);
        std::uint64_t t = idx;
        for (int i = 0; i < degree; ++i) {
            c[i] = static_cast<Elem>(t % field->order());
            t /= field->order();
        }
        c[degree] = 1;
        Poly p(field, std::move(c));
        if (is_irreducible(p)) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace g4
