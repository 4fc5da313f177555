#include "g4/curves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace g4 {

EllipticCurve EllipticCurve::short_weierstrass(FieldPtr field, Elem a, Elem b) {
    if (a >= field->order() || b >= field->order()) throw std::invalid_argument("coefficient outside the field");
    EllipticCurve E;
    E.field_ = std::move(field);
    E.a4_ = a;
    E.a6_ = b;
    if (!is_squarefree(E.cubic())) throw std::invalid_argument("singular elliptic curve");
    return E;
}

EllipticCurve EllipticCurve::shifted(FieldPtr field, Elem r, Elem s, Elem t) {
    if (t == 0) throw std::invalid_argument("marked point has order 2 (t = 0)");
    if (r >= field->order() || s >= field->order() || t >= field->order())
        throw std::invalid_argument("coefficient outside the field");
    EllipticCurve E;
    E.field_ = std::move(field);
    E.a2_ = r;
    E.a4_ = s;
    E.a6_ = E.F().mul(t, t);
    E.t_ = t;
    if (!is_squarefree(E.cubic())) throw std::invalid_argument("singular elliptic curve");
    return E;
}

EllipticCurve EllipticCurve::shifted_to(const ECPoint& Q) const {
    if (Q.infinity || !contains(Q)) throw std::invalid_argument("marked point must be an affine point of E");
    const Field& K = F();
    Elem x0 = Q.x;
    Elem three = K.from_int(3), two = K.from_int(2);
    Elem r = K.add(a2_, K.mul(three, x0));
    Elem s = K.add(K.add(K.mul(three, K.mul(x0, x0)), K.mul(two, K.mul(a2_, x0))), a4_);
    return shifted(field_, r, s, Q.y);
}

Poly EllipticCurve::cubic() const { return Poly(field_, {a6_, a4_, a2_, 1}); }

bool EllipticCurve::contains(const ECPoint& P) const {
    if (P.infinity) return true;
    return F().mul(P.y, P.y) == cubic().eval(P.x);
}

std::vector<ECPoint> EllipticCurve::points() const {
    std::vector<ECPoint> out{ECPoint::at_infinity()};
    Poly c = cubic();
    for (Elem x = 0; x < F().order(); ++x) {
        Elem v = c.eval(x);
        if (v == 0) {
            out.push_back(ECPoint::affine(x, 0));
        } else if (F().is_square(v)) {
            Elem s = F().sqrt(v), t = F().neg(s);
            out.push_back(ECPoint::affine(x, std::min(s, t)));
            out.push_back(ECPoint::affine(x, std::max(s, t)));
        }
    }
    return out;
}

std::size_t EllipticCurve::count_points() const {
    Poly c = cubic();
    std::size_t n = 1;
    for (Elem x = 0; x < F().order(); ++x) n += 1 + F().quadratic_character(c.eval(x));
    return n;
}

long EllipticCurve::trace() const { return static_cast<long>(F().order()) + 1 - static_cast<long>(count_points()); }

ECPoint EllipticCurve::neg(const ECPoint& P) const {
    if (P.infinity) return P;
    return ECPoint::affine(P.x, F().neg(P.y));
}

ECPoint EllipticCurve::add(const ECPoint& P, const ECPoint& Q) const {
    if (!contains(P) || !contains(Q)) throw std::invalid_argument("point not on curve");
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const Field& K = F();
    Elem lambda;
    if (P.x == Q.x) {
        if (K.add(P.y, Q.y) == 0) return ECPoint::at_infinity();
        Elem num = K.add(K.add(K.mul(K.from_int(3), K.mul(P.x, P.x)), K.mul(K.from_int(2), K.mul(a2_, P.x))), a4_);
        lambda = K.div(num, K.add(P.y, P.y));
    } else {
        lambda = K.div(K.sub(Q.y, P.y), K.sub(Q.x, P.x));
    }
    Elem x3 = K.sub(K.sub(K.sub(K.mul(lambda, lambda), a2_), P.x), Q.x);
    Elem y3 = K.sub(K.mul(lambda, K.sub(P.x, x3)), P.y);
    return ECPoint::affine(x3, y3);
}

ECPoint EllipticCurve::mul(long n, const ECPoint& P) const {
    ECPoint base = n < 0 ? neg(P) : P;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    ECPoint r = ECPoint::at_infinity();
    while (k) {
        if (k & 1) r = add(r, base);
        base = add(base, base);
        k >>= 1;
    }
    return r;
}

std::vector<Elem> EllipticCurve::automorphism_units() const {
    if (!is_short()) throw std::logic_error("automorphisms are computed on short models");
    const Field& K = F();
    std::vector<Elem> out;
    for (Elem u = 1; u < K.order(); ++u)
        if (K.mul(a4_, K.pow(u, 4)) == a4_ && K.mul(a6_, K.pow(u, 6)) == a6_) out.push_back(u);
    return out;
}

ECPoint EllipticCurve::apply_automorphism(Elem u, const ECPoint& P) const {
    if (P.infinity) return P;
    return ECPoint::affine(F().mul(F().pow(u, 2), P.x), F().mul(F().pow(u, 3), P.y));
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::vector<CurveClass> all_curve_classes(const FieldPtr& field) {
    require_large_characteristic(*field);
    const Field& K = *field;
    std::uint32_t q = K.order();
    auto nonsingular = [&](Elem a, Elem b) {
        Elem d = K.add(K.mul(K.from_int(4), K.pow(a, 3)), K.mul(K.from_int(27), K.mul(b, b)));
        return d != 0;
    };
    UnionFind uf(static_cast<std::size_t>(q) * q);
    Elem g = K.generator();
    Elem g4 = K.pow(g, 4), g6 = K.pow(g, 6);
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b) {
            if (!nonsingular(a, b)) continue;
            std::uint32_t id = a * q + b;
            uf.unite(id, K.mul(a, g4) * q + K.mul(b, g6));
            uf.unite(id, K.frobenius(a) * q + K.frobenius(b));
        }
    std::map<std::uint32_t, std::size_t> sizes;
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b)
            if (nonsingular(a, b)) ++sizes[uf.find(a * q + b)];
    std::vector<CurveClass> out;
    for (auto& [root, size] : sizes) {
        Elem a = root / q, b = root % q;
        out.push_back(CurveClass{a, b, size, EllipticCurve::short_weierstrass(field, a, b).trace()});
    }
    return out;
}

CurveClassSet enumerate_classes(const FieldPtr& field, long trace) {
    CurveClassSet set{trace, {}, {}};
    if (static_cast<double>(trace) * trace > 4.0 * field->order()) return set;
    for (auto& c : all_curve_classes(field)) {
        if (c.trace != trace) continue;
        set.representatives.push_back(EllipticCurve::short_weierstrass(field, c.a, c.b));
        set.orbit_sizes.push_back(c.orbit_size);
    }
    return set;
}

std::vector<ECPoint> q_representatives(const EllipticCurve& E) {
    auto pts = E.points();
    std::map<ECPoint, std::size_t> index;
    for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = i;
    std::vector<std::size_t> triples;
    for (auto& P : pts) triples.push_back(index.at(E.mul(3, P)));
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

    // coset[i] = least index in pts[i] + 3E(k)
    std::vector<std::size_t> coset(pts.size(), SIZE_MAX);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (coset[i] != SIZE_MAX) continue;
        for (auto t : triples) coset[index.at(E.add(pts[i], pts[t]))] = i;
    }
    UnionFind orbits(pts.size());
    for (Elem u : E.automorphism_units())
        for (std::size_t i = 0; i < pts.size(); ++i)
            orbits.unite(static_cast<std::uint32_t>(coset[i]),
                         static_cast<std::uint32_t>(coset[index.at(E.apply_automorphism(u, pts[i]))]));

    std::map<std::uint32_t, std::optional<ECPoint>> best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::uint32_t root = orbits.find(static_cast<std::uint32_t>(coset[i]));
        auto& slot = best[root];
        if (root == orbits.find(static_cast<std::uint32_t>(coset[0]))) {
            slot = ECPoint::at_infinity();
            continue;
        }
        if (pts[i].infinity || pts[i].y == 0) continue;
        if (!slot || pts[i] < *slot) slot = pts[i];
    }
    std::vector<ECPoint> out;
    for (auto& [root, P] : best) {
        if (!P) throw std::logic_error("class without a point of order other than 2");
        out.push_back(*P);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_points_genus2(const Poly& f) {
    if (f.degree() != 5 && f.degree() != 6) throw std::invalid_argument("genus-2 model needs degree 5 or 6");
    return BaseCurve::hyperelliptic(f).count_points();
}

}  // namespace g4
