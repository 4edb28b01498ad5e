#pragma once

#include "qpa/laurent_rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace qpa {

/// The n-th cyclotomic polynomial, monic over Z.
inline Poly cyclotomic_poly(int n) {
    static std::map<int, Poly> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<Poly(int)> phi = [&](int m) -> Poly {
        auto c = cache.find(m);
        if (c != cache.end()) return c->second;
        std::vector<Rat> xm(static_cast<size_t>(m) + 1, Rat(0));
        xm[0] = Rat(-1);
        xm.back() = Rat(1);
        Poly r(std::move(xm)); // x^m - 1
        for (int d = 1; d < m; ++d) {
            if (m % d == 0) r = Poly::divmod(r, phi(d)).first;
        }
        cache[m] = r;
        return r;
    };
    return phi(n);
}

/// The field Q(zeta_{2p}) presented as Q[x]/Phi_{2p}(x), with x the class of q.
class CycField {
public:
    int p;
    int order;                 // 2p: multiplicative order of q
    int deg;                   // phi(2p)
    Poly phi;                  // Phi_{2p}, monic
    std::vector<std::vector<Rat>> qpow_tab; // x^k mod phi, k = 0..2p-1

    explicit CycField(int p_) : p(p_), order(2 * p_), phi(cyclotomic_poly(2 * p_)) {
        deg = phi.degree();
        // successive powers of x reduced mod phi
        std::vector<Rat> cur(static_cast<size_t>(deg), Rat(0));
        cur[0] = Rat(1);
        for (int k = 0; k < order; ++k) {
            qpow_tab.push_back(cur);
            // multiply by x
            Rat top = cur.back();
            for (int i = deg - 1; i > 0; --i) cur[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
            cur[0] = Rat(0);
            if (top != 0)
                for (int i = 0; i < deg; ++i) cur[static_cast<size_t>(i)] -= top * phi.c[static_cast<size_t>(i)];
        }
    }

    static const CycField& get(int p) {
        static std::map<int, std::unique_ptr<CycField>> fields;
        static std::mutex mx;
        std::lock_guard<std::mutex> lock(mx);
        auto& f = fields[p];
        if (!f) {
            if (p < 2) throw std::invalid_argument("root mode requires p >= 2");
            f = std::make_unique<CycField>(p);
        }
        return *f;
    }
};

/// Element of Q(zeta_{2p}) in the power basis of Phi_{2p}. A default-constructed
/// value is the field-independent zero, compatible with any field.
class Cyc {
public:
    const CycField* F = nullptr;
    std::vector<Rat> c; // length F->deg when F set

    Cyc() = default;
    Cyc(const CycField& field, std::vector<Rat> coeffs) : F(&field), c(std::move(coeffs)) {
        assert(static_cast<int>(c.size()) == field.deg);
    }
    static Cyc zero() { return Cyc(); }
    static Cyc from_rat(const CycField& field, const Rat& r) {
        std::vector<Rat> v(static_cast<size_t>(field.deg), Rat(0));
        v[0] = r;
        return Cyc(field, std::move(v));
    }
    static Cyc q_pow(const CycField& field, long e) {
        long m = e % field.order;
        if (m < 0) m += field.order;
        return Cyc(field, field.qpow_tab[static_cast<size_t>(m)]);
    }

    bool is_zero() const {
        if (!F) return true;
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }

    const CycField& field() const {
        if (!F) throw std::logic_error("zero Cyc has no field");
        return *F;
    }

    friend bool operator==(const Cyc& a, const Cyc& b) {
        if (!a.F || !b.F) return a.is_zero() && b.is_zero();
        check(a, b);
        return a.c == b.c;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        if (!a.F) return b;
        if (!b.F) return a;
        check(a, b);
        Cyc r = a;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
        return r;
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
    Cyc operator-() const {
        Cyc r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        if (!a.F || !b.F) return Cyc();
        check(a, b);
        int d = a.F->deg;
        std::vector<Rat> prod(static_cast<size_t>(2 * d - 1), Rat(0));
        for (int i = 0; i < d; ++i) {
            if (a.c[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < d; ++j)
                prod[static_cast<size_t>(i + j)] += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
        }
        // reduce mod phi from the top
        for (int k = 2 * d - 2; k >= d; --k) {
            Rat top = prod[static_cast<size_t>(k)];
            if (top == 0) continue;
            prod[static_cast<size_t>(k)] = 0;
            for (int i = 0; i < d; ++i)
                prod[static_cast<size_t>(k - d + i)] -= top * a.F->phi.c[static_cast<size_t>(i)];
        }
        prod.resize(static_cast<size_t>(d));
        return Cyc(*a.F, std::move(prod));
    }
    Cyc operator*(const Rat& s) const {
        Cyc r = *this;
        for (auto& x : r.c) x *= s;
        return r;
    }

    Cyc inv() const {
        if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
        // extended Euclid in Q[x]: u*a + v*phi = 1
        Poly a{std::vector<Rat>(c)};
        Poly r0 = F->phi, r1 = a;
        Poly s0, s1 = Poly::constant(Rat(1)); // coefficients of a
        while (!r1.is_zero()) {
            auto [q, r2] = Poly::divmod(r0, r1);
            Poly s2 = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 = gcd (nonzero constant since phi is irreducible and a != 0)
        assert(r0.degree() == 0);
        Poly u = s0 * (Rat(1) / r0.c[0]);
        std::vector<Rat> v(static_cast<size_t>(F->deg), Rat(0));
        for (size_t i = 0; i < u.c.size(); ++i) v[i] = u.c[i];
        return Cyc(*F, std::move(v));
    }
    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inv(); }

    Cyc& operator+=(const Cyc& o) { *this = *this + o; return *this; }
    Cyc& operator-=(const Cyc& o) { *this = *this - o; return *this; }
    Cyc& operator*=(const Cyc& o) { *this = *this * o; return *this; }

    /// Exact square root in the field, when one exists. Handles quadratic
    /// fields directly and degree-4 cyclotomic fields Q(zeta_{4p}) as a
    /// quadratic tower over Q(zeta_{2p}).
    std::optional<Cyc> sqrt() const {
        if (is_zero()) return Cyc();
        if (F->deg == 4 && F->order % 4 == 0) return sqrt_tower();
        if (F->deg != 2) return std::nullopt;
        // x satisfies x^2 = e1 x + e0; write elements as A + B*sqrt(D), D = e1^2 + 4 e0
        Rat e1 = -F->phi.c[1], e0 = -F->phi.c[0];
        Rat D = e1 * e1 + 4 * e0;
        // this = c0 + c1 x = (c0 + c1 e1/2) + (c1/2) sqrt(D)
        Rat A = c[0] + c[1] * e1 / 2;
        Rat B = c[1] / 2;
        auto mk = [&](const Rat& u, const Rat& v2) {
            // u + v2*sqrt(D) = (u + ... ) back to power basis: sqrt(D) = 2x - e1
            std::vector<Rat> w{u - v2 * e1, v2 * 2};
            return Cyc(*F, std::move(w));
        };
        if (B == 0) {
            if (auto s = rat_sqrt(A)) return mk(*s, Rat(0));
            if (D != 0) {
                Rat t = A / D;
                if (auto s = rat_sqrt(t)) return mk(Rat(0), *s);
            }
            return std::nullopt;
        }
        Rat N = A * A - B * B * D;
        auto tn = rat_sqrt(N);
        if (!tn) return std::nullopt;
        for (int sign = 0; sign < 2; ++sign) {
            Rat t = sign ? -*tn : *tn;
            Rat u2 = (A + t) / 2;
            if (auto u = rat_sqrt(u2)) {
                if (*u == 0) continue;
                Rat v2 = B / (2 * *u);
                return mk(*u, v2);
            }
        }
        return std::nullopt;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        Laurent l;
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) l.t[static_cast<int>(i)] = c[i];
        return l.to_string("q");
    }

private:
    static void check(const Cyc& a, const Cyc& b) {
        if (a.F != b.F) throw ModeError("cyclotomic arithmetic across different fields");
    }

    /// Square root in Q(zeta_{4p}) viewed as a quadratic extension of
    /// Q(zeta_{2p}) by x with x^2 = the subfield generator (Phi_{4p}(x) =
    /// Phi_{2p}(x^2) keeps even powers in the subfield).
    std::optional<Cyc> sqrt_tower() const {
        const CycField& sub = CycField::get(F->order / 4);
        assert(sub.deg == 2);
        auto down = [&](const Rat& lo, const Rat& hi) { return Cyc(sub, {lo, hi}); };
        auto up = [&](const Cyc& s) {
            // a + b y -> a + b x^2
            std::vector<Rat> w(4, Rat(0));
            w[0] = s.is_zero() ? Rat(0) : s.c[0];
            w[2] = s.is_zero() ? Rat(0) : s.c[1];
            return Cyc(*F, std::move(w));
        };
        Cyc u = down(c[0], c[2]); // even part
        Cyc v = down(c[1], c[3]); // odd part
        Cyc y = Cyc(sub, {Rat(0), Rat(1)}); // the subfield generator, = x^2 upstairs
        // want (x0 + x1 X)^2 = u + v X over the subfield, X^2 = y
        if (v.is_zero()) {
            if (auto s = u.sqrt()) return up(*s);
            Cyc t = u * y.inv();
            if (auto s = t.sqrt()) {
                // sqrt = s * X: upstairs s * x
                Cyc sx = up(*s);
                std::vector<Rat> xv(4, Rat(0));
                xv[1] = Rat(1);
                return sx * Cyc(*F, std::move(xv));
            }
            return std::nullopt;
        }
        Cyc N = u * u - v * v * y;
        auto t = N.sqrt();
        if (!t) return std::nullopt;
        Rat half(1, 2);
        for (int sign = 0; sign < 2; ++sign) {
            Cyc tt = sign ? -*t : *t;
            Cyc x0sq = (u + tt) * half;
            auto x0 = x0sq.sqrt();
            if (!x0 || x0->is_zero()) continue;
            Cyc x1 = v * (*x0 + *x0).inv();
            // assemble x0 + x1 * x upstairs
            Cyc big0 = up(*x0), big1 = up(x1);
            std::vector<Rat> xv(4, Rat(0));
            xv[1] = Rat(1);
            Cyc X(*F, std::move(xv));
            Cyc r = big0 + big1 * X;
            if (r * r == *this) return r;
        }
        return std::nullopt;
    }
};

/// Evaluates a Laurent polynomial at q = zeta_{2p}.
inline Cyc eval_at_root(const Laurent& l, const CycField& F) {
    Cyc r = Cyc::from_rat(F, Rat(0));
    for (const auto& [e, coeff] : l.t) r += Cyc::q_pow(F, e) * coeff;
    return r;
}

/// Pole-detecting specialization of a reduced rational function at q = zeta_{2p}.
inline Cyc specialize(const LRat& x, int p) {
    const CycField& F = CycField::get(p);
    if (x.is_zero()) return Cyc::from_rat(F, Rat(0));
    Cyc d = eval_at_root(Laurent::from_poly(x.den), F);
    if (d.is_zero())
        throw PoleError("denominator (" + x.den.to_string() + ") vanishes at q = exp(i*pi/" +
                        std::to_string(p) + ")");
    Cyc n = eval_at_root(x.num, F);
    return n * d.inv();
}

} // namespace qpa
