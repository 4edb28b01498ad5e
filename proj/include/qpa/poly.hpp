#pragma once

#include "qpa/rat.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <vector>

namespace qpa {

/// Dense univariate polynomial over Q, coefficients low degree first.
/// The zero polynomial is the empty vector; otherwise the top coefficient is nonzero.
class Poly {
public:
    std::vector<Rat> c;

    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(const Rat& r) {
        if (r == 0) return Poly();
        return Poly(std::vector<Rat>{r});
    }
    static Poly monomial(const Rat& r, int deg) {
        if (r == 0) return Poly();
        std::vector<Rat> v(static_cast<size_t>(deg) + 1, Rat(0));
        v.back() = r;
        return Poly(std::move(v));
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    const Rat& lead() const { return c.back(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        }
        return Poly(std::move(r));
    }
    Poly operator*(const Rat& s) const {
        if (s == 0) return Poly();
        Poly r(*this);
        for (auto& x : r.c) x *= s;
        return r;
    }
    Poly operator-() const { return *this * Rat(-1); }

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        assert(!b.is_zero());
        Poly rem = a;
        if (a.degree() < b.degree()) return {Poly(), rem};
        std::vector<Rat> q(static_cast<size_t>(a.degree() - b.degree()) + 1, Rat(0));
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            int d = rem.degree() - b.degree();
            Rat f = rem.lead() / b.lead();
            q[static_cast<size_t>(d)] = f;
            for (size_t i = 0; i < b.c.size(); ++i) rem.c[i + static_cast<size_t>(d)] -= f * b.c[i];
            rem.trim();
        }
        return {Poly(std::move(q)), rem};
    }

    /// True iff b divides a exactly.
    static bool divides(const Poly& b, const Poly& a) {
        if (a.is_zero()) return true;
        return divmod(a, b).second.is_zero();
    }

    /// Monic gcd via the Euclidean algorithm with per-step normalization.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            b.make_monic();
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a.make_monic();
        return a;
    }

    void make_monic() {
        if (is_zero()) return;
        Rat inv = Rat(1) / lead();
        for (auto& x : c) x *= inv;
    }

    Rat eval(const Rat& x) const {
        Rat r(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    }

    /// Scales to an integer polynomial with content 1 and positive leading coefficient.
    /// Returns the factor the polynomial was multiplied by.
    Rat make_primitive() {
        if (is_zero()) return Rat(1);
        mpz_class num_gcd(0), den_lcm(1);
        for (const auto& x : c) {
            if (x == 0) continue;
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
        }
        Rat f(den_lcm, num_gcd);
        f.canonicalize();
        if (lead() < 0) f = -f;
        for (auto& x : c) x *= f;
        return f;
    }

    std::string to_string(const std::string& var = "v") const;
};

/// Sparse Laurent polynomial over Q: map from exponent (possibly negative) to coefficient.
class Laurent {
public:
    std::map<int, Rat> t;

    Laurent() = default;
    static Laurent constant(const Rat& r) {
        Laurent l;
        if (r != 0) l.t[0] = r;
        return l;
    }
    static Laurent monomial(const Rat& r, int e) {
        Laurent l;
        if (r != 0) l.t[e] = r;
        return l;
    }
    static Laurent from_poly(const Poly& p, int shift = 0) {
        Laurent l;
        for (size_t i = 0; i < p.c.size(); ++i)
            if (p.c[i] != 0) l.t[static_cast<int>(i) + shift] = p.c[i];
        return l;
    }

    bool is_zero() const { return t.empty(); }
    int minexp() const { return t.begin()->first; }
    int maxexp() const { return t.rbegin()->first; }

    void prune() {
        for (auto it = t.begin(); it != t.end();) {
            if (it->second == 0) it = t.erase(it); else ++it;
        }
    }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.t == b.t; }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (const auto& [e, c] : b.t) r.t[e] += c;
        r.prune();
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (const auto& [e, c] : b.t) r.t[e] -= c;
        r.prune();
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.t)
            for (const auto& [eb, cb] : b.t) r.t[ea + eb] += ca * cb;
        r.prune();
        return r;
    }
    Laurent operator*(const Rat& s) const {
        Laurent r;
        if (s == 0) return r;
        for (const auto& [e, c] : t) r.t[e] = c * s;
        return r;
    }
    Laurent operator-() const { return *this * Rat(-1); }

    /// Bar involution v -> v^{-1}.
    Laurent bar() const {
        Laurent r;
        for (const auto& [e, c] : t) r.t[-e] = c;
        return r;
    }

    Laurent shifted(int k) const {
        Laurent r;
        for (const auto& [e, c] : t) r.t[e + k] = c;
        return r;
    }

    /// Splits as v^shift * poly with poly(0) != 0 (zero gives shift 0, empty poly).
    std::pair<int, Poly> to_poly() const {
        if (is_zero()) return {0, Poly()};
        int lo = minexp(), hi = maxexp();
        std::vector<Rat> v(static_cast<size_t>(hi - lo) + 1, Rat(0));
        for (const auto& [e, c] : t) v[static_cast<size_t>(e - lo)] = c;
        return {lo, Poly(std::move(v))};
    }

    std::string to_string(const std::string& var = "v") const;
};

inline std::string term_str(const Rat& c, int e, const std::string& var, bool first) {
    std::string s;
    Rat a = c;
    if (a < 0) { s += first ? "-" : " - "; a = -a; }
    else if (!first) s += " + ";
    bool unit_coeff = (a == 1) && e != 0;
    if (!unit_coeff) s += a.get_den() == 1 ? a.get_num().get_str() : rat_to_string(a);
    if (e != 0) {
        if (!unit_coeff) s += "*";
        s += var;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

inline std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (int e = degree(); e >= 0; --e) {
        const Rat& cc = c[static_cast<size_t>(e)];
        if (cc == 0) continue;
        s += term_str(cc, e, var, first);
        first = false;
    }
    return s;
}

inline std::string Laurent::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        s += term_str(it->second, it->first, var, first);
        first = false;
    }
    return s;
}

} // namespace qpa
