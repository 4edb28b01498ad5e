#pragma once

#include "qpa/poly.hpp"

namespace qpa {

/// Ratio of Laurent polynomials in v over Q, kept in canonical form:
/// the denominator is an ordinary integer polynomial with nonzero constant
/// term, content 1 and positive leading coefficient, coprime to the
/// polynomial part of the numerator. Equal values have equal representations.
class LRat {
public:
    Laurent num;
    Poly den; // invariant: nonzero, den.c[0] != 0, primitive, positive lead

    LRat() : den(Poly::constant(Rat(1))) {}
    LRat(const Laurent& n, const Poly& d) { assign(n, d); }
    explicit LRat(const Laurent& n) : num(n), den(Poly::constant(Rat(1))) {}
    explicit LRat(const Rat& r) : num(Laurent::constant(r)), den(Poly::constant(Rat(1))) {}
    explicit LRat(long i) : LRat(Rat(i)) {}

    static LRat monomial(const Rat& c, int e) { return LRat(Laurent::monomial(c, e)); }
    static LRat vpow(int e) { return monomial(Rat(1), e); }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return den.degree() == 0 && den.c[0] == 1 && num.t.size() == 1 && num.t.count(0) && num.t.at(0) == 1; }

    friend bool operator==(const LRat& a, const LRat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const LRat& a, const LRat& b) { return !(a == b); }

    friend LRat operator+(const LRat& a, const LRat& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        Poly g = Poly::gcd(a.den, b.den);
        Poly da = Poly::divmod(a.den, g).first;
        Poly db = Poly::divmod(b.den, g).first;
        Laurent n = a.num * Laurent::from_poly(db) + b.num * Laurent::from_poly(da);
        return LRat(n, a.den * db);
    }
    friend LRat operator-(const LRat& a, const LRat& b) { return a + (-b); }
    LRat operator-() const {
        LRat r = *this;
        r.num = -r.num;
        return r;
    }
    friend LRat operator*(const LRat& a, const LRat& b) {
        if (a.is_zero() || b.is_zero()) return LRat(Rat(0));
        // cross-reduce before multiplying to keep intermediates small
        auto [sa, pa] = a.num.to_poly();
        auto [sb, pb] = b.num.to_poly();
        Poly g1 = Poly::gcd(pa, b.den);
        Poly g2 = Poly::gcd(pb, a.den);
        Poly na = Poly::divmod(pa, g1).first;
        Poly nb = Poly::divmod(pb, g2).first;
        Poly d1 = Poly::divmod(a.den, g2).first;
        Poly d2 = Poly::divmod(b.den, g1).first;
        return LRat(Laurent::from_poly(na * nb, sa + sb), d1 * d2);
    }
    friend LRat operator/(const LRat& a, const LRat& b) { return a * b.inv(); }

    LRat& operator+=(const LRat& o) { *this = *this + o; return *this; }
    LRat& operator-=(const LRat& o) { *this = *this - o; return *this; }
    LRat& operator*=(const LRat& o) { *this = *this * o; return *this; }

    LRat inv() const {
        if (is_zero()) throw std::domain_error("division by zero rational function");
        auto [s, p] = num.to_poly();
        return LRat(Laurent::from_poly(den, -s), p);
    }

    /// Bar involution v -> v^{-1}; a ring homomorphism.
    LRat bar() const {
        int d = den.degree();
        std::vector<Rat> rev(den.c.rbegin(), den.c.rend());
        return LRat(num.bar().shifted(d), Poly(std::move(rev)));
    }

    std::string to_string() const {
        if (den.degree() == 0 && den.c[0] == 1) return num.to_string();
        return "(" + num.to_string() + ") / (" + den.to_string() + ")";
    }

private:
    void assign(const Laurent& n, const Poly& d) {
        if (d.is_zero()) throw std::domain_error("zero denominator");
        if (n.is_zero()) {
            num = Laurent();
            den = Poly::constant(Rat(1));
            return;
        }
        auto [shift, npoly] = n.to_poly();
        // pull any v-power out of the denominator (constant term must be nonzero)
        Poly dd = d;
        while (dd.c[0] == 0) {
            dd.c.erase(dd.c.begin());
            --shift;
        }
        Poly g = Poly::gcd(npoly, dd);
        if (g.degree() > 0) {
            npoly = Poly::divmod(npoly, g).first;
            dd = Poly::divmod(dd, g).first;
        }
        Rat f = dd.make_primitive();
        npoly = npoly * f;
        num = Laurent::from_poly(npoly, shift);
        den = std::move(dd);
    }
};

} // namespace qpa
