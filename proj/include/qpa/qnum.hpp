#pragma once

#include "qpa/cyclotomic.hpp"

#include <functional>

namespace qpa {

/// Coefficient ring for generic mode: rational functions of the formal variable v.
struct GenericRing {
    using S = LRat;

    S zero() const { return LRat(Rat(0)); }
    S one() const { return LRat(Rat(1)); }
    S from_int(long n) const { return LRat(Rat(n)); }
    S from_rat(const Rat& r) const { return LRat(r); }
    S qpow(long e) const { return LRat::vpow(static_cast<int>(e)); }

    /// Quantum integer [n] = v^{n-1} + v^{n-3} + ... + v^{1-n}, with [-n] = -[n].
    S qint(long n) const {
        if (n == 0) return zero();
        if (n < 0) return -qint(-n);
        Laurent l;
        for (long e = n - 1; e >= 1 - n; e -= 2) l.t[static_cast<int>(e)] = Rat(1);
        return LRat(l);
    }

    S qfact(long n) const {
        S r = one();
        for (long k = 2; k <= n; ++k) r *= qint(k);
        return r;
    }

    /// Balanced q-binomial [n choose k], a Laurent polynomial (exact division).
    S qbinom(long n, long k) const {
        if (k < 0 || k > n) throw std::invalid_argument("qbinom: k out of range");
        // q-Pascal: B(n,k) = v^k B(n-1,k) + v^{k-n} B(n-1,k-1)
        std::vector<Laurent> row{Laurent::constant(Rat(1))};
        for (long m = 1; m <= n; ++m) {
            std::vector<Laurent> next(static_cast<size_t>(std::min(m, k)) + 1);
            for (long j = 0; j <= std::min(m, k); ++j) {
                Laurent a = (j <= m - 1 && j < static_cast<long>(row.size()))
                                ? row[static_cast<size_t>(j)].shifted(static_cast<int>(j))
                                : Laurent();
                Laurent b = (j >= 1) ? row[static_cast<size_t>(j - 1)].shifted(static_cast<int>(j - m))
                                     : Laurent();
                next[static_cast<size_t>(j)] = a + b;
            }
            row = std::move(next);
        }
        return LRat(row[static_cast<size_t>(k)]);
    }

    bool is_zero(const S& x) const { return x.is_zero(); }
};

/// Coefficient ring for root mode: q = exp(i pi / p) inside a cyclotomic
/// field. The standard ring lives in Q(zeta_{2p}); the extended ring realizes
/// the same q = zeta_{4p}^2 inside Q(zeta_{4p}), where q has a square root
/// (used by the isomorphism-map synthesis).
struct RootRing {
    const CycField* F;
    int pval;
    int qstep;

    explicit RootRing(int p) : F(&CycField::get(p)), pval(p), qstep(1) {}
    RootRing(const CycField* f, int p, int step) : F(f), pval(p), qstep(step) {}
    static RootRing extended(int p) { return RootRing(&CycField::get(2 * p), p, 2); }

    using S = Cyc;

    int p() const { return pval; }
    S zero() const { return Cyc(); }
    S one() const { return Cyc::from_rat(*F, Rat(1)); }
    S from_int(long n) const { return Cyc::from_rat(*F, Rat(n)); }
    S from_rat(const Rat& r) const { return Cyc::from_rat(*F, r); }
    S qpow(long e) const { return Cyc::q_pow(*F, e * qstep); }

    S qint(long n) const {
        if (n == 0) return zero();
        bool neg = n < 0;
        if (neg) n = -n;
        S r = zero();
        for (long e = n - 1; e >= 1 - n; e -= 2) r += qpow(e);
        return neg ? -r : r;
    }

    S qfact(long n) const {
        S r = one();
        for (long k = 2; k <= n; ++k) r *= qint(k);
        return r;
    }

    /// Balanced q-binomial evaluated at the root (computed generically first,
    /// so vanishing factorials in numerator and denominator cancel exactly).
    S qbinom(long n, long k) const { return eval_lrat(GenericRing{}.qbinom(n, k)); }

    /// Pole-detecting specialization at this ring's q.
    S eval_lrat(const LRat& x) const {
        if (x.is_zero()) return zero();
        Cyc d;
        for (size_t i = 0; i < x.den.c.size(); ++i)
            if (x.den.c[i] != 0) d += qpow(static_cast<long>(i)) * x.den.c[i];
        if (d.is_zero())
            throw PoleError("denominator (" + x.den.to_string() + ") vanishes at q = exp(i*pi/" +
                            std::to_string(pval) + ")");
        Cyc n;
        for (const auto& [e, coeff] : x.num.t) n += qpow(e) * coeff;
        return n * d.inv();
    }

    bool is_zero(const S& x) const { return x.is_zero(); }
};

/// gamma = (-1)^{p-1} ([p-1]!)^2, the constant of the alpha/beta relations.
inline Cyc gamma_const(int p) {
    RootRing R(p);
    Cyc f = R.qfact(p - 1);
    Cyc g = f * f;
    return (p % 2 == 0) ? -g : g;
}

/// Checks ([2p-2] + [p](q^p + q^{-p})) / ([2][2p-1]) = 1, generically and at the root.
inline bool unit_identity_check(int p) {
    GenericRing G;
    LRat numer = G.qint(2 * p - 2) + G.qint(p) * (G.qpow(p) + G.qpow(-p));
    LRat denom = G.qint(2) * G.qint(2 * p - 1);
    LRat ratio = numer / denom;
    if (!(ratio == G.one())) return false;
    return specialize(ratio, p) == RootRing(p).one();
}

} // namespace qpa
