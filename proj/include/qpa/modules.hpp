#pragma once

#include "qpa/tensor_action.hpp"

#include <string>

namespace qpa {

enum class ModKind { Simple, Projective };
enum class Sign { Plus, Minus };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }
inline Cyc sign_factor(Sign s, const RootRing& R) { return s == Sign::Plus ? R.one() : -R.one(); }

/// Explicit matrix presentation of a simple X^{pm}_s or projective P^{pm}_s module.
struct ModulePresentation {
    ModKind kind;
    int s = 0;
    Sign sign = Sign::Plus;
    int p = 0;
    RootRing ring{2};
    std::vector<std::string> labels;
    DenseMat<Cyc> E, F, K; // K diagonal

    int dim() const { return E.rows; }
    std::string name() const {
        return (kind == ModKind::Simple ? "X" : "P") + std::string(1, sign_char(sign)) + "_" +
               std::to_string(s);
    }
    std::vector<Cyc> k_diag() const {
        std::vector<Cyc> d;
        for (int i = 0; i < dim(); ++i) d.push_back(K.at(i, i));
        return d;
    }
};

/// The simple module X^{sign}_s: basis v_0..v_{s-1} with
/// K v_n = (+-) q^{s-1-2n} v_n, E v_n = (+-) [n][s-n] v_{n-1}, F v_n = v_{n+1}.
inline ModulePresentation build_simple(int s, Sign sign, const RootRing& R) {
    int p = R.p();
    if (s < 1 || s > p) throw std::invalid_argument("simple module needs 1 <= s <= p");
    Cyc pm = sign_factor(sign, R);
    ModulePresentation M{ModKind::Simple, s, sign, p, R, {}, DenseMat<Cyc>(s, s), DenseMat<Cyc>(s, s),
                         DenseMat<Cyc>(s, s)};
    for (int n = 0; n < s; ++n) {
        M.labels.push_back("v" + std::to_string(n));
        M.K.at(n, n) = pm * R.qpow(s - 1 - 2 * n);
        if (n >= 1) M.E.at(n - 1, n) = pm * R.qint(n) * R.qint(s - n);
        if (n + 1 < s) M.F.at(n + 1, n) = R.one();
    }
    return M;
}

/// The projective module P^{sign}_s, 1 <= s <= p-1, on the basis
/// a_0..a_{s-1}, b_0..b_{s-1}, x_0..x_{p-s-1}, y_0..y_{p-s-1}.
inline ModulePresentation build_projective(int s, Sign sign, const RootRing& R) {
    int p = R.p();
    if (s < 1 || s > p - 1) throw std::invalid_argument("projective module needs 1 <= s <= p-1");
    Cyc pm = sign_factor(sign, R);
    Cyc mp = -pm;
    int t = p - s; // number of x's (and y's)
    int d = 2 * p;
    auto ai = [&](int i) { return i; };
    auto bi = [&](int i) { return s + i; };
    auto xj = [&](int j) { return 2 * s + j; };
    auto yj = [&](int j) { return 2 * s + t + j; };
    ModulePresentation M{ModKind::Projective, s, sign, p, R, {}, DenseMat<Cyc>(d, d), DenseMat<Cyc>(d, d),
                         DenseMat<Cyc>(d, d)};
    for (int i = 0; i < s; ++i) M.labels.push_back("a" + std::to_string(i));
    for (int i = 0; i < s; ++i) M.labels.push_back("b" + std::to_string(i));
    for (int j = 0; j < t; ++j) M.labels.push_back("x" + std::to_string(j));
    for (int j = 0; j < t; ++j) M.labels.push_back("y" + std::to_string(j));

    for (int i = 0; i < s; ++i) {
        Cyc k = pm * R.qpow(s - 1 - 2 * i);
        M.K.at(ai(i), ai(i)) = k;
        M.K.at(bi(i), bi(i)) = k;
    }
    for (int j = 0; j < t; ++j) {
        Cyc k = mp * R.qpow(p - s - 1 - 2 * j);
        M.K.at(xj(j), xj(j)) = k;
        M.K.at(yj(j), yj(j)) = k;
    }
    // E action
    for (int i = 1; i < s; ++i) {
        Cyc c = pm * R.qint(i) * R.qint(s - i);
        M.E.at(ai(i - 1), ai(i)) = c;
        M.E.at(bi(i - 1), bi(i)) = c;
        M.E.at(ai(i - 1), bi(i)) += R.one(); // E b_i = (+-)[i][s-i] b_{i-1} + a_{i-1}
    }
    M.E.at(xj(t - 1), bi(0)) = R.one(); // E b_0 = x_{p-s-1}
    for (int j = 1; j < t; ++j) {
        Cyc c = mp * R.qint(j) * R.qint(p - s - j);
        M.E.at(xj(j - 1), xj(j)) = c;
        M.E.at(yj(j - 1), yj(j)) = c;
    }
    M.E.at(ai(s - 1), yj(0)) = R.one(); // E y_0 = a_{s-1}
    // F action
    for (int i = 0; i + 1 < s; ++i) {
        M.F.at(ai(i + 1), ai(i)) = R.one();
        M.F.at(bi(i + 1), bi(i)) = R.one();
    }
    M.F.at(yj(0), bi(s - 1)) = R.one(); // F b_{s-1} = y_0
    for (int j = 0; j + 1 < t; ++j) {
        M.F.at(xj(j + 1), xj(j)) = R.one();
        M.F.at(yj(j + 1), yj(j)) = R.one();
    }
    M.F.at(ai(0), xj(t - 1)) = R.one(); // F x_{p-s-1} = a_0
    return M;
}

/// Checks the defining relations of the restricted quantum group as matrix
/// identities on the presentation.
inline ModulePresentation build_simple(int s, Sign sign, int p) { return build_simple(s, sign, RootRing(p)); }
inline ModulePresentation build_projective(int s, Sign sign, int p) {
    return build_projective(s, sign, RootRing(p));
}

inline bool verify_algebra_relations(const ModulePresentation& M) {
    const RootRing& R = M.ring;
    int d = M.dim();
    DenseMat<Cyc> Kinv(d, d);
    for (int i = 0; i < d; ++i) Kinv.at(i, i) = M.K.at(i, i).inv();
    if (!(M.K * M.E == (M.E * M.K).scaled(R.qpow(2)))) return false;
    if (!(M.F * M.K == (M.K * M.F).scaled(R.qpow(2)))) return false;
    Cyc dinv = (R.qpow(1) - R.qpow(-1)).inv();
    if (!(M.E * M.F - M.F * M.E == (M.K - Kinv).scaled(dinv))) return false;
    DenseMat<Cyc> Ep = DenseMat<Cyc>::identity(d, R.one()), Fp = Ep, Kp = Ep;
    for (int i = 0; i < M.p; ++i) {
        Ep = Ep * M.E;
        Fp = Fp * M.F;
        Kp = Kp * M.K * M.K;
    }
    return Ep.is_zero() && Fp.is_zero() && Kp == DenseMat<Cyc>::identity(d, R.one());
}

/// Tensor product via the coproduct: E -> E (x) K + 1 (x) E, F -> F (x) 1 + K^{-1} (x) F,
/// K -> K (x) K. The left factor occupies the slower index.
inline ModulePresentation tensor_module(const ModulePresentation& A, const ModulePresentation& B) {
    if (A.p != B.p) throw ModeError("tensor of modules over different p");
    const RootRing& R = A.ring;
    int da = A.dim(), db = B.dim(), d = da * db;
    ModulePresentation M{ModKind::Simple, 0, Sign::Plus, A.p, R, {}, DenseMat<Cyc>(d, d),
                         DenseMat<Cyc>(d, d), DenseMat<Cyc>(d, d)};
    M.labels.clear();
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) M.labels.push_back(A.labels[static_cast<size_t>(i)] + "." +
                                                        B.labels[static_cast<size_t>(j)]);
    auto idx = [&](int i, int j) { return i * db + j; };
    DenseMat<Cyc> KAinv(da, da);
    for (int i = 0; i < da; ++i) KAinv.at(i, i) = A.K.at(i, i).inv();
    for (int i = 0; i < da; ++i)
        for (int i2 = 0; i2 < da; ++i2)
            for (int j = 0; j < db; ++j)
                for (int j2 = 0; j2 < db; ++j2) {
                    int r = idx(i2, j2), c = idx(i, j);
                    // E (x) K + 1 (x) E
                    Cyc e = A.E.at(i2, i) * B.K.at(j2, j);
                    if (i == i2) e += B.E.at(j2, j);
                    if (!e.is_zero()) M.E.at(r, c) += e;
                    // F (x) 1 + K^{-1} (x) F
                    Cyc f;
                    if (j == j2) f = A.F.at(i2, i);
                    f += KAinv.at(i2, i) * B.F.at(j2, j);
                    if (!f.is_zero()) M.F.at(r, c) += f;
                    if (i == i2 && j == j2) M.K.at(r, c) = A.K.at(i, i) * B.K.at(j, j);
                }
    return M;
}

enum class StdHomKind {
    ProjToSimple, // b_i -> v_i
    SimpleToProj, // v_i -> a_i
    SecondEndo,   // b_i -> a_i (the nilpotent endomorphism of P_s)
    CrossG1,      // P^{pm}_s -> P^{mp}_{p-s}: b_i -> x~_i, y_j -> a~_j
    CrossG2       // P^{pm}_s -> P^{mp}_{p-s}: b_i -> y~_i, x_j -> a~_j
};

/// The named basis-level homomorphisms between indecomposables.
inline DenseMat<Cyc> std_hom(const ModulePresentation& A, const ModulePresentation& B, StdHomKind kind) {
    const RootRing& R = A.ring;
    int s = A.s, p = A.p, t = p - s;
    DenseMat<Cyc> T(B.dim(), A.dim());
    auto one = R.one();
    switch (kind) {
    case StdHomKind::ProjToSimple:
        if (A.kind != ModKind::Projective || B.kind != ModKind::Simple || A.s != B.s || A.sign != B.sign)
            throw std::invalid_argument("ProjToSimple needs P^s -> X^s of equal sign");
        for (int i = 0; i < s; ++i) T.at(i, s + i) = one; // b_i -> v_i
        break;
    case StdHomKind::SimpleToProj:
        if (A.kind != ModKind::Simple || B.kind != ModKind::Projective || A.s != B.s || A.sign != B.sign)
            throw std::invalid_argument("SimpleToProj needs X^s -> P^s of equal sign");
        for (int i = 0; i < s; ++i) T.at(i, i) = one; // v_i -> a_i
        break;
    case StdHomKind::SecondEndo:
        if (A.kind != ModKind::Projective || B.kind != ModKind::Projective || A.s != B.s || A.sign != B.sign)
            throw std::invalid_argument("SecondEndo needs P^s -> P^s");
        for (int i = 0; i < s; ++i) T.at(i, s + i) = one; // b_i -> a_i
        break;
    case StdHomKind::CrossG1:
    case StdHomKind::CrossG2: {
        if (A.kind != ModKind::Projective || B.kind != ModKind::Projective || B.s != p - s ||
            A.sign == B.sign)
            throw std::invalid_argument("cross map needs P^{pm}_s -> P^{mp}_{p-s}");
        // target basis offsets: a~ 0..t-1, b~ t..2t-1, x~ 2t..2t+s-1, y~ 2t+s..
        int bt = B.s; // = t
        auto axT = [&](int j) { return j; };
        auto xxT = [&](int i) { return 2 * bt + i; };
        auto yyT = [&](int i) { return 2 * bt + s + i; };
        if (kind == StdHomKind::CrossG1) {
            for (int i = 0; i < s; ++i) T.at(xxT(i), s + i) = one;      // b_i -> x~_i
            for (int j = 0; j < t; ++j) T.at(axT(j), 2 * s + t + j) = one; // y_j -> a~_j
        } else {
            for (int i = 0; i < s; ++i) T.at(yyT(i), s + i) = one;      // b_i -> y~_i
            for (int j = 0; j < t; ++j) T.at(axT(j), 2 * s + j) = one;  // x_j -> a~_j
        }
        break;
    }
    }
    return T;
}

/// True iff T: A -> B commutes with the E, F, K actions.
inline bool is_module_map(const DenseMat<Cyc>& T, const ModulePresentation& A, const ModulePresentation& B) {
    return T * A.E == B.E * T && T * A.F == B.F * T && T * A.K == B.K * T;
}

} // namespace qpa
