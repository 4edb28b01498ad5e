#pragma once

#include "qpa/iso.hpp"

namespace qpa {

/// theta: X^{otimes 2p-i-1} -> X^{otimes i-1} in the basis form: rho of
/// weight n maps to (-1)^{p-i-1} q^{n(2p-i-1)-(n^2-n)/2-sum} *
/// [n]![p-n-1]! / ([n+i-p]! [i-1]! ([p-i-1]!)^2) * F^{n+i-p} x_{0,i-1}
/// for p-i <= n <= p-1, zero otherwise.
inline GradedOp<Cyc> theta_basis(int i, int p) {
    if (i < 1 || i > p - 1) throw std::invalid_argument("theta needs 1 <= i <= p-1");
    RootRing R(p);
    int z = 2 * p - i - 1, w = i - 1;
    GradedOp<Cyc> op(z, w);
    Cyc denom = (R.qfact(i - 1) * R.qfact(p - i - 1) * R.qfact(p - i - 1)).inv();
    Cyc sgn = (p - i - 1) % 2 == 0 ? R.one() : -R.one();
    for (int n = p - i; n <= p - 1 && n <= z; ++n) {
        auto out = fpow_lowest(n + i - p, w, R);
        Cyc factor = sgn * R.qfact(n) * R.qfact(p - n - 1) * R.qfact(n + i - p).inv() * denom;
        for (int c = 0; c < weight_dim(z, n); ++c) {
            uint32_t mask = state_unrank(c, z, n);
            long e = static_cast<long>(n) * z - (static_cast<long>(n) * n - n) / 2 - pos_sum(mask, z);
            Cyc coeff = factor * R.qpow(e);
            for (const auto& [m2, v] : out.c) op.add_entry(mask, m2, coeff * v);
        }
    }
    op.prune();
    return op;
}

/// theta as a diagram: p-i cups (innermost first) after f_{p-1} (x) 1^{p-i},
/// with the global sign accounting for the cup convention. Equals
/// -q^{-i} [p-i-1]!/[i] times theta_basis.
inline GradedOp<Cyc> theta_diagram(int i, int p) {
    if (i < 1 || i > p - 1) throw std::invalid_argument("theta needs 1 <= i <= p-1");
    RootRing R(p);
    int z = 2 * p - i - 1;
    auto op = pad(jw_at_root(p - 1, p), 0, p - i, R);
    int cur = z;
    for (int j = p - 1; j >= i; --j) {
        op = cup_op(j, cur, R) * op;
        cur -= 2;
    }
    return op.scaled(-R.one());
}

inline Cyc theta_constant(int i, int p) {
    RootRing R(p);
    return -R.qpow(-i) * R.qfact(p - i - 1) * R.qint(i).inv();
}

/// Generic-mode theta diagram (rational functions of v); its specialization
/// must succeed and reproduce the root-mode construction.
inline GradedOp<LRat> theta_diagram_generic(int i, int p) {
    GenericRing G;
    int z = 2 * p - i - 1;
    auto op = pad(jw_generic(p - 1), 0, p - i, G);
    int cur = z;
    for (int j = p - 1; j >= i; --j) {
        op = cup_op(j, cur, G) * op;
        cur -= 2;
    }
    return op.scaled(-G.one());
}

/// Generic-mode gamma diagram.
inline GradedOp<LRat> gamma_diagram_generic(int i, int p) {
    GenericRing G;
    GradedOp<LRat> op = GradedOp<LRat>::identity(i - 1, G.one());
    int cur = i - 1;
    for (int j = i; j <= p - 1; ++j) {
        cur += 2;
        op = cap_op(j, cur, G) * op;
    }
    op = pad(jw_generic(p - 1), 0, p - i, G) * op;
    return op.scaled(-G.one());
}

/// Gamma: X^{otimes i-1} -> X^{otimes 2p-i-1} in the basis form: rho of
/// weight n maps to q^{n(i-1)-(n^2-n)/2-sum} [i-1-n]!/[i-1]! F^{n+p-i} x_0.
inline GradedOp<Cyc> gamma_basis(int i, int p) {
    if (i < 1 || i > p - 1) throw std::invalid_argument("gamma needs 1 <= i <= p-1");
    RootRing R(p);
    int z = 2 * p - i - 1, w = i - 1;
    GradedOp<Cyc> op(w, z);
    Cyc denom = R.qfact(i - 1).inv();
    for (int n = 0; n <= i - 1; ++n) {
        auto out = fpow_lowest(n + p - i, z, R);
        Cyc factor = R.qfact(i - 1 - n) * denom;
        for (int c = 0; c < weight_dim(w, n); ++c) {
            uint32_t mask = state_unrank(c, w, n);
            long e = static_cast<long>(n) * w - (static_cast<long>(n) * n - n) / 2 - pos_sum(mask, w);
            Cyc coeff = factor * R.qpow(e);
            for (const auto& [m2, v] : out.c) op.add_entry(mask, m2, coeff * v);
        }
    }
    op.prune();
    return op;
}

/// Gamma as a diagram: f_{p-1} (x) 1^{p-i} after p-i caps (the reflection of
/// the theta diagram). Equals q^i [i-1]!/[p-1]! times gamma_basis.
inline GradedOp<Cyc> gamma_diagram(int i, int p) {
    if (i < 1 || i > p - 1) throw std::invalid_argument("gamma needs 1 <= i <= p-1");
    RootRing R(p);
    int z = 2 * p - i - 1;
    GradedOp<Cyc> op = GradedOp<Cyc>::identity(i - 1, R.one());
    int cur = i - 1;
    for (int j = i; j <= p - 1; ++j) {
        cur += 2;
        op = cap_op(j, cur, R) * op;
    }
    op = pad(jw_at_root(p - 1, p), 0, p - i, R) * op;
    return op.scaled(-R.one());
}

inline Cyc gamma_constant(int i, int p) {
    RootRing R(p);
    return R.qpow(i) * R.qfact(i - 1) * R.qfact(p - 1).inv();
}

/// The second endomorphism of P^+_i realized on X^{otimes 2p-i-1}.
inline GradedOp<Cyc> phi_pos(int i, int p) { return gamma_diagram(i, p) * theta_diagram(i, p); }

/// The two legs through the simple module: z_k -> F^k x_{0,i-1} and back.
/// Their composition is the identity on X^+_i.
inline SparseMat<Cyc> theta_leg_out(int i, int p) {
    RootRing R(p);
    int w = i - 1;
    SparseMat<Cyc> T(1 << w, i);
    for (int k = 0; k <= w; ++k) {
        auto v = fpow_lowest(k, w, R);
        for (const auto& [m, c] : v.c) T.add_to(FlatModule::tensor_index(m, w), k, c);
    }
    return T;
}

inline SparseMat<Cyc> gamma_leg_in(int i, int p) {
    RootRing R(p);
    int w = i - 1;
    SparseMat<Cyc> T(i, 1 << w);
    Cyc denom = R.qfact(i - 1).inv();
    for (uint32_t m = 0; m < (1u << w); ++m) {
        int n = std::popcount(m);
        long e = static_cast<long>(n) * w - (static_cast<long>(n) * n - n) / 2 - pos_sum(m, w);
        T.add_to(n, FlatModule::tensor_index(m, w), R.qfact(i - 1 - n) * denom * R.qpow(e));
    }
    return T;
}

enum class VarPos { Lower, Upper };

/// The four theta variants X^{otimes 2p-i-1} -> X^{otimes 2p+i-1} onto the two
/// copies of P^-_{p-i}: a generator word on the first 2p-1 strands after i
/// nested caps on the right (each arc straddles the generator's boundary; a
/// cap lying entirely inside its range would annihilate it).
///   theta_{1,l} = (beta (x) 1^i) caps        theta_{2,l} = (beta alpha (x) 1^i) caps
///   theta_{1,u} = (alpha beta (x) 1^i) caps  theta_{2,u} = (alpha (x) 1^i) caps
inline GradedOp<Cyc> theta_variant(int i, int p, int j, VarPos pos) {
    if (i < 1 || i > p - 1) throw std::invalid_argument("theta variant needs 1 <= i <= p-1");
    if (j != 1 && j != 2) throw std::invalid_argument("variant index j must be 1 or 2");
    RootRing R(p);
    int z = 2 * p - i - 1;
    // nested caps on the right: X^{otimes z} -> X^{otimes z+2i}
    auto caps = pad(cap_nest(i, R), z, 0, R);
    auto A = alpha_op(p), B = beta_op(p);
    GradedOp<Cyc> box;
    if (j == 1 && pos == VarPos::Lower) box = B;
    else if (j == 2 && pos == VarPos::Upper) box = A;
    else if (j == 2 && pos == VarPos::Lower) box = B * A;
    else box = A * B; // j == 1, upper
    return pad(box, 0, i, R) * caps;
}

/// The gamma variants are the reflections of the theta variants; reflection
/// swaps the variant index j (the g1/g2 and k1/k2 selectors trade places).
inline GradedOp<Cyc> gamma_variant(int i, int p, int j, VarPos pos) {
    RootRing R(p);
    return transpose_form(theta_variant(i, p, 3 - j, pos), R);
}

/// Expected weight-block support {k -> k + shift : lo <= k <= hi} of a variant.
struct WeightTable {
    int shift, lo, hi;
};

inline WeightTable theta_variant_table(int i, int p, int j, VarPos pos) {
    if (j == 1 && pos == VarPos::Lower) return {i - p, p - i, 2 * p - i - 1};
    if (j == 2 && pos == VarPos::Lower) return {i, 0, p - 1};
    if (j == 1 && pos == VarPos::Upper) return {i, p - i, 2 * p - i - 1};
    return {p + i, 0, p - 1}; // (2, u)
}

inline WeightTable gamma_variant_table(int i, int p, int j, VarPos pos) {
    if (j == 1 && pos == VarPos::Lower) return {-i, i, p + i - 1};
    if (j == 2 && pos == VarPos::Lower) return {p - i, 0, p - 1};
    if (j == 2 && pos == VarPos::Upper) return {-i, p, 2 * p - 1};
    // (1, u): net -p-i on p+i <= k (the printed table's "k-p+i" overflows the
    // codomain weight range and must read k-p-i, the reflection of (2,u))
    return {-p - i, p + i, 2 * p + i - 1};
}

inline bool support_contained(const GradedOp<Cyc>& T, const WeightTable& w) {
    for (const auto& [kk, blk] : T.blocks) {
        if (blk.is_zero()) continue;
        if (kk.second != kk.first + w.shift) return false;
        if (kk.first < w.lo || kk.first > w.hi) return false;
    }
    return true;
}

/// Second endomorphism on the two copies of P^-_i inside X^{otimes 3p-i-1},
/// transported through the descent identification: the sum of the conjugated
/// basis-level second endomorphisms of the two copies.
inline GradedOp<Cyc> phi_neg(int i, int p, const ProjectionBundle& pair) {
    RootRing R(p);
    if (pair.sign != Sign::Minus || pair.copies.size() != 2)
        throw std::invalid_argument("phi_neg needs the negative pair bundle");
    auto T = build_projective(i, Sign::Minus, p);
    auto n = std_hom(T, T, StdHomKind::SecondEndo).to_sparse();
    SparseMat<Cyc> phi(1 << pair.ambient, 1 << pair.ambient);
    for (const auto& c : pair.copies) phi = phi + c.into * n * c.onto;
    return FlatModule::unflatten(phi, pair.ambient, pair.ambient);
}

/// Entry-wise proportionality constant A = c B, when one exists.
inline std::optional<Cyc> proportionality(const GradedOp<Cyc>& A, const GradedOp<Cyc>& B) {
    if (B.is_zero()) return A.is_zero() ? std::optional<Cyc>(Cyc()) : std::nullopt;
    Cyc c;
    for (const auto& [kk, blk] : B.blocks) {
        for (int col = 0; col < blk.cols && c.is_zero(); ++col)
            for (const auto& [row, v] : blk.col[static_cast<size_t>(col)]) {
                auto it = A.blocks.find(kk);
                if (it == A.blocks.end()) return A.is_zero() ? std::optional<Cyc>(Cyc()) : std::nullopt;
                c = it->second.get(row, col) * v.inv();
                break;
            }
        if (!c.is_zero()) break;
    }
    if (A == B.scaled(c)) return c;
    return std::nullopt;
}

} // namespace qpa
