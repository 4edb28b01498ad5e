#pragma once

#include "qpa/diagrams.hpp"

namespace qpa {

/// Jones-Wenzl projection on n strands over Q(v), from the explicit one-output-
/// vector-per-weight formula: the weight-k block is the rank-one matrix with
/// entry q^{k(n+1) - sum(S) - sum(T)} / [n choose k] from state S to state T.
inline GradedOp<LRat> jw_generic(int n) {
    GenericRing G;
    GradedOp<LRat> op(n, n);
    for (int k = 0; k <= n; ++k) {
        LRat binv = G.one() / G.qbinom(n, k);
        int d = weight_dim(n, k);
        SparseMat<LRat> blk(d, d);
        std::vector<long> sums(static_cast<size_t>(d));
        for (int r = 0; r < d; ++r) sums[static_cast<size_t>(r)] = pos_sum(state_unrank(r, n, k), n);
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r) {
                long e = static_cast<long>(k) * (n + 1) - sums[static_cast<size_t>(c)] - sums[static_cast<size_t>(r)];
                blk.add_to(r, c, binv * LRat::vpow(static_cast<int>(e)));
            }
        op.blocks[{k, k}] = std::move(blk);
    }
    return op;
}

/// Inductive construction f_n = f_{n-1} (x) 1 - ([n-1]/[n]) (f_{n-1} (x) 1) e_{n-1} (f_{n-1} (x) 1),
/// used as a cross-check of the closed form.
inline GradedOp<LRat> jw_inductive(int n) {
    GenericRing G;
    if (n <= 1) return GradedOp<LRat>::identity(n, G.one());
    auto prev = jw_inductive(n - 1).tensor(GradedOp<LRat>::identity(1, G.one()));
    auto e = tl_e(n - 1, n, G);
    LRat c = G.qint(n - 1) / G.qint(n);
    return prev - (prev * e * prev).scaled(c);
}

/// Specializes every entry at the ring's q; propagates PoleError.
inline GradedOp<Cyc> specialize_op(const GradedOp<LRat>& T, const RootRing& R) {
    GradedOp<Cyc> r(T.m, T.n);
    for (const auto& [kk, blk] : T.blocks) {
        SparseMat<Cyc> b(blk.rows, blk.cols);
        for (int c = 0; c < blk.cols; ++c)
            for (const auto& [row, v] : blk.col[static_cast<size_t>(c)]) {
                Cyc w = R.eval_lrat(v);
                if (!w.is_zero()) b.col[static_cast<size_t>(c)].emplace_back(row, w);
            }
        if (!b.is_zero()) r.blocks.emplace(kk, std::move(b));
    }
    return r;
}
inline GradedOp<Cyc> specialize_op(const GradedOp<LRat>& T, int p) {
    return specialize_op(T, RootRing(p));
}

/// f_n at the root; PoleError when the projection does not exist there.
inline GradedOp<Cyc> jw_at_root(int n, const RootRing& R) { return specialize_op(jw_generic(n), R); }
inline GradedOp<Cyc> jw_at_root(int n, int p) { return specialize_op(jw_generic(n), RootRing(p)); }

/// The element A_{z,i}: the Jones-Wenzl projection f_{z+i} with its rightmost
/// i output strands bent down by nested caps, normalized by [z+1] so that the
/// coefficients stay finite against [z+1]. X^{otimes z} -> X^{otimes z+2i};
/// at z = p-1 this is the piece of the indecomposable projections that
/// survives specialization ([z+1] = [p] = 0 there).
inline GradedOp<LRat> a_elem(int z, int i) {
    GenericRing G;
    if (i < 1 || i > z) throw std::invalid_argument("a_elem requires 1 <= i <= z");
    auto bend = pad(cap_nest(i, G), z, 0, G);
    return (pad(jw_generic(z + i), 0, i, G) * bend).scaled(G.qint(z + 1));
}

/// True iff no entry denominator of T is divisible by the polynomial [m].
inline bool denominators_avoid_qint(const GradedOp<LRat>& T, int m) {
    GenericRing G;
    auto [sh, mp] = G.qint(m).num.to_poly();
    for (const auto& [kk, blk] : T.blocks)
        for (const auto& c : blk.col)
            for (const auto& [r, v] : c)
                if (Poly::divides(mp, v.den)) return false;
    return true;
}

} // namespace qpa
