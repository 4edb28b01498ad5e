#pragma once

#include "qpa/combin.hpp"
#include "qpa/linalg.hpp"

#include <functional>

namespace qpa {

/// Vector in X^{otimes z}, stored as mask -> coefficient.
template <class S>
struct TensorVec {
    int z = 0;
    std::map<uint32_t, S> c;

    void add(uint32_t mask, const S& v) {
        if (v.is_zero()) return;
        auto it = c.find(mask);
        if (it == c.end()) c.emplace(mask, v);
        else {
            it->second += v;
            if (it->second.is_zero()) c.erase(it);
        }
    }
    bool is_zero() const { return c.empty(); }
    friend bool operator==(const TensorVec& a, const TensorVec& b) { return a.z == b.z && a.c == b.c; }
};

/// Weight-block sparse linear map X^{otimes m} -> X^{otimes n}.
/// Block (k, k2) maps the weight-k space of the domain into the weight-k2
/// space of the codomain; absent blocks are zero. Rows and columns index
/// bitstrings of the weight class in lexicographic order.
template <class S>
struct GradedOp {
    int m = 0, n = 0;
    std::map<std::pair<int, int>, SparseMat<S>> blocks;

    GradedOp() = default;
    GradedOp(int dom, int cod) : m(dom), n(cod) {}

    static GradedOp identity(int z, const S& one) {
        GradedOp op(z, z);
        for (int k = 0; k <= z; ++k)
            op.blocks[{k, k}] = SparseMat<S>::identity(weight_dim(z, k), one);
        return op;
    }

    SparseMat<S>& block(int k, int k2) {
        auto it = blocks.find({k, k2});
        if (it == blocks.end())
            it = blocks.emplace(std::make_pair(k, k2), SparseMat<S>(weight_dim(n, k2), weight_dim(m, k))).first;
        return it->second;
    }

    void add_entry(uint32_t from_mask, uint32_t to_mask, const S& v) {
        if (v.is_zero()) return;
        int k = std::popcount(from_mask), k2 = std::popcount(to_mask);
        block(k, k2).add_to(state_rank(to_mask, n), state_rank(from_mask, m), v);
    }

    void prune() {
        for (auto it = blocks.begin(); it != blocks.end();) {
            if (it->second.is_zero()) it = blocks.erase(it);
            else ++it;
        }
    }

    bool is_zero() const {
        for (const auto& [kk, b] : blocks)
            if (!b.is_zero()) return false;
        return true;
    }

    friend bool operator==(const GradedOp& a, const GradedOp& b) {
        if (a.m != b.m || a.n != b.n) return false;
        auto nonzero_blocks = [](const GradedOp& o) {
            std::map<std::pair<int, int>, const SparseMat<S>*> r;
            for (const auto& [kk, blk] : o.blocks)
                if (!blk.is_zero()) r.emplace(kk, &blk);
            return r;
        };
        auto na = nonzero_blocks(a), nb = nonzero_blocks(b);
        if (na.size() != nb.size()) return false;
        for (const auto& [kk, pa] : na) {
            auto it = nb.find(kk);
            if (it == nb.end() || !(*pa == *it->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const GradedOp& a, const GradedOp& b) { return !(a == b); }

    /// Composition: (a * b)(x) = a(b(x)).
    friend GradedOp operator*(const GradedOp& a, const GradedOp& b) {
        assert(a.m == b.n);
        GradedOp r(b.m, a.n);
        for (const auto& [kb, blkb] : b.blocks) {
            for (const auto& [ka, blka] : a.blocks) {
                if (ka.first != kb.second) continue;
                SparseMat<S> prod = blka * blkb;
                if (prod.is_zero()) continue;
                auto key = std::make_pair(kb.first, ka.second);
                auto it = r.blocks.find(key);
                if (it == r.blocks.end()) r.blocks.emplace(key, std::move(prod));
                else it->second = it->second + prod;
            }
        }
        r.prune();
        return r;
    }

    friend GradedOp operator+(const GradedOp& a, const GradedOp& b) {
        assert(a.m == b.m && a.n == b.n);
        GradedOp r = a;
        for (const auto& [kk, blk] : b.blocks) {
            auto it = r.blocks.find(kk);
            if (it == r.blocks.end()) r.blocks.emplace(kk, blk);
            else it->second = it->second + blk;
        }
        r.prune();
        return r;
    }
    friend GradedOp operator-(const GradedOp& a, const GradedOp& b) { return a + b.scaled_by_minus_one(); }

    GradedOp scaled_by_minus_one() const {
        GradedOp r(m, n);
        for (const auto& [kk, blk] : blocks) r.blocks.emplace(kk, blk.negated());
        return r;
    }

    GradedOp scaled(const S& c) const {
        GradedOp r(m, n);
        if (c.is_zero()) return r;
        for (const auto& [kk, blk] : blocks) r.blocks.emplace(kk, blk.scaled(c));
        r.prune();
        return r;
    }

    /// Tensor product; *this occupies the left strands.
    GradedOp tensor(const GradedOp& other) const {
        GradedOp r(m + other.m, n + other.n);
        for (const auto& [ka, blka] : blocks) {
            for (const auto& [kb, blkb] : other.blocks) {
                for (int cb = 0; cb < blkb.cols; ++cb) {
                    uint32_t mb = state_unrank(cb, other.m, kb.first);
                    for (const auto& [rb, vb] : blkb.col[static_cast<size_t>(cb)]) {
                        uint32_t nb = state_unrank(rb, other.n, kb.second);
                        for (int ca = 0; ca < blka.cols; ++ca) {
                            uint32_t ma = state_unrank(ca, m, ka.first);
                            uint32_t from = (ma << other.m) | mb;
                            for (const auto& [ra, va] : blka.col[static_cast<size_t>(ca)]) {
                                uint32_t na = state_unrank(ra, n, ka.second);
                                uint32_t to = (na << other.n) | nb;
                                r.add_entry(from, to, va * vb);
                            }
                        }
                    }
                }
            }
        }
        r.prune();
        return r;
    }

    TensorVec<S> apply(const TensorVec<S>& x) const {
        assert(x.z == m);
        TensorVec<S> y;
        y.z = n;
        for (const auto& [mask, v] : x.c) {
            int k = std::popcount(mask);
            int cidx = state_rank(mask, m);
            for (const auto& [kk, blk] : blocks) {
                if (kk.first != k) continue;
                for (const auto& [ridx, w] : blk.col[static_cast<size_t>(cidx)])
                    y.add(state_unrank(ridx, n, kk.second), w * v);
            }
        }
        return y;
    }

    /// Image of a basis state (column of the operator).
    TensorVec<S> apply_basis(uint32_t mask) const {
        TensorVec<S> y;
        y.z = n;
        int k = std::popcount(mask);
        int cidx = state_rank(mask, m);
        for (const auto& [kk, blk] : blocks) {
            if (kk.first != k) continue;
            for (const auto& [ridx, w] : blk.col[static_cast<size_t>(cidx)])
                y.add(state_unrank(ridx, n, kk.second), w);
        }
        return y;
    }

    /// Rank over the coefficient field.
    int rank() const {
        // global column index: offset of the weight class + in-class rank
        std::vector<int> dom_off(static_cast<size_t>(m) + 2, 0);
        for (int k = 0; k <= m; ++k) dom_off[static_cast<size_t>(k + 1)] = dom_off[static_cast<size_t>(k)] + weight_dim(m, k);
        std::vector<int> cod_off(static_cast<size_t>(n) + 2, 0);
        for (int k = 0; k <= n; ++k) cod_off[static_cast<size_t>(k + 1)] = cod_off[static_cast<size_t>(k)] + weight_dim(n, k);
        std::map<int, std::map<int, S>> cols; // global col -> (global row -> val)
        for (const auto& [kk, blk] : blocks)
            for (int c = 0; c < blk.cols; ++c)
                for (const auto& [r, v] : blk.col[static_cast<size_t>(c)])
                    cols[dom_off[static_cast<size_t>(kk.first)] + c][cod_off[static_cast<size_t>(kk.second)] + r] += v;
        std::vector<SpVec<S>> rows;
        rows.reserve(cols.size());
        for (auto& [c, m2] : cols) rows.push_back(spvec_from_map(m2));
        return sparse_rank(rows);
    }

    size_t nnz() const {
        size_t t = 0;
        for (const auto& [kk, b] : blocks) t += b.nnz();
        return t;
    }
};

/// Builds an operator from its action on basis states. The action receives a
/// mask and emits (mask, coefficient) pairs via the sink.
template <class S>
GradedOp<S> build_op(int m, int n,
                     const std::function<void(uint32_t, const std::function<void(uint32_t, const S&)>&)>& action) {
    GradedOp<S> op(m, n);
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        action(mask, [&](uint32_t to, const S& v) { op.add_entry(mask, to, v); });
    }
    op.prune();
    return op;
}

/// Adjoint with respect to the weight pairing <rho, rho'> = delta q^{weight}:
/// the matrix-level realization of reflecting a diagram about the horizontal
/// axis (exchanges cups and caps, fixes Jones-Wenzl boxes).
template <class S, class Ring>
GradedOp<S> transpose_form(const GradedOp<S>& T, const Ring& R) {
    GradedOp<S> r(T.n, T.m);
    for (const auto& [kk, blk] : T.blocks) {
        auto [k, k2] = kk;
        S f = R.qpow(k2 - k);
        auto tr = blk.transposed().scaled(f);
        if (!tr.is_zero()) r.blocks.emplace(std::make_pair(k2, k), std::move(tr));
    }
    return r;
}

} // namespace qpa
