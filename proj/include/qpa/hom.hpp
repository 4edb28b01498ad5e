#pragma once

#include "qpa/diagrams.hpp"
#include "qpa/modules.hpp"

namespace qpa {

/// A module given by flat matrices: diagonal K (as an eigenvalue list) plus
/// sparse E and F. Tensor powers are flattened with basis ordered by
/// (weight, lexicographic rank), so weight structure remains visible.
struct FlatModule {
    int dim = 0;
    std::vector<Cyc> keig;
    SparseMat<Cyc> E, F;

    static FlatModule from_presentation(const ModulePresentation& M) {
        FlatModule f;
        f.dim = M.dim();
        f.keig = M.k_diag();
        f.E = M.E.to_sparse();
        f.F = M.F.to_sparse();
        return f;
    }

    static FlatModule from_tensor_power(int z, const RootRing& R) {
        FlatModule f;
        f.dim = 1 << z;
        f.keig.resize(static_cast<size_t>(f.dim));
        for (int k = 0; k <= z; ++k) {
            Cyc ev = R.qpow(z - 2 * k);
            int off = tensor_offset(z, k);
            for (int r = 0; r < weight_dim(z, k); ++r) f.keig[static_cast<size_t>(off + r)] = ev;
        }
        f.E = flatten(act_E(z, R), z, z);
        f.F = flatten(act_F(z, R), z, z);
        return f;
    }

    static int tensor_offset(int z, int k) {
        int off = 0;
        for (int j = 0; j < k; ++j) off += weight_dim(z, j);
        return off;
    }

    static int tensor_index(uint32_t mask, int z) {
        int k = std::popcount(mask);
        return tensor_offset(z, k) + state_rank(mask, z);
    }

    static SparseMat<Cyc> flatten(const GradedOp<Cyc>& T, int m, int n) {
        assert(T.m == m && T.n == n);
        SparseMat<Cyc> r(1 << n, 1 << m);
        for (const auto& [kk, blk] : T.blocks) {
            int co = tensor_offset(m, kk.first), ro = tensor_offset(n, kk.second);
            for (int c = 0; c < blk.cols; ++c)
                for (const auto& [row, v] : blk.col[static_cast<size_t>(c)])
                    r.add_to(ro + row, co + c, v);
        }
        return r;
    }

    static GradedOp<Cyc> unflatten(const SparseMat<Cyc>& M, int m, int n) {
        GradedOp<Cyc> r(m, n);
        std::vector<int> wcol(static_cast<size_t>(1 << m)), wrow(static_cast<size_t>(1 << n));
        for (int k = 0, idx = 0; k <= m; ++k)
            for (int j = 0; j < weight_dim(m, k); ++j) wcol[static_cast<size_t>(idx++)] = k;
        for (int k = 0, idx = 0; k <= n; ++k)
            for (int j = 0; j < weight_dim(n, k); ++j) wrow[static_cast<size_t>(idx++)] = k;
        for (int c = 0; c < M.cols; ++c)
            for (const auto& [row, v] : M.col[static_cast<size_t>(c)]) {
                int k = wcol[static_cast<size_t>(c)], k2 = wrow[static_cast<size_t>(row)];
                r.block(k, k2).add_to(row - tensor_offset(n, k2), c - tensor_offset(m, k), v);
            }
        r.prune();
        return r;
    }
};

/// Basis of the space of module maps A -> B (commuting with E, F, K), solved
/// blockwise over matching K-eigenvalue pairs with deterministic pivoting.
inline std::vector<SparseMat<Cyc>> hom_space(const FlatModule& A, const FlatModule& B) {
    // unknowns: entries T[r][c] with matching eigenvalues
    std::vector<std::pair<int, int>> unknowns;
    for (int r = 0; r < B.dim; ++r)
        for (int c = 0; c < A.dim; ++c)
            if (B.keig[static_cast<size_t>(r)] == A.keig[static_cast<size_t>(c)])
                unknowns.emplace_back(r, c);
    if (unknowns.empty()) return {};

    std::map<std::pair<int, int>, std::map<int, Cyc>> eqs; // (r, c') -> unknown -> coeff
    auto add_commutator_eqs = [&](const SparseMat<Cyc>& XA, const SparseMat<Cyc>& XB, int tag) {
        // (T XA - XB T)[r][c'] = 0
        auto XArows = XA.transposed();
        for (size_t u = 0; u < unknowns.size(); ++u) {
            auto [r, c] = unknowns[u];
            // T[r][c] * XA[c][c'] contributes to eq (r, c')
            for (const auto& [cp, v] : XArows.col[static_cast<size_t>(c)])
                eqs[{r + tag * B.dim, cp}][static_cast<int>(u)] += v;
            // -XB[r'][r] * T[r][c] contributes to eq (r', c)
            for (const auto& [rp, v] : XB.col[static_cast<size_t>(r)])
                eqs[{rp + tag * B.dim, c}][static_cast<int>(u)] -= v;
        }
    };
    add_commutator_eqs(A.E, B.E, 0);
    add_commutator_eqs(A.F, B.F, 1);

    std::vector<SpVec<Cyc>> rows;
    rows.reserve(eqs.size());
    for (auto& [key, m] : eqs) rows.push_back(spvec_from_map(m));
    Cyc one = Cyc::from_rat(A.keig[0].field(), Rat(1));
    auto null_basis = sparse_nullspace(rows, static_cast<int>(unknowns.size()), one);

    std::vector<SparseMat<Cyc>> out;
    for (const auto& nv : null_basis) {
        SparseMat<Cyc> T(B.dim, A.dim);
        for (const auto& [u, v] : nv) {
            auto [r, c] = unknowns[static_cast<size_t>(u)];
            T.add_to(r, c, v);
        }
        out.push_back(std::move(T));
    }
    return out;
}

inline int hom_dim(const FlatModule& A, const FlatModule& B) {
    return static_cast<int>(hom_space(A, B).size());
}

/// True iff T: A -> B is a module map.
inline bool is_intertwiner_flat(const SparseMat<Cyc>& T, const FlatModule& A, const FlatModule& B) {
    for (int c = 0; c < A.dim; ++c)
        for (const auto& [r, v] : T.col[static_cast<size_t>(c)])
            if (!(B.keig[static_cast<size_t>(r)] == A.keig[static_cast<size_t>(c)])) return false;
    return T * A.E == B.E * T && T * A.F == B.F * T;
}

/// Rank factorization P = B C of an idempotent sparse matrix, with C B = Id_r.
/// B's columns are pivot columns of P, C the nonzero rows of the RREF.
inline std::pair<SparseMat<Cyc>, SparseMat<Cyc>> idempotent_factor(const SparseMat<Cyc>& P) {
    // row echelon of P's rows
    std::vector<SpVec<Cyc>> rows(static_cast<size_t>(P.rows));
    {
        std::vector<std::map<int, Cyc>> acc(static_cast<size_t>(P.rows));
        for (int c = 0; c < P.cols; ++c)
            for (const auto& [r, v] : P.col[static_cast<size_t>(c)]) acc[static_cast<size_t>(r)][c] = v;
        for (int r = 0; r < P.rows; ++r) rows[static_cast<size_t>(r)] = spvec_from_map(acc[static_cast<size_t>(r)]);
    }
    Echelon<Cyc> ech;
    for (const auto& r : rows) ech.add(r);
    int rank = ech.rank();
    SparseMat<Cyc> B(P.rows, rank), C(rank, P.cols);
    int j = 0;
    for (const auto& [pc, prow] : ech.pivot_rows) {
        // column pc of P becomes column j of B
        B.col[static_cast<size_t>(j)] = P.col[static_cast<size_t>(pc)];
        for (const auto& [c, v] : prow) C.add_to(j, c, v);
        ++j;
    }
    return {B, C};
}

/// Restriction of a module to the image of an idempotent intertwiner.
struct ImageModule {
    FlatModule mod;        // the induced module on im(P)
    SparseMat<Cyc> emb;    // B: im -> ambient
    SparseMat<Cyc> proj;   // C: ambient -> im (C B = Id)

    /// Lifts an endomorphism of the image back to the ambient space.
    SparseMat<Cyc> push(const SparseMat<Cyc>& t) const { return emb * t * proj; }
    /// Restricts an ambient endomorphism commuting with P to the image.
    SparseMat<Cyc> pull(const SparseMat<Cyc>& T) const { return proj * T * emb; }
};

inline ImageModule restrict_to_image(const FlatModule& M, const SparseMat<Cyc>& P) {
    auto [B, C] = idempotent_factor(P);
    ImageModule im;
    im.emb = B;
    im.proj = C;
    im.mod.dim = B.cols;
    im.mod.E = C * M.E * B;
    im.mod.F = C * M.F * B;
    im.mod.keig.resize(static_cast<size_t>(B.cols));
    for (int j = 0; j < B.cols; ++j) {
        // the image basis vectors are K-homogeneous because P commutes with K
        const auto& column = B.col[static_cast<size_t>(j)];
        assert(!column.empty());
        im.mod.keig[static_cast<size_t>(j)] = M.keig[static_cast<size_t>(column.front().first)];
        for (const auto& [r, v] : column)
            assert(M.keig[static_cast<size_t>(r)] == im.mod.keig[static_cast<size_t>(j)]);
    }
    return im;
}

/// Sorted K-spectrum (with multiplicity) of a flat module, as strings for
/// deterministic comparison.
inline std::vector<std::string> spectrum_of(const std::vector<Cyc>& eigs) {
    std::vector<std::string> out;
    out.reserve(eigs.size());
    for (const auto& e : eigs) out.push_back(e.to_string());
    std::sort(out.begin(), out.end());
    return out;
}

/// Sorted K-spectrum of the image of an idempotent.
inline std::vector<std::string> image_spectrum(const FlatModule& M, const SparseMat<Cyc>& P) {
    auto im = restrict_to_image(M, P);
    return spectrum_of(im.mod.keig);
}

inline int sparse_mat_rank(const SparseMat<Cyc>& M) {
    std::vector<SpVec<Cyc>> rows;
    for (int c = 0; c < M.cols; ++c)
        if (!M.col[static_cast<size_t>(c)].empty()) rows.push_back(M.col[static_cast<size_t>(c)]);
    return sparse_rank(rows);
}

} // namespace qpa
