#pragma once

#include "qpa/decompose.hpp"

namespace qpa {

/// Diagonal of the weight pairing <rho, rho'> = delta_{rho,rho'} q^{weight}
/// on the flat basis of X^{otimes z}.
inline std::vector<Cyc> weight_diag(int z, const RootRing& R) {
    std::vector<Cyc> d(static_cast<size_t>(1) << z);
    int idx = 0;
    for (int k = 0; k <= z; ++k) {
        Cyc v = R.qpow(k);
        for (int j = 0; j < weight_dim(z, k); ++j) d[static_cast<size_t>(idx++)] = v;
    }
    return d;
}

/// Adjoint of a flat map X^{zA} -> X^{zB} with respect to the weight pairing;
/// agrees with transpose_form on the graded representation.
inline SparseMat<Cyc> adjoint_flat(const SparseMat<Cyc>& T, int zA, int zB, const RootRing& R) {
    auto dA = weight_diag(zA, R), dB = weight_diag(zB, R);
    SparseMat<Cyc> r(T.cols, T.rows);
    for (int c = 0; c < T.cols; ++c)
        for (const auto& [row, v] : T.col[static_cast<size_t>(c)])
            r.add_to(c, row, dA[static_cast<size_t>(c)].inv() * v * dB[static_cast<size_t>(row)]);
    return r;
}

/// The weight pairing is contravariant for the antiautomorphism
/// sigma: E -> KF, F -> E K^{-1}, K -> K. A duality form on a presentation T
/// is an invertible beta with X^t beta = beta sigma(X) for X in {E, F, K};
/// it makes weight-adjoints of maps to and from tensor powers intertwiners.
struct DualityForm {
    DenseMat<Cyc> beta, beta_inv;
    bool n_fixed = true; // whether the second endomorphism satisfies N* = N
};

inline DualityForm solve_duality_form(const ModulePresentation& T) {
    const RootRing& R = T.ring;
    int d = T.dim();
    auto KF = T.K * T.F;
    DenseMat<Cyc> Kinv(d, d);
    for (int i = 0; i < d; ++i) Kinv.at(i, i) = T.K.at(i, i).inv();
    auto EKi = T.E * Kinv;
    auto transpose = [&](const DenseMat<Cyc>& M) {
        DenseMat<Cyc> r(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) r.at(i, j) = M.at(j, i);
        return r;
    };
    // unknowns: beta entries (i, j) -> i * d + j
    std::vector<SpVec<Cyc>> rows;
    auto add_eqs = [&](const DenseMat<Cyc>& X, const DenseMat<Cyc>& sigmaX) {
        auto Xt = transpose(X);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                // (X^t beta - beta sigmaX)[i][j] = 0
                std::map<int, Cyc> row;
                for (int k = 0; k < d; ++k) {
                    if (!Xt.at(i, k).is_zero()) row[k * d + j] += Xt.at(i, k);
                    if (!sigmaX.at(k, j).is_zero()) row[i * d + k] -= sigmaX.at(k, j);
                }
                auto r = spvec_from_map(row);
                if (!r.empty()) rows.push_back(std::move(r));
            }
    };
    add_eqs(T.E, KF);
    add_eqs(T.F, EKi);
    add_eqs(T.K, T.K);
    auto basis = sparse_nullspace(rows, d * d, R.one());
    if (basis.empty()) throw std::runtime_error("no duality form on " + T.name());
    auto to_mat = [&](const SpVec<Cyc>& v) {
        DenseMat<Cyc> b(d, d);
        for (const auto& [u, val] : v) b.at(u / d, u % d) = val;
        return b;
    };
    auto invertible = [&](const DenseMat<Cyc>& b) { return b.rank() == d; };
    auto n_is_fixed = [&](const DenseMat<Cyc>& b) {
        if (T.kind != ModKind::Projective) return true;
        auto n = std_hom(T, T, StdHomKind::SecondEndo);
        return transpose(n) * b == b * n;
    };
    // prefer an invertible form fixing the second endomorphism
    std::vector<DenseMat<Cyc>> candidates;
    for (const auto& v : basis) candidates.push_back(to_mat(v));
    if (basis.size() >= 2)
        for (size_t a = 0; a < basis.size(); ++a)
            for (size_t b = a + 1; b < basis.size(); ++b)
                candidates.push_back(to_mat(basis[a]) + to_mat(basis[b]));
    for (const auto& b : candidates) {
        if (!invertible(b)) continue;
        if (n_is_fixed(b)) return {b, b.inverse(R.one()), true};
    }
    for (const auto& b : candidates)
        if (invertible(b)) return {b, b.inverse(R.one()), false};
    throw std::runtime_error("no invertible duality form on " + T.name());
}

/// Adjoint of an embedding T -> X^{otimes z} (flat dim x t): returns X -> T.
inline SparseMat<Cyc> adjoint_into(const SparseMat<Cyc>& into, const DualityForm& f, int z,
                                   const RootRing& R) {
    auto d = weight_diag(z, R);
    int t = into.cols;
    SparseMat<Cyc> scaled(into.rows, t); // D * into
    for (int c = 0; c < t; ++c)
        for (const auto& [r, v] : into.col[static_cast<size_t>(c)])
            scaled.col[static_cast<size_t>(c)].emplace_back(r, d[static_cast<size_t>(r)] * v);
    return f.beta_inv.to_sparse() * scaled.transposed();
}

} // namespace qpa
