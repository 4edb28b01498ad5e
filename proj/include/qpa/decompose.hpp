#pragma once

#include "qpa/hom.hpp"

namespace qpa {

/// Identification key of an indecomposable summand type.
struct SummandType {
    ModKind kind;
    int s = 0;
    Sign sign = Sign::Plus;

    friend bool operator<(const SummandType& a, const SummandType& b) {
        return std::tie(a.kind, a.s, a.sign) < std::tie(b.kind, b.s, b.sign);
    }
    friend bool operator==(const SummandType& a, const SummandType& b) {
        return a.kind == b.kind && a.s == b.s && a.sign == b.sign;
    }
    std::string name() const {
        return (kind == ModKind::Simple ? "X" : "P") + std::string(1, sign_char(sign)) + "_" +
               std::to_string(s);
    }
};

inline ModulePresentation build_type(const SummandType& t, const RootRing& R) {
    return t.kind == ModKind::Simple ? build_simple(t.s, t.sign, R) : build_projective(t.s, t.sign, R);
}
inline ModulePresentation build_type(const SummandType& t, int p) { return build_type(t, RootRing(p)); }

inline std::vector<SummandType> all_types(int p) {
    std::vector<SummandType> out;
    for (int s = 1; s <= p - 1; ++s) {
        out.push_back({ModKind::Projective, s, Sign::Plus});
        out.push_back({ModKind::Projective, s, Sign::Minus});
    }
    for (int s = 1; s <= p; ++s) {
        out.push_back({ModKind::Simple, s, Sign::Plus});
        out.push_back({ModKind::Simple, s, Sign::Minus});
    }
    return out;
}

namespace detail {

/// Element of the local ring F[N]/(N^2) = End of a projective indecomposable
/// (b = 0 for the field, End of a simple).
struct Loc {
    Cyc a, b;
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_unit() const { return !a.is_zero(); }
    friend Loc operator*(const Loc& x, const Loc& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
    friend Loc operator+(const Loc& x, const Loc& y) { return {x.a + y.a, x.b + y.b}; }
    friend Loc operator-(const Loc& x, const Loc& y) { return {x.a - y.a, x.b - y.b}; }
    Loc operator-() const { return {-a, -b}; }
    Loc inv() const {
        Cyc ai = a.inv();
        return {ai, -(ai * ai * b)};
    }
};

/// Expresses an endomorphism of a summand presentation in the basis {id, n}
/// (n the second endomorphism; absent for simples). Throws on failure.
inline Loc end_coords(const DenseMat<Cyc>& C, const ModulePresentation& T) {
    Loc r;
    if (T.kind == ModKind::Simple) {
        r.a = C.at(0, 0);
        DenseMat<Cyc> expect = DenseMat<Cyc>::identity(T.dim(), T.ring.one()).scaled(r.a);
        if (!(C == expect)) throw std::runtime_error("endomorphism of a simple is not scalar");
        return r;
    }
    int b0 = T.s; // index of b_0; the second endomorphism sends b_0 -> a_0
    r.a = C.at(b0, b0);
    r.b = C.at(0, b0);
    const RootRing& R = T.ring;
    auto n = std_hom(T, T, StdHomKind::SecondEndo);
    DenseMat<Cyc> expect = DenseMat<Cyc>::identity(T.dim(), R.one()).scaled(r.a) + n.scaled(r.b);
    if (!(C == expect)) throw std::runtime_error("endomorphism of a projective is outside {id, n}");
    return r;
}

} // namespace detail

/// One extracted indecomposable direct summand of a flat module.
struct Copy {
    SummandType type;
    SparseMat<Cyc> idem;  // idempotent M -> M with image this copy
    SparseMat<Cyc> into;  // embedding T -> M
    SparseMat<Cyc> onto;  // projection M -> T, with onto * into = id_T
};

struct Decomposition {
    std::map<SummandType, int> counts;
    std::vector<Copy> copies;
};

/// Full direct-sum decomposition of M into the known indecomposable types:
/// for each type, dual bases of Hom(M,T) x Hom(T,M) over End(T) give one
/// idempotent per copy; the complete system is then orthogonalized through
/// the radical by Newton iteration.
inline Decomposition decompose(const FlatModule& M, const RootRing& R) {
    int p = R.p();
    Decomposition result;
    std::vector<Copy> raw;

    for (const auto& type : all_types(p)) {
        auto T = build_type(type, R);
        auto Tf = FlatModule::from_presentation(T);
        auto hout = hom_space(M, Tf); // maps M -> T
        auto hin = hom_space(Tf, M);  // maps T -> M
        if (hout.empty() || hin.empty()) continue;
        size_t no = hout.size(), ni = hin.size();
        // pairing matrix over End(T)
        std::vector<std::vector<detail::Loc>> lam(no, std::vector<detail::Loc>(ni));
        for (size_t i = 0; i < no; ++i)
            for (size_t j = 0; j < ni; ++j)
                lam[i][j] = detail::end_coords(DenseMat<Cyc>::from_sparse(hout[i] * hin[j]), T);
        // greedy unit-pivot elimination to find an invertible submatrix
        std::vector<std::vector<detail::Loc>> work = lam;
        std::vector<size_t> rows_sel, cols_sel;
        std::vector<bool> row_used(no, false);
        for (size_t j = 0; j < ni; ++j) {
            size_t piv = no;
            for (size_t i = 0; i < no; ++i)
                if (!row_used[i] && work[i][j].is_unit()) { piv = i; break; }
            if (piv == no) continue;
            row_used[piv] = true;
            rows_sel.push_back(piv);
            cols_sel.push_back(j);
            detail::Loc inv = work[piv][j].inv();
            for (size_t i = 0; i < no; ++i) {
                if (i == piv || work[i][j].is_zero()) continue;
                detail::Loc f = work[i][j] * inv;
                for (size_t jj = 0; jj < ni; ++jj) work[i][jj] = work[i][jj] - f * work[piv][jj];
            }
        }
        size_t r = rows_sel.size();
        if (r == 0) continue;
        // invert the selected submatrix over the local ring (unit pivots exist)
        std::vector<std::vector<detail::Loc>> sub(r, std::vector<detail::Loc>(r)), inv(r, std::vector<detail::Loc>(r));
        Cyc one = R.one();
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < r; ++j) sub[i][j] = lam[rows_sel[i]][cols_sel[j]];
            inv[i][i] = {one, Cyc()};
        }
        for (size_t c = 0; c < r; ++c) {
            size_t piv = r;
            for (size_t i = c; i < r; ++i)
                if (sub[i][c].is_unit()) { piv = i; break; }
            if (piv == r) throw std::runtime_error("pairing submatrix not invertible");
            std::swap(sub[piv], sub[c]);
            std::swap(inv[piv], inv[c]);
            detail::Loc d = sub[c][c].inv();
            for (size_t j = 0; j < r; ++j) {
                sub[c][j] = d * sub[c][j];
                inv[c][j] = d * inv[c][j];
            }
            for (size_t i = 0; i < r; ++i) {
                if (i == c || sub[i][c].is_zero()) continue;
                detail::Loc f = sub[i][c];
                for (size_t j = 0; j < r; ++j) {
                    sub[i][j] = sub[i][j] - f * sub[c][j];
                    inv[i][j] = inv[i][j] - f * inv[c][j];
                }
            }
        }
        // dual embeddings: g'_k = sum_j hin[cols_sel[j]] . inv[j][k], so that
        // hout[rows_sel[i]] g'_k = delta_{ik}
        auto nmat = (T.kind == ModKind::Projective)
                        ? std_hom(T, T, StdHomKind::SecondEndo).to_sparse()
                        : SparseMat<Cyc>(T.dim(), T.dim());
        auto idT = SparseMat<Cyc>::identity(T.dim(), one);
        for (size_t k = 0; k < r; ++k) {
            SparseMat<Cyc> g(M.dim, T.dim());
            for (size_t j = 0; j < r; ++j) {
                auto u = idT.scaled(inv[j][k].a) + nmat.scaled(inv[j][k].b);
                g = g + hin[cols_sel[j]] * u;
            }
            Copy cp;
            cp.type = type;
            cp.into = g;
            cp.onto = hout[rows_sel[k]];
            cp.idem = g * cp.onto;
            raw.push_back(std::move(cp));
        }
    }

    // orthogonalize the complete system through the radical
    auto idM = SparseMat<Cyc>::identity(M.dim, R.one());
    SparseMat<Cyc> used(M.dim, M.dim);
    for (auto& cp : raw) {
        auto f = idM - used;
        auto e = f * cp.idem * f;
        // Newton iteration e <- 3e^2 - 2e^3 converges since e is idempotent
        // modulo the nilpotent cross-terms
        bool ok = false;
        for (int it = 0; it < 8; ++it) {
            auto e2 = e * e;
            if (e2 == e) { ok = true; break; }
            e = e2.scaled(R.from_int(3)) - (e2 * e).scaled(R.from_int(2));
        }
        if (!ok) throw std::runtime_error("idempotent lifting did not converge");
        if (e.is_zero()) continue;
        cp.idem = e;
        // re-derive the embedding/projection pair through the lifted idempotent:
        // into' = e * into has onto * into' = onto * e * into; instead keep the
        // factorization of e itself restricted along the copy
        used = used + e;
        result.copies.push_back(cp);
        result.counts[cp.type] += 1;
    }
    if (!(used == idM)) throw std::runtime_error("identification failure: summands do not fill the module");
    // repair into/onto through the lifted idempotent so that onto * into = id_T
    // and into * onto = idem exactly
    for (auto& cp : result.copies) {
        cp.into = cp.idem * cp.into;
        cp.onto = cp.onto * cp.idem;
        auto gram = cp.onto * cp.into; // a unit of End(T)
        auto T = build_type(cp.type, R);
        auto li = detail::end_coords(DenseMat<Cyc>::from_sparse(gram), T).inv();
        auto nmat = (T.kind == ModKind::Projective)
                        ? std_hom(T, T, StdHomKind::SecondEndo).to_sparse()
                        : SparseMat<Cyc>(T.dim(), T.dim());
        auto u = SparseMat<Cyc>::identity(T.dim(), R.one()).scaled(li.a) + nmat.scaled(li.b);
        cp.into = cp.into * u; // now onto * into = id_T
    }
    return result;
}

inline Decomposition decompose(const FlatModule& M, int p) { return decompose(M, RootRing(p)); }

/// Iterated fusion-rule bookkeeping for tensoring with X on the right.
inline std::map<SummandType, int> fuse_with_x(const std::map<SummandType, int>& in, int p) {
    std::map<SummandType, int> out;
    auto add = [&](SummandType t, int mult) { out[t] += mult; };
    for (const auto& [t, mult] : in) {
        Sign sg = t.sign;
        Sign op = (sg == Sign::Plus) ? Sign::Minus : Sign::Plus;
        if (t.kind == ModKind::Simple) {
            if (t.s == 1) add({ModKind::Simple, 2, sg}, mult);
            else if (t.s < p) {
                add({ModKind::Simple, t.s - 1, sg}, mult);
                add({ModKind::Simple, t.s + 1, sg}, mult);
            } else { // s == p
                add({ModKind::Projective, p - 1, sg}, mult);
            }
        } else {
            if (p == 2) {
                // X (x) P_1 = 2 X^{pm}_2 + 2 X^{mp}_2 (the p = 2 reading of
                // 2 P_2 + 2 P^-_2 with P_p := X_p)
                add({ModKind::Simple, 2, sg}, 2 * mult);
                add({ModKind::Simple, 2, op}, 2 * mult);
            } else if (t.s == p - 1) {
                add({ModKind::Projective, p - 2, sg}, mult);
                add({ModKind::Simple, p, sg}, 2 * mult);
            } else if (t.s == 1) {
                add({ModKind::Projective, 2, sg}, mult);
                add({ModKind::Simple, p, op}, 2 * mult);
            } else {
                add({ModKind::Projective, t.s - 1, sg}, mult);
                add({ModKind::Projective, t.s + 1, sg}, mult);
            }
        }
    }
    // P_{p-1} with p = 2 lands on s = p-1 = 1 and was handled by the p == 2 branch;
    // drop any zero entries for canonical comparison
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0) it = out.erase(it);
        else ++it;
    }
    return out;
}

/// Decomposition of X^{otimes n} predicted by iterated fusion.
inline std::map<SummandType, int> fusion_tensor_power(int n, int p) {
    std::map<SummandType, int> cur{{{ModKind::Simple, 1, Sign::Plus}, 1}};
    for (int i = 0; i < n; ++i) cur = fuse_with_x(cur, p);
    return cur;
}

/// Fusion rule P_{p-1} special case at p = 2 uses s = 1; dimension check helper.
inline long type_dim(const SummandType& t, int p) {
    return t.kind == ModKind::Simple ? t.s : 2 * p;
}

} // namespace qpa
