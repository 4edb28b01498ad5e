#pragma once

#include "qpa/duality.hpp"
#include "qpa/root_gens.hpp"

namespace qpa {

/// Projection onto P^+_i in X^{otimes 2p-i-1} (sign +) or onto the pair
/// P^-_i + P^-_i in X^{otimes 3p-i-1} (sign -), built by descent along the
/// fusion rules. Flat representation; copies carry the split data for the
/// negative pair.
struct ProjectionBundle {
    int p = 0, i = 0;
    Sign sign = Sign::Plus;
    int ambient = 0;
    RootRing ring{2};
    std::string method = "descent";
    SparseMat<Cyc> P;
    std::vector<Copy> copies; // ambient-level copies of the target type

    GradedOp<Cyc> graded() const { return FlatModule::unflatten(P, ambient, ambient); }
};

namespace detail {

inline Copy lift_copy(const Copy& c, const ImageModule& im) {
    Copy r;
    r.type = c.type;
    r.idem = im.emb * c.idem * im.proj;
    r.into = im.emb * c.into;
    r.onto = c.onto * im.proj;
    return r;
}

/// Hom dimension between indecomposable types, per the module category table.
inline int hom_table_dim(const SummandType& a, const SummandType& b, int p) {
    bool same_sign = a.sign == b.sign;
    if (a.kind == ModKind::Simple && b.kind == ModKind::Simple)
        return (same_sign && a.s == b.s) ? 1 : 0;
    if (a.kind != b.kind) {
        int s = a.kind == ModKind::Projective ? a.s : b.s;
        int t = a.kind == ModKind::Projective ? b.s : a.s;
        return (same_sign && s == t && t <= p - 1) ? 1 : 0;
    }
    if (same_sign) return a.s == b.s ? 2 : 0;
    return a.s == p - b.s ? 2 : 0;
}

/// The descent extraction target must be the unique sub-multiset of the image
/// decomposition with the target K-spectrum AND the target endomorphism-ring
/// dimension. (The K-spectrum alone can collide: at p = 3 a projective and a
/// doubled Steinberg-type simple share their spectrum because -q = q^{-2}.)
inline bool unique_summand_choice(const Decomposition& d, const std::vector<std::string>& target_spec,
                                  int target_end_dim, const RootRing& R) {
    int p = R.p();
    std::vector<std::pair<SummandType, int>> types(d.counts.begin(), d.counts.end());
    std::vector<std::vector<std::string>> spectra;
    for (const auto& [t, c] : types) spectra.push_back(spectrum_of(build_type(t, R).k_diag()));
    int matches = 0;
    std::vector<int> mult(types.size(), 0);
    std::function<void(size_t, size_t)> rec = [&](size_t idx, size_t size_so_far) {
        if (size_so_far > target_spec.size()) return;
        if (idx == types.size()) {
            if (size_so_far != target_spec.size()) return;
            std::vector<std::string> acc;
            int end_dim = 0;
            for (size_t a = 0; a < types.size(); ++a) {
                for (int r = 0; r < mult[a]; ++r)
                    acc.insert(acc.end(), spectra[a].begin(), spectra[a].end());
                for (size_t b = 0; b < types.size(); ++b)
                    end_dim += mult[a] * mult[b] * hom_table_dim(types[a].first, types[b].first, p);
            }
            std::sort(acc.begin(), acc.end());
            if (acc == target_spec && end_dim == target_end_dim) ++matches;
            return;
        }
        size_t tdim = static_cast<size_t>(type_dim(types[idx].first, p));
        for (int m = 0; m <= types[idx].second; ++m) {
            mult[idx] = m;
            rec(idx + 1, size_so_far + static_cast<size_t>(m) * tdim);
        }
        mult[idx] = 0;
    };
    rec(0, 0);
    return matches == 1;
}

inline SparseMat<Cyc> tensor_right_by_x(const SparseMat<Cyc>& P, int z, const RootRing& R) {
    auto g = FlatModule::unflatten(P, z, z);
    return FlatModule::flatten(pad(g, 0, 1, R), z + 1, z + 1);
}

inline bool self_adjoint_flat(const SparseMat<Cyc>& P, int z, const RootRing& R) {
    return adjoint_flat(P, z, z, R) == P;
}

} // namespace detail

/// Descent construction of the projection onto P^+_i inside X^{otimes 2p-i-1}:
/// start from f_{p-1} (x) 1 and repeatedly tensor by X, extracting the unique
/// idempotent with the K-spectrum of the next projective.
inline ProjectionBundle proj_pos(int i, const RootRing& R) {
    int p = R.p();
    if (i < 1 || i > p - 1) throw std::invalid_argument("proj_pos requires 1 <= i <= p-1");
    int z = p;
    SparseMat<Cyc> P = FlatModule::flatten(pad(jw_at_root(p - 1, R), 0, 1, R), z, z);
    std::vector<Copy> copies;
    if (i == p - 1) {
        auto M = FlatModule::from_tensor_power(z, R);
        auto im = restrict_to_image(M, P);
        auto dec = decompose(im.mod, R);
        for (const auto& c : dec.copies)
            if (c.type == SummandType{ModKind::Projective, p - 1, Sign::Plus})
                copies.push_back(detail::lift_copy(c, im));
    }
    for (int j = p - 1; j > i; --j) {
        SparseMat<Cyc> Q = detail::tensor_right_by_x(P, z, R);
        ++z;
        auto M = FlatModule::from_tensor_power(z, R);
        auto im = restrict_to_image(M, Q);
        auto dec = decompose(im.mod, R);
        SummandType target{ModKind::Projective, j - 1, Sign::Plus};
        auto target_spec = spectrum_of(build_type(target, R).k_diag());
        if (!detail::unique_summand_choice(dec, target_spec, 2, R))
            throw std::runtime_error("descent idempotent is not unique for its spectrum and End-dimension");
        copies.clear();
        SparseMat<Cyc> next(1 << z, 1 << z);
        int found = 0;
        for (const auto& c : dec.copies)
            if (c.type == target) {
                auto lifted = detail::lift_copy(c, im);
                next = next + lifted.idem;
                copies.push_back(std::move(lifted));
                ++found;
            }
        if (found != 1) throw std::runtime_error("descent step did not find a unique projective copy");
        P = std::move(next);
    }
    assert(detail::self_adjoint_flat(P, z, R));
    return {p, i, Sign::Plus, z, R, "descent", std::move(P), std::move(copies)};
}
inline ProjectionBundle proj_pos(int i, int p) { return proj_pos(i, RootRing(p)); }

/// Descent construction of the projection onto P^-_i + P^-_i inside
/// X^{otimes 3p-i-1}: project im(P^+_1 (x) X) onto its 2 X^-_p part, then
/// keep tensoring by X and extracting the doubled projective.
inline ProjectionBundle proj_neg_pair(int i, const RootRing& R) {
    int p = R.p();
    if (i < 1 || i > p - 1) throw std::invalid_argument("proj_neg_pair requires 1 <= i <= p-1");
    // P^+_1 on X^{otimes 2p-2}; at p = 2 this is the identity on X (x) X
    SparseMat<Cyc> P1 =
        p == 2 ? SparseMat<Cyc>::identity(4, R.one()) : proj_pos(1, R).P;
    int z = 2 * p - 1;
    SparseMat<Cyc> Q = detail::tensor_right_by_x(P1, z - 1, R);
    std::vector<Copy> copies;
    {
        auto M = FlatModule::from_tensor_power(z, R);
        auto im = restrict_to_image(M, Q);
        auto dec = decompose(im.mod, R);
        SummandType target{ModKind::Simple, p, Sign::Minus};
        SparseMat<Cyc> iso(1 << z, 1 << z);
        int found = 0;
        for (const auto& c : dec.copies)
            if (c.type == target) {
                iso = iso + detail::lift_copy(c, im).idem;
                ++found;
            }
        if (found != 2) throw std::runtime_error("expected two X^-_p copies to start the chain");
        Q = std::move(iso);
    }
    for (int j = p - 1; j >= i; --j) {
        SparseMat<Cyc> QX = detail::tensor_right_by_x(Q, z, R);
        ++z;
        auto M = FlatModule::from_tensor_power(z, R);
        auto im = restrict_to_image(M, QX);
        auto dec = decompose(im.mod, R);
        SummandType target{ModKind::Projective, j, Sign::Minus};
        auto one_spec = spectrum_of(build_type(target, R).k_diag());
        std::vector<std::string> pair_spec;
        pair_spec.insert(pair_spec.end(), one_spec.begin(), one_spec.end());
        pair_spec.insert(pair_spec.end(), one_spec.begin(), one_spec.end());
        std::sort(pair_spec.begin(), pair_spec.end());
        if (!detail::unique_summand_choice(dec, pair_spec, 8, R))
            throw std::runtime_error("negative descent idempotent is not unique for its spectrum and End-dimension");
        copies.clear();
        SparseMat<Cyc> next(1 << z, 1 << z);
        int found = 0;
        for (const auto& c : dec.copies)
            if (c.type == target) {
                auto lifted = detail::lift_copy(c, im);
                next = next + lifted.idem;
                copies.push_back(std::move(lifted));
                ++found;
            }
        if (found != 2) throw std::runtime_error("negative descent expected exactly two copies");
        Q = std::move(next);
    }
    assert(z == 3 * p - i - 1);
    assert(detail::self_adjoint_flat(Q, z, R));
    return {p, i, Sign::Minus, z, R, "descent", std::move(Q), std::move(copies)};
}
inline ProjectionBundle proj_neg_pair(int i, int p) { return proj_neg_pair(i, RootRing(p)); }

/// The left-tensored variant of the positive descent: the chain tensors X on
/// the left instead of the right (the Remark's alternate convention).
inline ProjectionBundle proj_pos_left(int i, const RootRing& R) {
    int p = R.p();
    if (i < 1 || i > p - 1) throw std::invalid_argument("proj_pos_left requires 1 <= i <= p-1");
    int z = p;
    SparseMat<Cyc> P = FlatModule::flatten(pad(jw_at_root(p - 1, R), 1, 0, R), z, z);
    for (int j = p - 1; j > i; --j) {
        auto g = FlatModule::unflatten(P, z, z);
        SparseMat<Cyc> Q = FlatModule::flatten(pad(g, 1, 0, R), z + 1, z + 1);
        ++z;
        auto M = FlatModule::from_tensor_power(z, R);
        auto im = restrict_to_image(M, Q);
        auto dec = decompose(im.mod, R);
        SummandType target{ModKind::Projective, j - 1, Sign::Plus};
        SparseMat<Cyc> next(1 << z, 1 << z);
        int found = 0;
        for (const auto& c : dec.copies)
            if (c.type == target) {
                next = next + detail::lift_copy(c, im).idem;
                ++found;
            }
        if (found != 1) throw std::runtime_error("left descent did not find a unique projective copy");
        P = std::move(next);
    }
    return {p, i, Sign::Plus, z, R, "descent-left", std::move(P), {}};
}

/// Exploratory check of the Remark on alternate (left-tensored) projections:
/// reports whether the left and right chains give the same idempotent and
/// which averages are again idempotent.
inline std::vector<std::string> explore_projection_sums(int p) {
    RootRing R(p);
    std::vector<std::string> notes;
    for (int i = 1; i <= p - 1; ++i) {
        auto right = proj_pos(i, R).P;
        auto left = proj_pos_left(i, R).P;
        bool equal = right == left;
        auto avg = (right + left).scaled(R.from_rat(Rat(1, 2)));
        bool avg_idem = avg * avg == avg;
        notes.push_back("p=" + std::to_string(p) + " i=" + std::to_string(i) +
                        ": left == right: " + (equal ? "yes" : "no") +
                        "; (left+right)/2 idempotent: " + (avg_idem ? "yes" : "no"));
    }
    return notes;
}

/// Splits the negative pair into two orthogonal rank-2p idempotents
/// (the deterministic dual-basis split; recorded in the bundle's copies).
inline std::pair<SparseMat<Cyc>, SparseMat<Cyc>> split_neg(const ProjectionBundle& b) {
    if (b.sign != Sign::Minus || b.copies.size() != 2)
        throw std::invalid_argument("split_neg needs a negative pair bundle");
    return {b.copies[0].idem, b.copies[1].idem};
}

/// End(im P) analysis: dimension, radical dimension by the trace form, and
/// nilpotency of the radical elements.
struct EndReport {
    int dim = 0;
    int radical_dim = 0;
    bool radical_squares_to_zero = false;
};

inline EndReport end_of_image(const FlatModule& M, const SparseMat<Cyc>& P, const RootRing& R) {
    auto im = restrict_to_image(M, P);
    auto basis = hom_space(im.mod, im.mod);
    EndReport rep;
    rep.dim = static_cast<int>(basis.size());
    // trace form
    auto trace = [&](const SparseMat<Cyc>& T) {
        Cyc t;
        for (int c = 0; c < T.cols; ++c)
            for (const auto& [r, v] : T.col[static_cast<size_t>(c)])
                if (r == c) t += v;
        return t;
    };
    std::vector<SpVec<Cyc>> gram_rows;
    for (size_t a = 0; a < basis.size(); ++a) {
        std::map<int, Cyc> row;
        for (size_t bx = 0; bx < basis.size(); ++bx) {
            Cyc t = trace(basis[a] * basis[bx]);
            if (!t.is_zero()) row[static_cast<int>(bx)] = t;
        }
        gram_rows.push_back(spvec_from_map(row));
    }
    auto rad = sparse_nullspace(gram_rows, static_cast<int>(basis.size()), R.one());
    rep.radical_dim = static_cast<int>(rad.size());
    rep.radical_squares_to_zero = true;
    for (const auto& rv : rad) {
        SparseMat<Cyc> n(im.mod.dim, im.mod.dim);
        for (const auto& [a, v] : rv) n = n + basis[static_cast<size_t>(a)].scaled(v);
        if (!(n * n).is_zero()) rep.radical_squares_to_zero = false;
    }
    return rep;
}

/// Full verification of a projection bundle per the Theorem 2 contract.
inline std::vector<CheckResult> verify_projection(const ProjectionBundle& b,
                                                  const SparseMat<Cyc>* phi = nullptr) {
    const RootRing& R = b.ring;
    auto M = FlatModule::from_tensor_power(b.ambient, R);
    std::vector<CheckResult> out;
    auto rec = [&](const std::string& id, bool ok, const std::string& detail = "") {
        out.push_back({id, ok, detail});
    };
    rec("idempotent", b.P * b.P == b.P);
    rec("intertwiner", is_intertwiner_flat(b.P, M, M));
    rec("self-adjoint", detail::self_adjoint_flat(b.P, b.ambient, R));
    int expected_rank = b.sign == Sign::Plus ? 2 * b.p : 4 * b.p;
    rec("rank", sparse_mat_rank(b.P) == expected_rank,
        "expected " + std::to_string(expected_rank));
    auto T = build_projective(b.i, b.sign, R);
    auto one_spec = spectrum_of(T.k_diag());
    std::vector<std::string> want = one_spec;
    if (b.sign == Sign::Minus) {
        want.insert(want.end(), one_spec.begin(), one_spec.end());
        std::sort(want.begin(), want.end());
    }
    rec("spectrum", image_spectrum(M, b.P) == want);
    auto endrep = end_of_image(M, b.P, R);
    if (b.sign == Sign::Plus) {
        rec("end-dim", endrep.dim == 2, "dim End(im P) = " + std::to_string(endrep.dim));
        rec("end-nilpotent", endrep.radical_dim == 1 && endrep.radical_squares_to_zero);
    } else {
        rec("end-dim", endrep.dim == 8, "dim End(im P) = " + std::to_string(endrep.dim));
        auto [e1, e2] = split_neg(b);
        rec("split-idempotents", e1 * e1 == e1 && e2 * e2 == e2);
        rec("split-orthogonal", (e1 * e2).is_zero() && (e2 * e1).is_zero());
        rec("split-sum", e1 + e2 == b.P);
        rec("split-ranks", sparse_mat_rank(e1) == 2 * b.p && sparse_mat_rank(e2) == 2 * b.p);
        auto er1 = end_of_image(M, e1, R), er2 = end_of_image(M, e2, R);
        rec("split-end", er1.dim == 2 && er2.dim == 2 && er1.radical_squares_to_zero &&
                             er2.radical_squares_to_zero);
        // the two halves are isomorphic: transporting one onto the other is invertible
        auto iso = b.copies[1].into * b.copies[0].onto;
        rec("split-isomorphic", sparse_mat_rank(iso) == 2 * b.p);
    }
    if (phi) {
        rec("absorbs-phi", b.P * *phi == *phi && *phi * b.P == *phi);
    }
    return out;
}

} // namespace qpa
