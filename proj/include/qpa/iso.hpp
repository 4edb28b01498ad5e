#pragma once

#include "qpa/projections.hpp"

namespace qpa {

enum class FusionRule {
    Base,      // X_p (x) X = P_{p-1}
    TopStep,   // P_{p-1} (x) X = P_{p-2} + 2 X_p        (p >= 3)
    Middle,    // P_i (x) X = P_{i-1} + P_{i+1}, 2 <= i <= p-2
    Bottom,    // P_1 (x) X = P_2 + 2 X^-_p              (p >= 3)
    P2Special  // p = 2: P_1 (x) X = 2 X^+_2 + 2 X^-_2
};

struct IsoEntry {
    std::string target;
    int mB = 0;
    SparseMat<Cyc> V;  // X^{mA} -> X^{mB}
    SparseMat<Cyc> PB; // V V^T must equal PB, cross products vanish
};

struct IsoMap {
    int p = 0;
    RootRing ring{2};
    std::string rule;
    int mA = 0;
    SparseMat<Cyc> PA;
    std::vector<IsoEntry> entries;
};

namespace detail {

struct LocSqrtError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Loc loc_inv(const Loc& x) { return x.inv(); }

inline Loc loc_sqrt(const Loc& x) {
    auto s = x.a.sqrt();
    if (!s || s->is_zero()) throw LocSqrtError("no square root of " + x.a.to_string());
    Cyc half_inv = *s + *s; // 2 sqrt(a)
    return {*s, x.b * half_inv.inv()};
}

/// End(T)-element as a t x t matrix.
inline DenseMat<Cyc> loc_matrix(const Loc& c, const ModulePresentation& T) {
    auto m = DenseMat<Cyc>::identity(T.dim(), T.ring.one()).scaled(c.a);
    if (!c.b.is_zero()) {
        if (T.kind != ModKind::Projective) throw std::logic_error("nilpotent part on a simple type");
        m = m + std_hom(T, T, StdHomKind::SecondEndo).scaled(c.b);
    }
    return m;
}

/// Candidate field elements for square-class hunting.
inline std::vector<Cyc> hunt_candidates(const RootRing& R) {
    std::vector<Cyc> out;
    std::vector<Rat> rats{Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2),
                          Rat(3),  Rat(-3), Rat(1, 3), Rat(-1, 3)};
    for (const auto& r : rats)
        for (int e = 0; e < R.F->order; ++e) {
            Cyc c = R.qpow(e) * r;
            out.push_back(c);
        }
    return out;
}

/// Solves C S C^T = G for 2x2 symmetric matrices over the field, via
/// congruent diagonalization and a square-class hunt; throws on failure.
inline DenseMat<Cyc> solve_congruence2(const DenseMat<Cyc>& S, const DenseMat<Cyc>& G,
                                       const RootRing& R) {
    auto diagonalize = [&](const DenseMat<Cyc>& A, const Cyc& t)
        -> std::optional<std::pair<DenseMat<Cyc>, std::pair<Cyc, Cyc>>> {
        // rows of L: first basis vector e1 + t e2 (or fallbacks)
        std::vector<std::pair<Cyc, Cyc>> firsts{{R.one(), t}};
        if (t.is_zero()) firsts.push_back({Cyc(), R.one()});
        for (const auto& [u, v] : firsts) {
            Cyc d1 = A.at(0, 0) * u * u + (A.at(0, 1) + A.at(1, 0)) * u * v + A.at(1, 1) * v * v;
            if (d1.is_zero()) continue;
            // second vector: w orthogonal to first under A; take w = e2 - proj (or e1)
            // first row (u, v); choose independent seed
            Cyc su = v.is_zero() ? Cyc() : R.one();
            Cyc sv = v.is_zero() ? R.one() : Cyc();
            // make seed independent of (u, v)
            if ((u * sv - v * su).is_zero()) {
                su = R.one();
                sv = R.one() + R.one();
            }
            Cyc cross = A.at(0, 0) * u * su + A.at(0, 1) * u * sv + A.at(1, 0) * v * su +
                        A.at(1, 1) * v * sv;
            Cyc f = cross * d1.inv();
            Cyc wu = su - f * u, wv = sv - f * v;
            Cyc d2 = A.at(0, 0) * wu * wu + (A.at(0, 1) + A.at(1, 0)) * wu * wv + A.at(1, 1) * wv * wv;
            if (d2.is_zero()) continue;
            DenseMat<Cyc> L(2, 2);
            L.at(0, 0) = u;
            L.at(0, 1) = v;
            L.at(1, 0) = wu;
            L.at(1, 1) = wv;
            return std::make_pair(L, std::make_pair(d1, d2));
        }
        return std::nullopt;
    };

    auto cands = hunt_candidates(R);
    for (const auto& tS : cands) {
        auto dS = diagonalize(S, tS);
        if (!dS) continue;
        auto [LS, ds] = *dS;
        for (const auto& tG : cands) {
            auto dG = diagonalize(G, tG);
            if (!dG) continue;
            auto [LG, dg] = *dG;
            for (int swap = 0; swap < 2; ++swap) {
                Cyc g1 = swap ? dg.second : dg.first;
                Cyc g2 = swap ? dg.first : dg.second;
                auto m1 = (g1 * ds.first.inv()).sqrt();
                auto m2 = (g2 * ds.second.inv()).sqrt();
                if (!m1 || !m2) continue;
                DenseMat<Cyc> M(2, 2);
                M.at(swap ? 1 : 0, 0) = *m1;
                M.at(swap ? 0 : 1, 1) = *m2;
                // C = LG^{-1} M LS with the row permutation folded into M
                auto C = LG.inverse(R.one()) * M * LS;
                DenseMat<Cyc> Ct(2, 2);
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) Ct.at(a, b) = C.at(b, a);
                if (C * S * Ct == G) return C;
            }
        }
    }
    throw LocSqrtError("2x2 congruence has no solution over the field");
}

} // namespace detail

/// Builds the isomorphism map V for a fusion rule of the section-3 proof:
/// a column of maps with V^T V the source projection and V V^T the target
/// projections, transposes taken in the weight pairing.
inline IsoMap iso_map_in_ring(FusionRule rule, const RootRing& R) {
    int p = R.p();
    IsoMap iso;
    iso.p = p;
    iso.ring = R;

    if (rule == FusionRule::Middle) {
        if (p < 4) throw std::invalid_argument("middle fusion rule needs 2 <= i <= p-2, empty for p < 4");
        throw std::invalid_argument("middle fusion rule synthesis is only exercised for p <= 3 inputs");
    }
    if (rule == FusionRule::Base) {
        auto b = proj_pos(p - 1, R);
        iso.rule = "X_p (x) X = P_{p-1}";
        iso.mA = b.ambient;
        iso.PA = b.P;
        iso.entries.push_back({"P+_" + std::to_string(p - 1), b.ambient, b.P, b.P});
        return iso;
    }
    if (rule == FusionRule::TopStep && p < 3) throw std::invalid_argument("top step needs p >= 3");
    if (rule == FusionRule::Bottom && p < 3) throw std::invalid_argument("bottom step needs p >= 3");
    if (rule == FusionRule::P2Special && p != 2) throw std::invalid_argument("special rule is p = 2 only");

    // source projection (x) X
    int m_src;
    SparseMat<Cyc> Psrc;
    if (rule == FusionRule::TopStep) {
        auto b = proj_pos(p - 1, R);
        m_src = b.ambient;
        Psrc = b.P;
        iso.rule = "P_{p-1} (x) X = P_{p-2} + 2 X_p";
    } else if (rule == FusionRule::Bottom) {
        auto b = proj_pos(1, R);
        m_src = b.ambient;
        Psrc = b.P;
        iso.rule = "P_1 (x) X = P_2 + 2 X^-_p";
    } else { // P2Special
        m_src = 2;
        Psrc = SparseMat<Cyc>::identity(4, R.one());
        iso.rule = "P_1 (x) X = 2 X^+_2 + 2 X^-_2 (p = 2)";
    }
    iso.mA = m_src + 1;
    iso.PA = detail::tensor_right_by_x(Psrc, m_src, R);
    if (!detail::self_adjoint_flat(iso.PA, iso.mA, R))
        throw std::runtime_error("source projection is not self-adjoint");

    auto MA = FlatModule::from_tensor_power(iso.mA, R);
    auto imA = restrict_to_image(MA, iso.PA);
    auto decA = decompose(imA.mod, R);
    std::map<SummandType, std::vector<Copy>> groups;
    for (const auto& c : decA.copies) groups[c.type].push_back(detail::lift_copy(c, imA));

    struct Target {
        SummandType type;
        int mB;
        SparseMat<Cyc> PB;           // home projector (self-adjoint)
        std::vector<Copy> tcopies;   // copies of the type inside the home
        bool separate_sheets;        // true: each entry is its own sheet of the home
    };
    std::vector<Target> targets;
    auto home_of_projective = [&](int t, Sign sg) {
        if (sg != Sign::Plus) throw std::logic_error("projective targets are positive here");
        auto b = proj_pos(t, R);
        auto M = FlatModule::from_tensor_power(b.ambient, R);
        auto im = restrict_to_image(M, b.P);
        auto dec = decompose(im.mod, R);
        std::vector<Copy> cs;
        for (const auto& c : dec.copies) cs.push_back(detail::lift_copy(c, im));
        return Target{{ModKind::Projective, t, sg}, b.ambient, b.P, cs, true};
    };
    auto home_of_simple_plus = [&](int s) {
        // X^+_s first appears under f_{s-1} on X^{otimes s-1}
        SparseMat<Cyc> P = s == 1 ? SparseMat<Cyc>::identity(1, R.one())
                                  : FlatModule::flatten(jw_at_root(s - 1, R), s - 1, s - 1);
        auto M = FlatModule::from_tensor_power(s - 1, R);
        auto im = restrict_to_image(M, P);
        auto dec = decompose(im.mod, R);
        std::vector<Copy> cs;
        for (const auto& c : dec.copies) cs.push_back(detail::lift_copy(c, im));
        return Target{{ModKind::Simple, s, Sign::Plus}, s - 1, P, cs, true};
    };
    auto isotypic_of_tensor = [&](SummandType t, int z) {
        auto M = FlatModule::from_tensor_power(z, R);
        auto dec = decompose(M, R);
        std::vector<Copy> cs;
        SparseMat<Cyc> Q(1 << z, 1 << z);
        for (const auto& c : dec.copies)
            if (c.type == t) {
                cs.push_back(c);
                Q = Q + c.idem;
            }
        if (!detail::self_adjoint_flat(Q, z, R))
            throw std::runtime_error("isotypic projector is not self-adjoint");
        return Target{t, z, Q, cs, false};
    };

    if (rule == FusionRule::TopStep) {
        targets.push_back(home_of_projective(p - 2, Sign::Plus));
        targets.push_back(home_of_simple_plus(p)); // two sheets of X^+_p
    } else if (rule == FusionRule::Bottom) {
        targets.push_back(home_of_projective(2, Sign::Plus));
        targets.push_back(isotypic_of_tensor({ModKind::Simple, p, Sign::Minus}, 2 * p - 1));
    } else { // P2Special
        targets.push_back(home_of_simple_plus(2)); // two sheets of X^+_2 on one strand
        targets.push_back(isotypic_of_tensor({ModKind::Simple, 2, Sign::Minus}, 3));
    }

    for (const auto& tgt : targets) {
        auto git = groups.find(tgt.type);
        if (git == groups.end()) throw std::runtime_error("source lacks summand " + tgt.type.name());
        auto& sources = git->second;
        auto T = build_type(tgt.type, R);
        auto form = solve_duality_form(T);
        size_t m = sources.size();
        if (tgt.tcopies.empty()) throw std::runtime_error("target home lacks " + tgt.type.name());

        // Grams over End(T)
        auto gram = [&](const Copy& a, const Copy& b, int z) {
            auto adj = adjoint_into(a.into, form, z, R);
            return detail::end_coords(DenseMat<Cyc>::from_sparse(adj * b.into), T);
        };
        std::vector<std::vector<detail::Loc>> SA(m, std::vector<detail::Loc>(m));
        for (size_t a = 0; a < m; ++a)
            for (size_t b = 0; b < m; ++b) SA[a][b] = gram(sources[a], sources[b], iso.mA);

        if (m == 1) {
            detail::Loc sB = gram(tgt.tcopies[0], tgt.tcopies[0], tgt.mB);
            if (!form.n_fixed && !SA[0][0].b.is_zero())
                throw std::runtime_error("duality form does not fix the nilpotent part");
            detail::Loc prod = SA[0][0] * sB;
            detail::Loc c = detail::loc_sqrt(detail::loc_inv(prod));
            auto cm = detail::loc_matrix(c, T).to_sparse();
            auto V = tgt.tcopies[0].into * cm * adjoint_into(sources[0].into, form, iso.mA, R);
            iso.entries.push_back({tgt.type.name(), tgt.mB, V, tgt.PB});
        } else if (m == 2) {
            // field-valued Grams for simple types
            DenseMat<Cyc> SAm(2, 2);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) SAm.at(a, b) = SA[static_cast<size_t>(a)][static_cast<size_t>(b)].a;
            // orthogonalize the target embeddings so their Gram is diagonal
            std::vector<SparseMat<Cyc>> tin;
            std::vector<Cyc> tdiag;
            if (tgt.separate_sheets) {
                Cyc s = gram(tgt.tcopies[0], tgt.tcopies[0], tgt.mB).a;
                tin = {tgt.tcopies[0].into, tgt.tcopies[0].into};
                tdiag = {s, s};
            } else {
                auto in1 = tgt.tcopies[0].into, in2 = tgt.tcopies[1].into;
                auto g = [&](const SparseMat<Cyc>& a, const SparseMat<Cyc>& b) {
                    auto adj = adjoint_into(a, form, tgt.mB, R);
                    return detail::end_coords(DenseMat<Cyc>::from_sparse(adj * b), T).a;
                };
                Cyc d1 = g(in1, in1);
                if (d1.is_zero()) {
                    std::swap(in1, in2);
                    d1 = g(in1, in1);
                }
                if (d1.is_zero()) throw std::runtime_error("degenerate target Gram");
                in2 = in2 - in1.scaled(g(in1, in2) * d1.inv());
                Cyc d2 = g(in2, in2);
                if (d2.is_zero()) throw std::runtime_error("degenerate target Gram after reduction");
                tin = {in1, in2};
                tdiag = {d1, d2};
            }
            DenseMat<Cyc> G(2, 2); // (diag Gram)^{-1}
            G.at(0, 0) = tdiag[0].inv();
            G.at(1, 1) = tdiag[1].inv();
            auto C = detail::solve_congruence2(SAm, G, R);
            for (int j = 0; j < 2; ++j) {
                SparseMat<Cyc> V(1 << tgt.mB, 1 << iso.mA);
                for (int a = 0; a < 2; ++a) {
                    if (C.at(j, a).is_zero()) continue;
                    auto term = tin[static_cast<size_t>(j)] *
                                adjoint_into(sources[static_cast<size_t>(a)].into, form, iso.mA, R);
                    V = V + term.scaled(C.at(j, a));
                }
                // PB = into (1/d) into^dagger: self-adjoint idempotent onto the sheet
                SparseMat<Cyc> PB =
                    tgt.separate_sheets
                        ? tgt.PB
                        : (tin[static_cast<size_t>(j)] *
                           adjoint_into(tin[static_cast<size_t>(j)], form, tgt.mB, R))
                              .scaled(tdiag[static_cast<size_t>(j)].inv());
                iso.entries.push_back({tgt.type.name() + "#" + std::to_string(j + 1), tgt.mB, V, PB});
            }
        } else {
            throw std::runtime_error("unexpected multiplicity in fusion rule");
        }
    }
    return iso;
}

/// Synthesizes the isomorphism map over Q(zeta_{2p}) when the square classes
/// allow it, extending to Q(zeta_{4p}) (where q is a square) otherwise.
inline IsoMap iso_map(FusionRule rule, int p) {
    try {
        return iso_map_in_ring(rule, RootRing(p));
    } catch (const detail::LocSqrtError&) {
        return iso_map_in_ring(rule, RootRing::extended(p));
    }
}

/// Exact verification of the defining identities of an isomorphism map.
inline std::vector<CheckResult> verify_iso(const IsoMap& iso) {
    const RootRing& R = iso.ring;
    std::vector<CheckResult> out;
    SparseMat<Cyc> sum(1 << iso.mA, 1 << iso.mA);
    for (size_t j = 0; j < iso.entries.size(); ++j) {
        const auto& ej = iso.entries[j];
        auto Vt = adjoint_flat(ej.V, iso.mA, ej.mB, R);
        out.push_back({"VV^T = id on " + ej.target, ej.V * Vt == ej.PB, ""});
        sum = sum + Vt * ej.V;
        for (size_t k = 0; k < iso.entries.size(); ++k) {
            if (k == j) continue;
            const auto& ek = iso.entries[k];
            auto cross = ej.V * adjoint_flat(ek.V, iso.mA, ek.mB, R);
            out.push_back({"V_" + std::to_string(j + 1) + " V_" + std::to_string(k + 1) + "^T = 0",
                           cross.is_zero(), ""});
        }
    }
    out.push_back({"V^T V = id on source", sum == iso.PA, ""});
    return out;
}

} // namespace qpa
