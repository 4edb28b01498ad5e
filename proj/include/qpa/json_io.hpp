#pragma once

#include "qpa/decompose.hpp"

#include <json.hpp>

namespace qpa {

using nlohmann::json;

/// Scalars serialize with rationals as "numerator/denominator" strings.
inline json to_json(const LRat& x) {
    json num = json::array();
    for (const auto& [e, c] : x.num.t) num.push_back(json::array({e, rat_to_string(c)}));
    json den = json::array();
    for (size_t i = 0; i < x.den.c.size(); ++i)
        if (x.den.c[i] != 0) den.push_back(json::array({static_cast<int>(i), rat_to_string(x.den.c[i])}));
    return json{{"mode", "generic"}, {"num", num}, {"den", den}};
}

inline json to_json(const Cyc& x, const RootRing& R) {
    json coeffs = json::array();
    if (x.is_zero()) {
        for (int i = 0; i < R.F->deg; ++i) coeffs.push_back("0/1");
    } else {
        for (const auto& c : x.c) coeffs.push_back(rat_to_string(c));
    }
    return json{{"mode", "root"}, {"p", R.p()}, {"coeffs", coeffs}};
}

inline LRat lrat_from_json(const json& j) {
    if (j.at("mode") != "generic") throw std::invalid_argument("expected generic scalar");
    Laurent num;
    for (const auto& t : j.at("num")) num.t[t.at(0).get<int>()] = rat_from_string(t.at(1).get<std::string>());
    Laurent den;
    for (const auto& t : j.at("den")) den.t[t.at(0).get<int>()] = rat_from_string(t.at(1).get<std::string>());
    auto [shift, dpoly] = den.to_poly();
    if (shift != 0) throw std::invalid_argument("denominator must be an ordinary polynomial");
    return LRat(num, dpoly);
}

inline Cyc cyc_from_json(const json& j) {
    if (j.at("mode") != "root") throw std::invalid_argument("expected root scalar");
    const CycField& F = CycField::get(j.at("p").get<int>());
    std::vector<Rat> c;
    for (const auto& t : j.at("coeffs")) c.push_back(rat_from_string(t.get<std::string>()));
    if (static_cast<int>(c.size()) != F.deg) throw std::invalid_argument("coefficient length mismatch");
    return Cyc(F, std::move(c));
}

template <class S, class ScalarJson>
json graded_to_json(const GradedOp<S>& T, ScalarJson&& sj) {
    json blocks = json::array();
    for (const auto& [kk, blk] : T.blocks) {
        if (blk.is_zero()) continue;
        json entries = json::array();
        std::vector<std::tuple<int, int, const S*>> es;
        for (int c = 0; c < blk.cols; ++c)
            for (const auto& [r, v] : blk.col[static_cast<size_t>(c)]) es.emplace_back(r, c, &v);
        std::sort(es.begin(), es.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
        });
        for (const auto& [r, c, v] : es) entries.push_back(json::array({r, c, sj(*v)}));
        blocks.push_back(json{{"k", kk.first}, {"k2", kk.second}, {"entries", entries}});
    }
    return json{{"m", T.m}, {"n", T.n}, {"blocks", blocks}};
}

inline json to_json(const GradedOp<LRat>& T) {
    return graded_to_json(T, [](const LRat& v) { return to_json(v); });
}
inline json to_json(const GradedOp<Cyc>& T, const RootRing& R) {
    return graded_to_json(T, [&](const Cyc& v) { return to_json(v, R); });
}

inline json dense_to_json(const DenseMat<Cyc>& M, const RootRing& R, bool diag_only = false) {
    json a = json::array();
    for (int i = 0; i < M.rows; ++i) {
        if (diag_only) {
            a.push_back(to_json(M.at(i, i), R));
            continue;
        }
        for (int j = 0; j < M.cols; ++j)
            if (!M.at(i, j).is_zero()) a.push_back(json::array({i, j, to_json(M.at(i, j), R)}));
    }
    return a;
}

inline json to_json(const ModulePresentation& M) {
    const RootRing& R = M.ring;
    return json{{"kind", M.kind == ModKind::Simple ? "simple" : "projective"},
                {"s", M.s},
                {"sign", std::string(1, sign_char(M.sign))},
                {"p", M.p},
                {"labels", M.labels},
                {"E", dense_to_json(M.E, R)},
                {"F", dense_to_json(M.F, R)},
                {"K", dense_to_json(M.K, R, true)}};
}

} // namespace qpa
