#pragma once

#include "qpa/tensor_action.hpp"

namespace qpa {

namespace detail {
/// Removes strands i, i+1 from a z-strand mask; returns (new mask, pair code).
/// Pair code: bits of the removed strands, strand i high.
inline std::pair<uint32_t, uint32_t> splice_out(uint32_t mask, int i, int z) {
    uint32_t low = mask & ((1u << (z - i - 1)) - 1u);
    uint32_t high = mask >> (z - i + 1);
    uint32_t pair = (mask >> (z - i - 1)) & 3u;
    return {(high << (z - i - 1)) | low, pair};
}

/// Inserts a two-strand pair at position i of a (z-2)-strand mask, giving z strands.
inline uint32_t splice_in(uint32_t mask, int i, int z, uint32_t pair) {
    uint32_t low = mask & ((1u << (z - 1 - i)) - 1u);
    uint32_t high = mask >> (z - 1 - i);
    return (high << (z + 1 - i)) | (pair << (z - 1 - i)) | low;
}
} // namespace detail

/// cup_i: X^{otimes n} -> X^{otimes n-2}, contracting strands (i, i+1):
/// v10 -> 1, v01 -> -q, v00 = v11 -> 0.
template <class Ring>
GradedOp<typename Ring::S> cup_op(int i, int n, const Ring& R) {
    using S = typename Ring::S;
    if (i < 1 || i > n - 1) throw std::invalid_argument("cup index out of range");
    return build_op<S>(n, n - 2, [&](uint32_t mask, const auto& out) {
        auto [rest, pair] = detail::splice_out(mask, i, n);
        if (pair == 2u) out(rest, R.one());
        else if (pair == 1u) out(rest, -R.qpow(1));
    });
}

/// cap_i: X^{otimes n-2} -> X^{otimes n}, inserting q^{-1} v10 - v01 at (i, i+1).
template <class Ring>
GradedOp<typename Ring::S> cap_op(int i, int n, const Ring& R) {
    using S = typename Ring::S;
    if (i < 1 || i > n - 1) throw std::invalid_argument("cap index out of range");
    return build_op<S>(n - 2, n, [&](uint32_t mask, const auto& out) {
        out(detail::splice_in(mask, i, n, 2u), R.qpow(-1));
        out(detail::splice_in(mask, i, n, 1u), -R.one());
    });
}

/// Temperley-Lieb generator e_i = cap_i cup_i.
template <class Ring>
GradedOp<typename Ring::S> tl_e(int i, int n, const Ring& R) {
    return cap_op(i, n, R) * cup_op(i, n, R);
}

/// Nested caps: X^{otimes 0} -> X^{otimes 2k}, arcs (t, 2k+1-t).
template <class Ring>
GradedOp<typename Ring::S> cap_nest(int k, const Ring& R) {
    using S = typename Ring::S;
    if (k == 0) return GradedOp<S>::identity(0, R.one());
    auto op = cap_op(1, 2, R);
    for (int j = 2; j <= k; ++j) op = cap_op(j, 2 * j, R) * op;
    return op;
}

/// Nested cups: X^{otimes 2k} -> X^{otimes 0}.
template <class Ring>
GradedOp<typename Ring::S> cup_nest(int k, const Ring& R) {
    using S = typename Ring::S;
    if (k == 0) return GradedOp<S>::identity(0, R.one());
    auto op = cup_op(k, 2 * k, R);
    for (int j = k - 1; j >= 1; --j) op = cup_op(j, 2 * j, R) * op;
    return op;
}

/// Id^{otimes left} (x) T (x) Id^{otimes right}.
template <class Ring>
GradedOp<typename Ring::S> pad(const GradedOp<typename Ring::S>& T, int left, int right, const Ring& R) {
    using S = typename Ring::S;
    auto r = T;
    if (left > 0) r = GradedOp<S>::identity(left, R.one()).tensor(r);
    if (right > 0) r = r.tensor(GradedOp<S>::identity(right, R.one()));
    return r;
}

enum class RotDir { Clockwise, Counterclockwise };

/// One-click annular rotation of an (n,n) operator. The sign compensates the
/// zigzag value of the cup/cap pair so that rotate(Id) = Id. The clockwise
/// convention is the one under which the alpha/beta generators are
/// rotation-invariant (fixed by relations 13-16 of the generator suite).
template <class Ring>
GradedOp<typename Ring::S> rotate(const GradedOp<typename Ring::S>& T, const Ring& R,
                                  RotDir dir = RotDir::Clockwise) {
    if (T.m != T.n) throw std::invalid_argument("rotation needs equal strand counts");
    int n = T.m;
    auto mid = pad(T, 1, 1, R);
    GradedOp<typename Ring::S> r;
    if (dir == RotDir::Clockwise)
        r = cup_op(1, n + 2, R) * mid * cap_op(n + 1, n + 2, R);
    else
        r = cup_op(n + 1, n + 2, R) * mid * cap_op(1, n + 2, R);
    return r.scaled(-R.one());
}

/// Closes the rightmost strand with a cap below and a cup above.
template <class Ring>
GradedOp<typename Ring::S> partial_trace_right(const GradedOp<typename Ring::S>& T, const Ring& R) {
    if (T.m != T.n || T.m < 1) throw std::invalid_argument("partial trace needs an endomorphism on >= 1 strand");
    int n = T.m;
    return cup_op(n, n + 1, R) * pad(T, 0, 1, R) * cap_op(n, n + 1, R);
}

template <class Ring>
GradedOp<typename Ring::S> partial_trace_left(const GradedOp<typename Ring::S>& T, const Ring& R) {
    if (T.m != T.n || T.m < 1) throw std::invalid_argument("partial trace needs an endomorphism on >= 1 strand");
    int n = T.m;
    return cup_op(1, n + 1, R) * pad(T, 1, 0, R) * cap_op(1, n + 1, R);
}

/// Half-diagram on n boundary points: noncrossing arcs, unmatched points are
/// through-strands not enclosed by any arc.
struct HalfDiagram {
    int n = 0;
    std::vector<std::pair<int, int>> arcs; // 1-based, first < second
    int through() const { return n - 2 * static_cast<int>(arcs.size()); }
};

inline std::vector<HalfDiagram> half_diagrams(int n) {
    std::vector<HalfDiagram> out;
    std::vector<int> stack;
    std::vector<std::pair<int, int>> arcs;
    std::function<void(int)> rec = [&](int pos) {
        if (pos > n) {
            if (stack.empty()) out.push_back({n, arcs});
            return;
        }
        // open an arc at pos
        stack.push_back(pos);
        rec(pos + 1);
        stack.pop_back();
        // close the innermost open arc
        if (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            arcs.emplace_back(a, pos);
            rec(pos + 1);
            arcs.pop_back();
            stack.push_back(a);
        }
        // through-strand (only outside every arc)
        if (stack.empty()) rec(pos + 1);
    };
    rec(1);
    return out;
}

/// Evaluates the half-diagram as a cup word X^{otimes n} -> X^{otimes t}
/// (innermost arcs first).
template <class Ring>
GradedOp<typename Ring::S> half_cup_word(const HalfDiagram& h, const Ring& R) {
    using S = typename Ring::S;
    auto op = GradedOp<S>::identity(h.n, R.one());
    std::vector<std::pair<int, int>> arcs = h.arcs;
    std::vector<int> active(static_cast<size_t>(h.n));
    for (int i = 0; i < h.n; ++i) active[static_cast<size_t>(i)] = i + 1;
    int cur = h.n;
    while (!arcs.empty()) {
        // find an arc whose endpoints are adjacent in the active list
        bool found = false;
        for (size_t a = 0; a < arcs.size() && !found; ++a) {
            auto [x, y] = arcs[a];
            for (size_t j = 0; j + 1 < active.size(); ++j) {
                if (active[j] == x && active[j + 1] == y) {
                    op = cup_op(static_cast<int>(j) + 1, cur, R) * op;
                    active.erase(active.begin() + static_cast<long>(j), active.begin() + static_cast<long>(j) + 2);
                    arcs.erase(arcs.begin() + static_cast<long>(a));
                    cur -= 2;
                    found = true;
                    break;
                }
            }
        }
        assert(found);
    }
    return op;
}

/// The C_n Temperley-Lieb diagrams on n strands as operators:
/// cap word of one half composed with the cup word of another.
template <class Ring>
std::vector<GradedOp<typename Ring::S>> tl_diagram_basis(int n, const Ring& R) {
    using S = typename Ring::S;
    std::vector<GradedOp<typename Ring::S>> out;
    auto halves = half_diagrams(n);
    for (const auto& top : halves) {
        auto cupw = half_cup_word(top, R);
        for (const auto& bot : halves) {
            if (bot.through() != top.through()) continue;
            auto capw = transpose_form(half_cup_word(bot, R), R);
            out.push_back(capw * cupw);
        }
    }
    return out;
}

} // namespace qpa
