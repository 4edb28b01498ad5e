#pragma once

#include "qpa/graded_op.hpp"
#include "qpa/qnum.hpp"

namespace qpa {

/// K on X^{otimes z}: diagonal with eigenvalue q^{z-2n} on the weight-n space.
template <class Ring>
GradedOp<typename Ring::S> act_K(int z, const Ring& R) {
    using S = typename Ring::S;
    GradedOp<S> op(z, z);
    for (int k = 0; k <= z; ++k) {
        int d = weight_dim(z, k);
        op.blocks[{k, k}] = SparseMat<S>::identity(d, R.one()).scaled(R.qpow(z - 2 * k));
    }
    return op;
}

/// E on X^{otimes z} via the iterated coproduct: E in position j, K on the
/// strands to its right.
template <class Ring>
GradedOp<typename Ring::S> act_E(int z, const Ring& R) {
    using S = typename Ring::S;
    return build_op<S>(z, z, [&](uint32_t mask, const auto& out) {
        for (int j = 1; j <= z; ++j) {
            if (!((mask >> (z - j)) & 1u)) continue;
            uint32_t right = mask & ((1u << (z - j)) - 1u);
            long exp = (z - j) - 2 * std::popcount(right);
            out(mask & ~(1u << (z - j)), R.qpow(exp));
        }
    });
}

/// F on X^{otimes z}: K^{-1} on the strands to the left, F in position j.
template <class Ring>
GradedOp<typename Ring::S> act_F(int z, const Ring& R) {
    using S = typename Ring::S;
    return build_op<S>(z, z, [&](uint32_t mask, const auto& out) {
        for (int j = 1; j <= z; ++j) {
            if ((mask >> (z - j)) & 1u) continue;
            uint32_t left = mask >> (z - j + 1);
            long exp = -(j - 1) + 2 * std::popcount(left);
            out(mask | (1u << (z - j)), R.qpow(exp));
        }
    });
}

namespace detail {
/// #{(a, t) : a in A, t in T, a > t} for disjoint position sets A, T.
inline long cross_above(uint32_t amask, uint32_t tmask, int z) {
    long cnt = 0;
    for (int i = 1; i <= z; ++i)
        if ((tmask >> (z - i)) & 1u) {
            uint32_t below = amask & ((1u << (z - i)) - 1u); // positions > i
            cnt += std::popcount(below);
        }
    return cnt;
}

/// Iterates all submasks of m with exactly k bits.
template <class Fn>
void for_each_submask_of_weight(uint32_t m, int k, Fn&& fn) {
    std::vector<int> bits;
    int nb = std::popcount(m);
    for (int b = 31; b >= 0; --b)
        if ((m >> b) & 1u) bits.push_back(b);
    if (k > nb) return;
    std::vector<int> idx(static_cast<size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int chosen) {
        if (chosen == k) {
            uint32_t sub = 0;
            for (int t = 0; t < k; ++t) sub |= 1u << bits[static_cast<size_t>(idx[static_cast<size_t>(t)])];
            fn(sub);
            return;
        }
        for (int i = start; i < nb; ++i) {
            idx[static_cast<size_t>(chosen)] = i;
            rec(i + 1, chosen + 1);
        }
    };
    rec(0, 0);
}
} // namespace detail

/// E^k on X^{otimes z} in closed form: removes a k-subset T of the 1-positions
/// with coefficient [k]! q^{kz - (k^2-k)/2 - sum(T) - 2 * inversions}.
template <class Ring>
GradedOp<typename Ring::S> act_E_pow(int k, int z, const Ring& R) {
    using S = typename Ring::S;
    if (k == 0) return GradedOp<S>::identity(z, R.one());
    S kfact = R.qfact(k);
    return build_op<S>(z, z, [&](uint32_t mask, const auto& out) {
        if (std::popcount(mask) < k) return;
        detail::for_each_submask_of_weight(mask, k, [&](uint32_t t) {
            uint32_t rest = mask & ~t;
            long e = static_cast<long>(k) * z - (static_cast<long>(k) * k - k) / 2 - pos_sum(t, z) -
                     2 * detail::cross_above(rest, t, z);
            out(rest, kfact * R.qpow(e));
        });
    });
}

/// F^k on X^{otimes z} in closed form: adds a k-subset T of 0-positions with
/// coefficient [k]! q^{(k^2+k)/2 - sum(T) + 2 * #{(s,t): s in S, t in T, s < t}}.
template <class Ring>
GradedOp<typename Ring::S> act_F_pow(int k, int z, const Ring& R) {
    using S = typename Ring::S;
    if (k == 0) return GradedOp<S>::identity(z, R.one());
    S kfact = R.qfact(k);
    return build_op<S>(z, z, [&](uint32_t mask, const auto& out) {
        uint32_t zeros = ~mask & ((1u << z) - 1u);
        if (std::popcount(zeros) < k) return;
        detail::for_each_submask_of_weight(zeros, k, [&](uint32_t t) {
            long below = 0; // #{(s,t): s in mask, t in T, s < t}
            for (int i = 1; i <= z; ++i)
                if ((t >> (z - i)) & 1u) {
                    uint32_t above = mask >> (z - i + 1); // positions < i
                    below += std::popcount(above);
                }
            long e = (static_cast<long>(k) * k + k) / 2 - pos_sum(t, z) + 2 * below;
            out(mask | t, kfact * R.qpow(e));
        });
    });
}

/// F^k applied to x_{0,z} as a vector (the k-weight column of act_F_pow).
template <class Ring>
TensorVec<typename Ring::S> fpow_lowest(int k, int z, const Ring& R) {
    return act_F_pow(k, z, R).apply_basis(0u);
}

/// E^k applied to x_{z,z}.
template <class Ring>
TensorVec<typename Ring::S> epow_highest(int k, int z, const Ring& R) {
    return act_E_pow(k, z, R).apply_basis((1u << z) - 1u);
}

/// Checks the four incremental expansions of E^k x_{z+1,z+1} and F^k x_{0,z+1}
/// in terms of z-strand vectors.
template <class Ring>
bool verify_incremental(int z, int k, const Ring& R) {
    using S = typename Ring::S;
    if (k < 0 || k > z + 1) return false;
    auto tensor_right = [&](const TensorVec<S>& v, int bitval) {
        TensorVec<S> r;
        r.z = v.z + 1;
        for (const auto& [m, c] : v.c) r.add((m << 1) | static_cast<uint32_t>(bitval), c);
        return r;
    };
    auto tensor_left = [&](int bitval, const TensorVec<S>& v) {
        TensorVec<S> r;
        r.z = v.z + 1;
        for (const auto& [m, c] : v.c)
            r.add(m | (static_cast<uint32_t>(bitval) << v.z), c);
        return r;
    };
    auto scale = [&](const TensorVec<S>& v, const S& c) {
        TensorVec<S> r;
        r.z = v.z;
        for (const auto& [m, x] : v.c) r.add(m, x * c);
        return r;
    };
    auto add = [&](const TensorVec<S>& a, const TensorVec<S>& b) {
        TensorVec<S> r = a;
        for (const auto& [m, x] : b.c) r.add(m, x);
        return r;
    };

    auto ek = epow_highest(k, z + 1, R);
    auto ek_z = k <= z ? epow_highest(k, z, R) : TensorVec<S>{z, {}};
    auto ekm1_z = (k >= 1 && k - 1 <= z) ? epow_highest(k - 1, z, R) : TensorVec<S>{z, {}};
    // E^k x_{z+1} = [k] (E^{k-1} x_z) (x) v0 + q^{-k} (E^k x_z) (x) v1
    auto rhs13 = add(scale(tensor_right(ekm1_z, 0), R.qint(k)), scale(tensor_right(ek_z, 1), R.qpow(-k)));
    //           = q^{k-z-1} [k] v0 (x) (E^{k-1} x_z) + v1 (x) (E^k x_z)
    auto rhs14 = add(scale(tensor_left(0, ekm1_z), R.qint(k) * R.qpow(k - z - 1)), tensor_left(1, ek_z));
    if (!(ek == rhs13) || !(ek == rhs14)) return false;

    auto fk = fpow_lowest(k, z + 1, R);
    auto fk_z = k <= z ? fpow_lowest(k, z, R) : TensorVec<S>{z, {}};
    auto fkm1_z = (k >= 1 && k - 1 <= z) ? fpow_lowest(k - 1, z, R) : TensorVec<S>{z, {}};
    // F^k x_{0,z+1} = (F^k x_{0,z}) (x) v0 + q^{k-z-1} [k] (F^{k-1} x_{0,z}) (x) v1
    auto rhs15 = add(tensor_right(fk_z, 0), scale(tensor_right(fkm1_z, 1), R.qint(k) * R.qpow(k - z - 1)));
    //              = q^{-k} v0 (x) (F^k x_{0,z}) + [k] v1 (x) (F^{k-1} x_{0,z})
    auto rhs16 = add(scale(tensor_left(0, fk_z), R.qpow(-k)), scale(tensor_left(1, fkm1_z), R.qint(k)));
    return fk == rhs15 && fk == rhs16;
}

/// True iff T commutes with the quantum group action on tensor powers
/// (T: X^{otimes m} -> X^{otimes n} an intertwiner).
template <class Ring>
bool verify_centralizer(const GradedOp<typename Ring::S>& T, const Ring& R) {
    int m = T.m, n = T.n;
    if (!(T * act_K(m, R) == act_K(n, R) * T)) return false;
    if (!(T * act_E(m, R) == act_E(n, R) * T)) return false;
    return T * act_F(m, R) == act_F(n, R) * T;
}

} // namespace qpa
