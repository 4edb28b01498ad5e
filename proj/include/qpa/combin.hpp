#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qpa {

/// Binomial coefficients C(n,k) for n <= 34 (fits comfortably in uint64).
inline uint64_t binom(int n, int k) {
    static std::vector<std::vector<uint64_t>> tab = [] {
        std::vector<std::vector<uint64_t>> t(35);
        for (int i = 0; i < 35; ++i) {
            t[static_cast<size_t>(i)].assign(static_cast<size_t>(i) + 1, 1);
            for (int j = 1; j < i; ++j)
                t[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    t[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] +
                    t[static_cast<size_t>(i - 1)][static_cast<size_t>(j)];
        }
        return t;
    }();
    if (k < 0 || k > n) return 0;
    if (n >= 35) throw std::out_of_range("binom table limit");
    return tab[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

/// Basis tensor of X^{otimes z}: bit (z-i) holds the entry of strand i (1-based),
/// so ascending mask order is lexicographic order on the bitstrings.
struct BasisState {
    uint32_t mask = 0;
    int z = 0;

    int weight() const { return std::popcount(mask); }
    int bit(int strand) const { return (mask >> (z - strand)) & 1u; }

    /// Positions of the 1-entries, strictly increasing (the rho-subscript).
    std::vector<int> positions() const {
        std::vector<int> p;
        for (int i = 1; i <= z; ++i)
            if (bit(i)) p.push_back(i);
        return p;
    }

    static BasisState from_positions(const std::vector<int>& pos, int z) {
        BasisState s{0, z};
        int prev = 0;
        for (int i : pos) {
            if (i <= prev || i > z) throw std::invalid_argument("positions must be strictly increasing in 1..z");
            prev = i;
            s.mask |= 1u << (z - i);
        }
        return s;
    }

    std::string bitstring() const {
        std::string s;
        for (int i = 1; i <= z; ++i) s += static_cast<char>('0' + bit(i));
        return s;
    }

    friend bool operator==(const BasisState& a, const BasisState& b) {
        return a.z == b.z && a.mask == b.mask;
    }
};

/// Rank of a mask among all z-bit masks of the same weight, in lexicographic
/// (= ascending numeric) order.
inline int state_rank(uint32_t mask, int z) {
    int ones_left = std::popcount(mask);
    uint64_t r = 0;
    for (int i = 1; i <= z && ones_left > 0; ++i) {
        if ((mask >> (z - i)) & 1u) {
            r += binom(z - i, ones_left);
            --ones_left;
        }
    }
    return static_cast<int>(r);
}

inline uint32_t state_unrank(int rank, int z, int weight) {
    uint32_t mask = 0;
    int ones_left = weight;
    uint64_t r = static_cast<uint64_t>(rank);
    for (int i = 1; i <= z && ones_left > 0; ++i) {
        uint64_t c = binom(z - i, ones_left);
        if (r >= c) {
            r -= c;
            mask |= 1u << (z - i);
            --ones_left;
        }
    }
    return mask;
}

inline int weight_dim(int z, int n) { return static_cast<int>(binom(z, n)); }

/// Sum of the positions of the 1-entries.
inline long pos_sum(uint32_t mask, int z) {
    long s = 0;
    for (int i = 1; i <= z; ++i)
        if ((mask >> (z - i)) & 1u) s += i;
    return s;
}

} // namespace qpa
