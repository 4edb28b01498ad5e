#include <catch2/catch_amalgamated.hpp>

#include "qpa/tensor_action.hpp"

using namespace qpa;

namespace {

uint32_t bits(const std::string& s) {
    uint32_t m = 0;
    for (char ch : s) m = (m << 1) | static_cast<uint32_t>(ch - '0');
    return m;
}

template <class S>
TensorVec<S> vec(int z, std::initializer_list<std::pair<std::string, S>> terms) {
    TensorVec<S> v;
    v.z = z;
    for (const auto& [s, c] : terms) v.add(bits(s), c);
    return v;
}

template <class Ring>
GradedOp<typename Ring::S> op_pow(GradedOp<typename Ring::S> a, int k, int z, const Ring& R) {
    auto r = GradedOp<typename Ring::S>::identity(z, R.one());
    for (int i = 0; i < k; ++i) r = a * r;
    return r;
}

} // namespace

TEST_CASE("basis state encoding") {
    // rho_{1,3,5}: ones at positions 1 and 3 of five strands (the last index is z)
    auto s = BasisState::from_positions({1, 3}, 5);
    CHECK(s.bitstring() == "10100");
    CHECK(s.weight() == 2);
    CHECK(s.positions() == std::vector<int>{1, 3});
    CHECK(BasisState::from_positions({}, 4).mask == 0u);
    CHECK(BasisState::from_positions({1, 2, 3}, 3).mask == 7u);
    CHECK_THROWS_AS(BasisState::from_positions({3, 1}, 5), std::invalid_argument);
    CHECK_THROWS_AS(BasisState::from_positions({1, 6}, 5), std::invalid_argument);
    // rank/unrank round-trip, lexicographic within each weight
    for (int z = 1; z <= 8; ++z)
        for (uint32_t m = 0; m < (1u << z); ++m)
            CHECK(state_unrank(state_rank(m, z), z, std::popcount(m)) == m);
    CHECK(state_rank(bits("001"), 3) == 0);
    CHECK(state_rank(bits("010"), 3) == 1);
    CHECK(state_rank(bits("100"), 3) == 2);
}

TEST_CASE("defining actions on one and two strands") {
    RootRing R(2);
    auto E1 = act_E(1, R);
    CHECK(E1.apply_basis(1u) == vec<Cyc>(1, {{"0", R.one()}}));
    CHECK(E1.apply_basis(0u).is_zero());
    auto F2 = act_F(2, R);
    CHECK(F2.apply_basis(bits("00")) == vec<Cyc>(2, {{"10", R.one()}, {"01", R.qpow(-1)}}));
}

TEST_CASE("K eigenvalues") {
    for (int p : {2, 3}) {
        RootRing R(p);
        for (int z = 1; z <= 6; ++z) {
            auto K = act_K(z, R);
            for (uint32_t m = 0; m < (1u << z); ++m) {
                int n = std::popcount(m);
                CHECK(K.apply_basis(m) == vec<Cyc>(z, {{BasisState{m, z}.bitstring(), R.qpow(z - 2 * n)}}));
            }
        }
    }
}

TEST_CASE("closed-form power actions match iterated composition") {
    for (int p : {2, 3}) {
        RootRing R(p);
        for (int z = 1; z <= 6; ++z) {
            auto E = act_E(z, R), F = act_F(z, R);
            for (int k = 0; k <= z; ++k) {
                CHECK(act_E_pow(k, z, R) == op_pow(E, k, z, R));
                CHECK(act_F_pow(k, z, R) == op_pow(F, k, z, R));
            }
        }
    }
}

TEST_CASE("power action examples") {
    RootRing R(3);
    // E^1 x_{3,3} = v110 + q^{-1} v101 + q^{-2} v011
    CHECK(epow_highest(1, 3, R) ==
          vec<Cyc>(3, {{"110", R.one()}, {"101", R.qpow(-1)}, {"011", R.qpow(-2)}}));
    // F^1 x_{0,2} = v10 + q^{-1} v01
    CHECK(fpow_lowest(1, 2, R) == vec<Cyc>(2, {{"10", R.one()}, {"01", R.qpow(-1)}}));
    // E rho_{1,1}: coefficient q^0 [1]! = 1
    CHECK(act_E_pow(1, 1, R).apply_basis(1u) == vec<Cyc>(1, {{"0", R.one()}}));
}

TEST_CASE("incremental expansions") {
    for (int p : {2, 3}) {
        RootRing R(p);
        for (int z = 1; z <= 6; ++z)
            for (int k = 0; k <= z + 1; ++k) {
                INFO("p=" << p << " z=" << z << " k=" << k);
                CHECK(verify_incremental(z, k, R));
            }
    }
}

TEST_CASE("nilpotency and torsion of the tensor action") {
    for (int p : {2, 3}) {
        RootRing R(p);
        for (int z = 1; z <= 2 * p + 2; ++z) {
            CHECK(op_pow(act_E(z, R), p, z, R).is_zero());
            CHECK(op_pow(act_F(z, R), p, z, R).is_zero());
            CHECK(op_pow(act_K(z, R), 2 * p, z, R) == GradedOp<Cyc>::identity(z, R.one()));
        }
    }
}

TEST_CASE("algebra relations hold blockwise on tensor powers") {
    for (int p : {2, 3}) {
        RootRing R(p);
        for (int z = 1; z <= 5; ++z) {
            auto E = act_E(z, R), F = act_F(z, R), K = act_K(z, R);
            GradedOp<Cyc> Kinv(z, z);
            for (int k = 0; k <= z; ++k)
                Kinv.blocks[{k, k}] =
                    SparseMat<Cyc>::identity(weight_dim(z, k), R.one()).scaled(R.qpow(2 * k - z));
            CHECK(K * E == (E * K).scaled(R.qpow(2)));
            CHECK(K * F == (F * K).scaled(R.qpow(-2)));
            Cyc denom_inv = (R.qpow(1) - R.qpow(-1)).inv();
            CHECK(E * F - F * E == (K - Kinv).scaled(denom_inv));
        }
    }
}

TEST_CASE("weight bookkeeping") {
    RootRing R(3);
    for (int z = 1; z <= 6; ++z)
        for (int k = 1; k <= z; ++k) {
            for (const auto& [kk, blk] : act_E_pow(k, z, R).blocks)
                CHECK(kk.second == kk.first - k);
            for (const auto& [kk, blk] : act_F_pow(k, z, R).blocks)
                CHECK(kk.second == kk.first + k);
        }
}

TEST_CASE("negative centralizer control: E is not an intertwiner") {
    RootRing R(2);
    CHECK_FALSE(verify_centralizer(act_E(2, R), R));
    CHECK(verify_centralizer(GradedOp<Cyc>::identity(3, R.one()), R));
}
