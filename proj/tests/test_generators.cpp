#include <catch2/catch_amalgamated.hpp>

#include "qpa/root_gens.hpp"

using namespace qpa;

namespace {
uint32_t bits(const std::string& s) {
    uint32_t m = 0;
    for (char ch : s) m = (m << 1) | static_cast<uint32_t>(ch - '0');
    return m;
}
} // namespace

TEST_CASE("alpha and beta values at p = 2") {
    RootRing R(2);
    auto A = alpha_op(2), B = beta_op(2);
    // alpha(x_{0,3}) = E x_{3,3} = v110 + q^{-1} v101 + q^{-2} v011
    auto v = A.apply_basis(0u);
    CHECK(v.c.at(bits("110")) == R.one());
    CHECK(v.c.at(bits("101")) == R.qpow(-1));
    CHECK(v.c.at(bits("011")) == R.qpow(-2));
    // beta(v110) = q^2 x_{0,3}
    auto w = B.apply_basis(bits("110"));
    CHECK(w.c.size() == 1);
    CHECK(w.c.at(0u) == R.qpow(2));
    // alpha kills the weight spaces k >= p
    for (uint32_t m = 0; m < 8; ++m)
        if (std::popcount(m) >= 2) CHECK(A.apply_basis(m).is_zero());
    // weight-block supports
    for (const auto& [kk, blk] : A.blocks) CHECK(kk.second == kk.first + 2);
    for (const auto& [kk, blk] : B.blocks) CHECK(kk.second == kk.first - 2);
}

TEST_CASE("generators are intertwiners") {
    for (int p : {2, 3}) {
        RootRing R(p);
        CHECK(verify_centralizer(alpha_op(p), R));
        CHECK(verify_centralizer(beta_op(p), R));
        for (int i = 1; i < 2 * p - 1; ++i) CHECK(verify_centralizer(tl_e(i, 2 * p - 1, R), R));
    }
}

TEST_CASE("embedding") {
    for (int p : {2, 3}) {
        RootRing R(p);
        CHECK(embed_generator(Gen::Alpha, 1, 2 * p - 1, p) == alpha_op(p));
        // commutes with disjoint TL generators
        int n = 2 * p + 1;
        auto a = embed_generator(Gen::Alpha, 1, n, p);
        auto e = tl_e(2 * p, n, R);
        CHECK(a * e == e * a);
        // weight blocks shift by p regardless of offset
        for (int off : {1, 2, 3}) {
            if (off + 2 * p - 2 > n) continue;
            for (const auto& [kk, blk] : embed_generator(Gen::Alpha, off, n, p).blocks)
                CHECK(kk.second == kk.first + p);
        }
        CHECK_THROWS_AS(embed_generator(Gen::Alpha, 4, 2 * p, p), std::invalid_argument);
    }
}

TEST_CASE("rotation convention fixes alpha") {
    for (int p : {2, 3}) {
        auto dir = resolve_rotation_convention(p);
        REQUIRE(dir.has_value());
        CHECK(*dir == RotDir::Clockwise);
    }
}

TEST_CASE("Theorem 1 relations, p = 2") {
    auto rs = verify_thm1(2, {});
    for (const auto& r : rs) {
        INFO("relation " << r.id << " " << r.detail);
        CHECK(r.pass);
    }
    CHECK(rs.size() >= 16);
    CHECK(gamma_const(2) == -RootRing(2).one());
}

TEST_CASE("Theorem 1 relations, p = 3") {
    auto rs = verify_thm1(3, {});
    for (const auto& r : rs) {
        INFO("relation " << r.id << " " << r.detail);
        CHECK(r.pass);
    }
    CHECK(gamma_const(3) == RootRing(3).one());
}

TEST_CASE("negative control: relation 7 cannot use a wrong-arity projection") {
    for (int p : {2, 3}) {
        RootRing R(p);
        // the padded substitute does not even exist at the root
        CHECK_THROWS_AS(jw_at_root(2 * p - 2, p), PoleError);
        // and the left side is certainly not gamma times the identity
        auto A = alpha_op(p), B = beta_op(p);
        auto wrong = GradedOp<Cyc>::identity(2 * p - 1, R.one()).scaled(gamma_const(p));
        CHECK_FALSE(A * B + B * A == wrong);
    }
}

TEST_CASE("commutant dimensions and the TL span") {
    // dim End(X^{(x)n}) = Catalan(n) for n < 2p-1
    const int catalan[] = {1, 1, 2, 5, 14, 42};
    for (int n = 1; n <= 4; ++n) CHECK(commutant_dim(n, 3) == catalan[n]);
    // at n = 2p-1 the commutant strictly contains the TL span, and alpha and
    // beta lie in the commutant but not the TL span
    for (int p : {2, 3}) {
        int z = 2 * p - 1;
        int full = commutant_dim(z, p);
        int tl = tl_span_rank(z, p);
        CHECK(tl < full);
        auto A = alpha_op(p), B = beta_op(p);
        CHECK(tl_span_rank(z, p, {A}) == tl + 1);
        CHECK(tl_span_rank(z, p, {A, B}) == tl + 2);
    }
}
