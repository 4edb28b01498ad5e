#include <catch2/catch_amalgamated.hpp>

#include "qpa/expr.hpp"
#include "qpa/json_io.hpp"

using namespace qpa;

static GenericRing G;

TEST_CASE("surface syntax parses with the stated precedence") {
    // tensor binds tighter than composition, which binds tighter than sum
    auto e = parse_expr("id(1) (x) cup(1,2) * cap(1,2) (x) id(1)");
    // = (id1 (x) cup) . (cap (x) id1): X^1 -> X^3 -> X^1... arities: cap(x)id1: 1->3, id1(x)cup: 3->1
    CHECK(e->dom == 1);
    CHECK(e->cod == 1);
    auto s = parse_expr("e(1,3) * e(2,3) (+) scalar[2/3 + q^-2] jw(3)");
    CHECK(s->kind == ExprNode::Kind::Sum);
    CHECK(s->dom == 3);
    CHECK_THROWS_AS(parse_expr("cup(1,2) * cup(1,2)"), std::invalid_argument); // arity mismatch
    CHECK_THROWS_AS(parse_expr("id(2) banana"), std::invalid_argument);
}

TEST_CASE("evaluation agrees with the direct operators") {
    Evaluator<GenericRing> ev(G, "generic");
    CHECK(ev.eval(parse_expr("e(1,4) * e(2,4)")) == tl_e(1, 4, G) * tl_e(2, 4, G));
    CHECK(ev.eval(parse_expr("jw(3)")) == jw_generic(3));
    CHECK(ev.eval(parse_expr("scalar[q + q^-1] id(2)")) ==
          GradedOp<LRat>::identity(2, G.one()).scaled(G.qint(2)));
    CHECK(ev.eval(parse_expr("cup(1,2) (x) id(1)")) == pad(cup_op(1, 2, G), 0, 1, G));
    // cached re-evaluation returns the same operator
    CHECK(ev.eval(parse_expr("jw(3)")) == jw_generic(3));
    RootRing R(2);
    Evaluator<RootRing> evr(R, "root2");
    CHECK(evr.eval(parse_expr("alpha(1,3) * beta(1,3)")) == alpha_op(2) * beta_op(2));
    CHECK_THROWS_AS(ev.eval(parse_expr("alpha(1,3)")), ModeError);
}

TEST_CASE("reflection of expressions matches the pairing transpose") {
    std::vector<std::string> samples{"e(1,3)", "cup(1,3)", "jw(2) (x) id(1)",
                                     "cap(2,4) * cup(1,2) (x) id(2) * e(1,4)",
                                     "scalar[q^2] e(2,3) (+) scalar[1/2] jw(3)"};
    Evaluator<GenericRing> ev(G, "generic");
    for (const auto& src : samples) {
        auto e = parse_expr(src);
        INFO(src);
        CHECK(ev.eval(expr::reflect(e)) == transpose_form(ev.eval(e), G));
        CHECK(expr::to_string(expr::reflect(expr::reflect(e))) == expr::to_string(e));
    }
}

TEST_CASE("scalar JSON round-trips") {
    std::vector<LRat> xs{G.qint(3) / G.qint(2), G.qbinom(4, 2), LRat(Rat(-7, 3)), G.zero()};
    for (const auto& x : xs) CHECK(lrat_from_json(to_json(x)) == x);
    RootRing R(3);
    std::vector<Cyc> cs{R.qint(2), R.qpow(4) * Rat(3, 7), R.zero()};
    for (const auto& c : cs) CHECK(cyc_from_json(to_json(c, R)) == c);
}

TEST_CASE("operator JSON is deterministic and faithful") {
    RootRing R(2);
    auto op = alpha_op(2);
    auto j1 = to_json(op, R).dump();
    auto j2 = to_json(alpha_op(2), R).dump();
    CHECK(j1 == j2);
    auto j = to_json(op, R);
    CHECK(j.at("m") == 3);
    CHECK(j.at("n") == 3);
    // entries are sorted and carry root-mode scalars
    const auto& blocks = j.at("blocks");
    REQUIRE(!blocks.empty());
    CHECK(blocks[0].at("entries")[0][2].at("mode") == "root");
    // presentation serialization has the documented fields
    auto pj = to_json(build_projective(1, Sign::Plus, 2));
    for (const char* key : {"kind", "s", "sign", "p", "labels", "E", "F", "K"}) CHECK(pj.contains(key));
    CHECK(pj.at("K").size() == 4); // diagonal list
}
