#pragma once

#include "qpa/root_gens.hpp"

#include <memory>
#include <mutex>
#include <unordered_map>

namespace qpa {

/// Formal diagram expression over the planar generators, closed under scalar
/// multiple, sum, tensor and composition. Nodes are immutable and shared.
struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Id, Cup, Cap, E, JW, Alpha, Beta, Scale, Sum, Tensor, Compose };
    Kind kind;
    int i = 0, n = 0;
    LRat scalar;
    std::vector<Expr> children;
    int dom = 0, cod = 0;
};

namespace expr {

inline Expr make(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

inline Expr id(int n) {
    ExprNode e{ExprNode::Kind::Id};
    e.n = n;
    e.dom = e.cod = n;
    return make(std::move(e));
}
inline Expr cup(int i, int n) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("cup index out of range");
    ExprNode e{ExprNode::Kind::Cup};
    e.i = i;
    e.n = n;
    e.dom = n;
    e.cod = n - 2;
    return make(std::move(e));
}
inline Expr cap(int i, int n) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("cap index out of range");
    ExprNode e{ExprNode::Kind::Cap};
    e.i = i;
    e.n = n;
    e.dom = n - 2;
    e.cod = n;
    return make(std::move(e));
}
inline Expr tl(int i, int n) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("e index out of range");
    ExprNode e{ExprNode::Kind::E};
    e.i = i;
    e.n = n;
    e.dom = e.cod = n;
    return make(std::move(e));
}
inline Expr jw(int n) {
    ExprNode e{ExprNode::Kind::JW};
    e.n = n;
    e.dom = e.cod = n;
    return make(std::move(e));
}
inline Expr alpha(int i, int n) {
    ExprNode e{ExprNode::Kind::Alpha};
    e.i = i;
    e.n = n;
    e.dom = e.cod = n;
    return make(std::move(e));
}
inline Expr beta(int i, int n) {
    ExprNode e{ExprNode::Kind::Beta};
    e.i = i;
    e.n = n;
    e.dom = e.cod = n;
    return make(std::move(e));
}
inline Expr scale(const LRat& c, Expr x) {
    ExprNode e{ExprNode::Kind::Scale};
    e.scalar = c;
    e.dom = x->dom;
    e.cod = x->cod;
    e.children = {std::move(x)};
    return make(std::move(e));
}
inline Expr sum(std::vector<Expr> xs) {
    if (xs.empty()) throw std::invalid_argument("empty sum");
    for (const auto& x : xs)
        if (x->dom != xs[0]->dom || x->cod != xs[0]->cod)
            throw std::invalid_argument("sum of expressions with mismatched arity");
    ExprNode e{ExprNode::Kind::Sum};
    e.dom = xs[0]->dom;
    e.cod = xs[0]->cod;
    e.children = std::move(xs);
    return make(std::move(e));
}
inline Expr tensor(std::vector<Expr> xs) {
    if (xs.empty()) throw std::invalid_argument("empty tensor");
    ExprNode e{ExprNode::Kind::Tensor};
    for (const auto& x : xs) {
        e.dom += x->dom;
        e.cod += x->cod;
    }
    e.children = std::move(xs);
    return make(std::move(e));
}
/// compose(f, g) applies g first (operator composition f . g).
inline Expr compose(std::vector<Expr> xs) {
    if (xs.empty()) throw std::invalid_argument("empty composition");
    for (size_t a = 0; a + 1 < xs.size(); ++a)
        if (xs[a]->dom != xs[a + 1]->cod)
            throw std::invalid_argument("composition arity mismatch: " + std::to_string(xs[a]->dom) +
                                        " vs " + std::to_string(xs[a + 1]->cod));
    ExprNode e{ExprNode::Kind::Compose};
    e.dom = xs.back()->dom;
    e.cod = xs.front()->cod;
    e.children = std::move(xs);
    return make(std::move(e));
}

/// Horizontal-axis reflection: cups and caps trade places, the Jones-Wenzl
/// and generator boxes are fixed, composition order reverses.
inline Expr reflect(const Expr& x) {
    switch (x->kind) {
    case ExprNode::Kind::Id:
    case ExprNode::Kind::E:
    case ExprNode::Kind::JW:
    case ExprNode::Kind::Alpha:
    case ExprNode::Kind::Beta:
        return x;
    case ExprNode::Kind::Cup:
        return cap(x->i, x->n);
    case ExprNode::Kind::Cap:
        return cup(x->i, x->n);
    case ExprNode::Kind::Scale:
        return scale(x->scalar, reflect(x->children[0]));
    case ExprNode::Kind::Sum: {
        std::vector<Expr> cs;
        for (const auto& c : x->children) cs.push_back(reflect(c));
        return sum(std::move(cs));
    }
    case ExprNode::Kind::Tensor: {
        std::vector<Expr> cs;
        for (const auto& c : x->children) cs.push_back(reflect(c));
        return tensor(std::move(cs));
    }
    case ExprNode::Kind::Compose: {
        std::vector<Expr> cs;
        for (auto it = x->children.rbegin(); it != x->children.rend(); ++it) cs.push_back(reflect(*it));
        return compose(std::move(cs));
    }
    }
    throw std::logic_error("unreachable");
}

inline std::string to_string(const Expr& x) {
    auto join = [&](const char* op) {
        std::string s;
        for (size_t a = 0; a < x->children.size(); ++a) {
            if (a) s += op;
            s += to_string(x->children[a]);
        }
        return "(" + s + ")";
    };
    switch (x->kind) {
    case ExprNode::Kind::Id: return "id(" + std::to_string(x->n) + ")";
    case ExprNode::Kind::Cup: return "cup(" + std::to_string(x->i) + "," + std::to_string(x->n) + ")";
    case ExprNode::Kind::Cap: return "cap(" + std::to_string(x->i) + "," + std::to_string(x->n) + ")";
    case ExprNode::Kind::E: return "e(" + std::to_string(x->i) + "," + std::to_string(x->n) + ")";
    case ExprNode::Kind::JW: return "jw(" + std::to_string(x->n) + ")";
    case ExprNode::Kind::Alpha: return "alpha(" + std::to_string(x->i) + "," + std::to_string(x->n) + ")";
    case ExprNode::Kind::Beta: return "beta(" + std::to_string(x->i) + "," + std::to_string(x->n) + ")";
    case ExprNode::Kind::Scale:
        return "scalar[" + x->scalar.to_string() + "] " + to_string(x->children[0]);
    case ExprNode::Kind::Sum: return join(" (+) ");
    case ExprNode::Kind::Tensor: return join(" (x) ");
    case ExprNode::Kind::Compose: return join(" * ");
    }
    throw std::logic_error("unreachable");
}

} // namespace expr

/// Evaluation with a structural memo cache (keyed by printed form and mode).
template <class Ring>
class Evaluator {
public:
    explicit Evaluator(const Ring& ring, std::string mode_tag) : R(ring), tag(std::move(mode_tag)) {}

    GradedOp<typename Ring::S> eval(const Expr& x) {
        std::string key = tag + "|" + expr::to_string(x);
        {
            std::lock_guard<std::mutex> lock(mx);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
        }
        auto r = compute(x);
        std::lock_guard<std::mutex> lock(mx);
        cache.emplace(std::move(key), r);
        return r;
    }

private:
    const Ring& R;
    std::string tag;
    std::unordered_map<std::string, GradedOp<typename Ring::S>> cache;
    std::mutex mx;

    GradedOp<typename Ring::S> leaf_alpha(int i, int n);
    GradedOp<typename Ring::S> leaf_jw(int n);
    typename Ring::S leaf_scalar(const LRat& c);

    GradedOp<typename Ring::S> compute(const Expr& x) {
        using Op = GradedOp<typename Ring::S>;
        switch (x->kind) {
        case ExprNode::Kind::Id: return Op::identity(x->n, R.one());
        case ExprNode::Kind::Cup: return cup_op(x->i, x->n, R);
        case ExprNode::Kind::Cap: return cap_op(x->i, x->n, R);
        case ExprNode::Kind::E: return tl_e(x->i, x->n, R);
        case ExprNode::Kind::JW: return leaf_jw(x->n);
        case ExprNode::Kind::Alpha:
        case ExprNode::Kind::Beta: return leaf_alpha(x->kind == ExprNode::Kind::Alpha ? x->i : -x->i, x->n);
        case ExprNode::Kind::Scale: return eval(x->children[0]).scaled(leaf_scalar(x->scalar));
        case ExprNode::Kind::Sum: {
            auto r = eval(x->children[0]);
            for (size_t a = 1; a < x->children.size(); ++a) r = r + eval(x->children[a]);
            return r;
        }
        case ExprNode::Kind::Tensor: {
            auto r = eval(x->children[0]);
            for (size_t a = 1; a < x->children.size(); ++a) r = r.tensor(eval(x->children[a]));
            return r;
        }
        case ExprNode::Kind::Compose: {
            auto r = eval(x->children.back());
            for (size_t a = x->children.size() - 1; a-- > 0;) r = eval(x->children[a]) * r;
            return r;
        }
        }
        throw std::logic_error("unreachable");
    }
};

template <>
inline GradedOp<LRat> Evaluator<GenericRing>::leaf_jw(int n) {
    return jw_generic(n);
}
template <>
inline GradedOp<Cyc> Evaluator<RootRing>::leaf_jw(int n) {
    return jw_at_root(n, R);
}
template <>
inline GradedOp<LRat> Evaluator<GenericRing>::leaf_alpha(int, int) {
    throw ModeError("alpha and beta exist only in root mode");
}
template <>
inline GradedOp<Cyc> Evaluator<RootRing>::leaf_alpha(int i, int n) {
    return embed_generator(i > 0 ? Gen::Alpha : Gen::Beta, i > 0 ? i : -i, n, R.p());
}
template <>
inline LRat Evaluator<GenericRing>::leaf_scalar(const LRat& c) {
    return c;
}
template <>
inline Cyc Evaluator<RootRing>::leaf_scalar(const LRat& c) {
    return R.eval_lrat(c);
}

/// Parser for the textual surface syntax:
///   id(n), cup(i,n), cap(i,n), e(i,n), jw(n), alpha(i,n), beta(i,n),
///   scalar[...] ATOM, infix (x) for tensor, * for composition (right factor
///   applied first), (+) for sum; precedence tensor > compose > sum.
class ExprParser {
public:
    explicit ExprParser(std::string src) : s(std::move(src)) {}

    Expr parse() {
        auto e = parse_sum();
        skip_ws();
        if (pos != s.size()) throw std::invalid_argument("trailing input at offset " + std::to_string(pos));
        return e;
    }

private:
    std::string s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool lit(const std::string& t) {
        skip_ws();
        if (s.compare(pos, t.size(), t) == 0) {
            pos += t.size();
            return true;
        }
        return false;
    }
    bool peek_lit(const std::string& t) {
        skip_ws();
        return s.compare(pos, t.size(), t) == 0;
    }
    long integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("expected integer at offset " + std::to_string(pos));
        return std::stol(s.substr(start, pos - start));
    }

    Expr parse_sum() {
        std::vector<Expr> terms{parse_compose()};
        while (peek_lit("(+)")) {
            lit("(+)");
            terms.push_back(parse_compose());
        }
        return terms.size() == 1 ? terms[0] : expr::sum(std::move(terms));
    }
    Expr parse_compose() {
        std::vector<Expr> factors{parse_tensor()};
        while (true) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                factors.push_back(parse_tensor());
            } else break;
        }
        return factors.size() == 1 ? factors[0] : expr::compose(std::move(factors));
    }
    Expr parse_tensor() {
        std::vector<Expr> factors{parse_atom()};
        while (peek_lit("(x)")) {
            lit("(x)");
            factors.push_back(parse_atom());
        }
        return factors.size() == 1 ? factors[0] : expr::tensor(std::move(factors));
    }
    Expr parse_atom() {
        skip_ws();
        if (lit("scalar[")) {
            LRat c = parse_scalar();
            if (!lit("]")) throw std::invalid_argument("expected ] after scalar");
            return expr::scale(c, parse_atom());
        }
        if (peek_lit("(") && !peek_lit("(+)") && !peek_lit("(x)")) {
            lit("(");
            auto e = parse_sum();
            if (!lit(")")) throw std::invalid_argument("expected )");
            return e;
        }
        for (const auto& [name, two_args] :
             std::vector<std::pair<std::string, bool>>{{"id", false},    {"cup", true},  {"cap", true},
                                                       {"e", true},      {"jw", false},  {"alpha", true},
                                                       {"beta", true}}) {
            if (peek_lit(name + "(")) {
                lit(name + "(");
                long a = integer();
                long b = 0;
                if (two_args) {
                    if (!lit(",")) throw std::invalid_argument("expected , in " + name);
                    b = integer();
                }
                if (!lit(")")) throw std::invalid_argument("expected ) after " + name);
                if (name == "id") return expr::id(static_cast<int>(a));
                if (name == "cup") return expr::cup(static_cast<int>(a), static_cast<int>(b));
                if (name == "cap") return expr::cap(static_cast<int>(a), static_cast<int>(b));
                if (name == "e") return expr::tl(static_cast<int>(a), static_cast<int>(b));
                if (name == "jw") return expr::jw(static_cast<int>(a));
                if (name == "alpha") return expr::alpha(static_cast<int>(a), static_cast<int>(b));
                return expr::beta(static_cast<int>(a), static_cast<int>(b));
            }
        }
        throw std::invalid_argument("unrecognized expression at offset " + std::to_string(pos));
    }

    // scalar literal: sums of products of rationals and powers of q (or v)
    LRat parse_scalar() { return parse_sc_sum(); }
    LRat parse_sc_sum() {
        LRat r = parse_sc_term();
        while (true) {
            skip_ws();
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                char op = s[pos++];
                LRat t = parse_sc_term();
                r = op == '+' ? r + t : r - t;
            } else break;
        }
        return r;
    }
    LRat parse_sc_term() {
        LRat r = parse_sc_factor();
        while (true) {
            skip_ws();
            if (pos < s.size() && (s[pos] == '*' || s[pos] == '/')) {
                char op = s[pos++];
                LRat f = parse_sc_factor();
                r = op == '*' ? r * f : r / f;
            } else break;
        }
        return r;
    }
    LRat parse_sc_factor() {
        skip_ws();
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            LRat r = parse_sc_sum();
            if (!lit(")")) throw std::invalid_argument("expected ) in scalar");
            return r;
        }
        if (pos < s.size() && s[pos] == '-') {
            ++pos;
            return -parse_sc_factor();
        }
        if (pos < s.size() && (s[pos] == 'q' || s[pos] == 'v')) {
            ++pos;
            long e = 1;
            skip_ws();
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                e = integer();
            }
            return LRat::vpow(static_cast<int>(e));
        }
        long num = integer();
        skip_ws();
        if (pos < s.size() && s[pos] == '/') {
            size_t save = pos;
            ++pos;
            skip_ws();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                long den = integer();
                Rat r(num, den);
                r.canonicalize();
                return LRat(r);
            }
            pos = save;
        }
        return LRat(Rat(num));
    }
};

inline Expr parse_expr(const std::string& src) { return ExprParser(src).parse(); }

} // namespace qpa
