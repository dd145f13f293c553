#include "weiljet/expr.hpp"

#include <algorithm>
#include <cctype>

namespace weiljet {

namespace {

std::shared_ptr<ExprNode> node(ExprNode::Op op) {
    return std::make_shared<ExprNode>(op);
}

bool is_const(const ExprPtr& e) { return e->op == ExprNode::Op::constant; }

} // namespace

ExprPtr expr_const(const Scalar& c) {
    auto n = node(ExprNode::Op::constant);
    n->value = c;
    return n;
}

ExprPtr expr_var(int i) {
    if (i < 0) throw ArityMismatchError("negative variable index");
    auto n = node(ExprNode::Op::variable);
    n->var = i;
    return n;
}

ExprPtr expr_add(const ExprPtr& a, const ExprPtr& b) {
    if (is_const(a) && is_const(b)) return expr_const(*a->value + *b->value);
    auto n = node(ExprNode::Op::add);
    n->a = a;
    n->b = b;
    return n;
}

ExprPtr expr_neg(const ExprPtr& a) {
    if (is_const(a)) return expr_const(-*a->value);
    auto n = node(ExprNode::Op::neg);
    n->a = a;
    return n;
}

ExprPtr expr_scalar_mul(const Scalar& c, const ExprPtr& x) {
    if (is_const(x)) return expr_const(c * *x->value);
    if (c.is_one()) return x;
    auto n = node(ExprNode::Op::scalar_mul);
    n->value = c;
    n->a = x;
    return n;
}

ExprPtr expr_mul(const ExprPtr& a, const ExprPtr& b) {
    if (is_const(a)) return expr_scalar_mul(*a->value, b);
    if (is_const(b)) return expr_scalar_mul(*b->value, a);
    auto n = node(ExprNode::Op::mul);
    n->a = a;
    n->b = b;
    return n;
}

ExprPtr expr_int_pow(const ExprPtr& a, uint32_t n) {
    auto p = node(ExprNode::Op::int_pow);
    p->a = a;
    p->exponent = n;
    return p;
}

ExprPtr expr_inv(const ExprPtr& a) {
    if (is_const(a) && a->value->is_unit()) return expr_const(a->value->inv());
    auto n = node(ExprNode::Op::inv);
    n->a = a;
    return n;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->op != b->op) return false;
    switch (a->op) {
        case ExprNode::Op::constant: return *a->value == *b->value;
        case ExprNode::Op::variable: return a->var == b->var;
        case ExprNode::Op::add:
        case ExprNode::Op::mul:
            return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
        case ExprNode::Op::neg:
        case ExprNode::Op::inv: return expr_equal(a->a, b->a);
        case ExprNode::Op::scalar_mul:
            return *a->value == *b->value && expr_equal(a->a, b->a);
        case ExprNode::Op::int_pow:
            return a->exponent == b->exponent && expr_equal(a->a, b->a);
    }
    return false;
}

std::string expr_string(const ExprPtr& e) {
    switch (e->op) {
        case ExprNode::Op::constant: return e->value->to_string();
        case ExprNode::Op::variable: return "x" + std::to_string(e->var);
        case ExprNode::Op::add:
            // Subtraction form keeps parse(print) structural: the right child
            // of a printed " - " is never a constant (those fold on parse).
            if (e->b->op == ExprNode::Op::neg)
                return "(" + expr_string(e->a) + " - " + expr_string(e->b->a) + ")";
            return "(" + expr_string(e->a) + " + " + expr_string(e->b) + ")";
        case ExprNode::Op::neg: return "(-" + expr_string(e->a) + ")";
        case ExprNode::Op::mul:
            return "(" + expr_string(e->a) + " * " + expr_string(e->b) + ")";
        case ExprNode::Op::scalar_mul:
            return "(" + e->value->to_string() + " * " + expr_string(e->a) + ")";
        case ExprNode::Op::int_pow:
            return "(" + expr_string(e->a) + "^" + std::to_string(e->exponent) + ")";
        case ExprNode::Op::inv: return "(1/" + expr_string(e->a) + ")";
    }
    return "?";
}

// --- parser ------------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(const Ring& ring, const std::string& text) : ring_(ring), text_(text) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw SyntaxError(what + " at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    uint64_t nat() {
        skip_ws();
        if (pos_ >= text_.size() || !isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a number");
        const size_t start = pos_;
        while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ - start > 18) fail("integer literal too long");
        return std::stoull(std::string(text_.substr(start, pos_ - start)));
    }

    ExprPtr expr() {
        ExprPtr acc;
        if (eat('-')) {
            acc = expr_neg(term());
        } else {
            acc = term();
        }
        for (;;) {
            if (eat('+'))
                acc = expr_add(acc, term());
            else if (eat('-'))
                acc = expr_add(acc, expr_neg(term()));
            else
                return acc;
        }
    }

    ExprPtr term() {
        ExprPtr acc = factor();
        for (;;) {
            if (eat('*'))
                acc = expr_mul(acc, factor());
            else if (eat('/'))
                acc = expr_mul(acc, expr_inv(factor()));
            else
                return acc;
        }
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (eat('^')) return expr_int_pow(b, static_cast<uint32_t>(nat()));
        return b;
    }

    ExprPtr base() {
        const char c = peek();
        if (c == '(') {
            eat('(');
            ExprPtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == '-') {
            eat('-');
            return expr_const(Scalar::from_int(ring_, -static_cast<int64_t>(nat())));
        }
        if (c == 'x') {
            eat('x');
            const uint64_t i = nat();
            if (i > 255) fail("variable index too large");
            max_var_ = std::max(max_var_, static_cast<int>(i));
            return expr_var(static_cast<int>(i));
        }
        if (isdigit(static_cast<unsigned char>(c)))
            return expr_const(Scalar::from_int(ring_, static_cast<int64_t>(nat())));
        fail("expected a value");
    }

public:
    int max_var_ = -1;

private:
    const Ring& ring_;
    std::string_view text_;
    size_t pos_ = 0;
};

int tree_max_var(const ExprPtr& e) {
    int m = e->var; // -1 except for variables
    if (e->a) m = std::max(m, tree_max_var(e->a));
    if (e->b) m = std::max(m, tree_max_var(e->b));
    return m;
}

} // namespace

ExprMap::ExprMap(Ring ring, int arity, std::vector<ExprPtr> outputs)
    : ring_(std::move(ring)), arity_(arity), outs_(std::move(outputs)) {
    if (arity_ < 0) throw ArityMismatchError("negative arity");
    if (outs_.empty()) throw ArityMismatchError("expression map needs an output");
    for (const auto& o : outs_)
        if (tree_max_var(o) >= arity_)
            throw ArityMismatchError("variable index exceeds arity");
}

ExprMap ExprMap::parse(const Ring& ring, const std::string& text, int arity) {
    std::vector<ExprPtr> outs;
    int max_var = -1;
    size_t start = 0;
    for (;;) {
        const size_t semi = text.find(';', start);
        const std::string piece =
            text.substr(start, semi == std::string::npos ? semi : semi - start);
        Parser p(ring, piece);
        outs.push_back(p.run());
        max_var = std::max(max_var, p.max_var_);
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    const int needed = max_var + 1;
    if (arity < 0) arity = needed;
    if (arity < needed) throw ArityMismatchError("declared arity below largest variable");
    return ExprMap(ring, arity, std::move(outs));
}

std::string ExprMap::to_string() const {
    std::string s;
    for (const auto& o : outs_) {
        if (!s.empty()) s += "; ";
        s += expr_string(o);
    }
    return s;
}

bool ExprMap::operator==(const ExprMap& o) const {
    if (ring_ != o.ring_ || arity_ != o.arity_ || outs_.size() != o.outs_.size())
        return false;
    for (size_t i = 0; i < outs_.size(); ++i)
        if (!expr_equal(outs_[i], o.outs_[i])) return false;
    return true;
}

// --- composition and polynomial conversion ----------------------------------

namespace {

ExprPtr substitute(const ExprPtr& e, const std::vector<ExprPtr>& images,
                   std::map<const ExprNode*, ExprPtr>& memo) {
    auto hit = memo.find(e.get());
    if (hit != memo.end()) return hit->second;
    ExprPtr out;
    switch (e->op) {
        case ExprNode::Op::constant: out = e; break;
        case ExprNode::Op::variable: out = images[static_cast<size_t>(e->var)]; break;
        case ExprNode::Op::add:
            out = expr_add(substitute(e->a, images, memo), substitute(e->b, images, memo));
            break;
        case ExprNode::Op::neg: out = expr_neg(substitute(e->a, images, memo)); break;
        case ExprNode::Op::mul:
            out = expr_mul(substitute(e->a, images, memo), substitute(e->b, images, memo));
            break;
        case ExprNode::Op::scalar_mul:
            out = expr_scalar_mul(*e->value, substitute(e->a, images, memo));
            break;
        case ExprNode::Op::int_pow:
            out = expr_int_pow(substitute(e->a, images, memo), e->exponent);
            break;
        case ExprNode::Op::inv: out = expr_inv(substitute(e->a, images, memo)); break;
    }
    memo.emplace(e.get(), out);
    return out;
}

} // namespace

ExprMap compose(const ExprMap& g, const ExprMap& f) {
    if (g.ring() != f.ring()) throw RingMismatchError("composing maps over different rings");
    if (g.arity() != f.coarity())
        throw ArityMismatchError("inner coarity does not feed outer arity");
    std::map<const ExprNode*, ExprPtr> memo;
    std::vector<ExprPtr> outs;
    outs.reserve(g.coarity());
    for (const auto& o : g.outputs()) outs.push_back(substitute(o, f.outputs(), memo));
    return ExprMap(f.ring(), f.arity(), std::move(outs));
}

PolyMap to_polymap(const ExprMap& f) {
    PolyCtx ctx(f.ring(), f.arity());
    std::vector<SparsePoly> args;
    args.reserve(f.arity());
    for (int v = 0; v < f.arity(); ++v) args.push_back(ctx.variable(v));
    return PolyMap(f.ring(), f.arity(), eval_expr(ctx, f, args));
}

bool is_polynomial(const ExprMap& f) {
    try {
        to_polymap(f);
        return true;
    } catch (const NotPolynomialError&) {
        return false;
    } catch (const DomainError&) {
        return false; // a reciprocal of a non-unit constant is nowhere defined
    }
}

ExprMap from_polymap(const PolyMap& p) {
    const Ring& ring = p.ring();
    std::vector<ExprPtr> outs;
    outs.reserve(p.coarity());
    for (const auto& comp : p.components()) {
        ExprPtr acc = nullptr;
        for (const auto& [e, c] : comp.terms()) {
            ExprPtr t = nullptr;
            for (int v = 0; v < p.arity(); ++v) {
                if (!e[v]) continue;
                ExprPtr pw = e[v] == 1 ? expr_var(v) : expr_int_pow(expr_var(v), e[v]);
                t = t ? expr_mul(t, pw) : pw;
            }
            t = t ? expr_scalar_mul(c, t) : expr_const(c);
            acc = acc ? expr_add(acc, t) : t;
        }
        outs.push_back(acc ? acc : expr_const(Scalar::zero(ring)));
    }
    return ExprMap(ring, p.arity(), std::move(outs));
}

// --- nesting comparison ------------------------------------------------------

EqualityReport nested_vs_direct(const ExprMap& f, const MonomialPtr& A,
                                const MonomialPtr& B,
                                const std::vector<WeilElement>& z) {
    MonomialPtr AB = tensor(A, B);
    for (const auto& e : z)
        if (!same_algebra(*e.algebra(), *AB))
            throw AlgebraMismatchError("point does not live on tensor(A,B)");

    // Direct: one evaluation over the tensor algebra.
    const auto direct = eval_expr(WeilCtx(AB), f, z);

    // Iterated: resolve each argument into a B-vector of A-elements through
    // the basis identification, evaluate over the nested context.
    NestedCtx ctx(B, A);
    const int na = A->nvars();
    std::vector<NestedCtx::value_type> args;
    args.reserve(z.size());
    for (const auto& e : z) {
        NestedCtx::value_type arg = ctx.zero();
        for (int idx = 0; idx < AB->dim(); ++idx) {
            if (e.coeff(idx).is_zero()) continue;
            const Exp& ex = AB->basis_monomial(idx);
            const Exp ea(ex.begin(), ex.begin() + na);
            const Exp eb(ex.begin() + na, ex.end());
            std::vector<Scalar> ca = arg[B->monomial_index(eb)].coeffs();
            ca[A->monomial_index(ea)] += e.coeff(idx);
            arg[B->monomial_index(eb)] =
                WeilElement(std::static_pointer_cast<const Algebra>(A), std::move(ca));
        }
        args.push_back(std::move(arg));
    }
    const auto nested = eval_expr(ctx, f, args);

    // Compare coefficientwise under the same identification.
    for (int out = 0; out < f.coarity(); ++out)
        for (int idx = 0; idx < AB->dim(); ++idx) {
            const Exp& ex = AB->basis_monomial(idx);
            const Exp ea(ex.begin(), ex.begin() + na);
            const Exp eb(ex.begin() + na, ex.end());
            const Scalar lhs = direct[out].coeff(idx);
            const Scalar rhs = nested[out][B->monomial_index(eb)].coeff(A->monomial_index(ea));
            if (!(lhs == rhs))
                return {false, "output " + std::to_string(out) + " at monomial " +
                                   monomial_string(ex) + ": direct " + lhs.to_string() +
                                   " vs nested " + rhs.to_string()};
        }
    return {};
}

} // namespace weiljet
