#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weiljet/context.hpp"

namespace weiljet {

class ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// Immutable expression tree node. Built only through the expr_* factories,
// which fold constants just enough to keep printing/parsing a bijection on
// the trees they produce.
class ExprNode {
public:
    enum class Op : uint8_t { constant, variable, add, neg, mul, scalar_mul, int_pow, inv };

    Op op;
    std::optional<Scalar> value; // constant, scalar_mul
    int var = -1;                // variable
    uint32_t exponent = 0;       // int_pow
    ExprPtr a, b;                // children

    ExprNode(Op o) : op(o) {}
};

ExprPtr expr_const(const Scalar& c);
ExprPtr expr_var(int i);
ExprPtr expr_add(const ExprPtr& a, const ExprPtr& b);
ExprPtr expr_neg(const ExprPtr& a);
ExprPtr expr_mul(const ExprPtr& a, const ExprPtr& b);
ExprPtr expr_scalar_mul(const Scalar& c, const ExprPtr& x);
ExprPtr expr_int_pow(const ExprPtr& a, uint32_t n);
ExprPtr expr_inv(const ExprPtr& a);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
std::string expr_string(const ExprPtr& e);

// Rational expression map K^m -> K^w: polynomials plus reciprocals, the
// largest class evaluable exactly over every commutative algebra extension of
// the base ring. The implicit domain is wherever every reciprocal meets a
// unit.
class ExprMap {
public:
    ExprMap(Ring ring, int arity, std::vector<ExprPtr> outputs);

    // Grammar: expr := ['-'] term (('+'|'-') term)*;
    //          term := factor (('*'|'/') factor)*;
    //          factor := base ('^' nat)?;
    //          base := nat | '-' nat | 'x' nat | '(' expr ')'.
    // '/' builds a reciprocal (a/b = a * (1/b)); integer-literal quotients
    // fold into rational constants. Outputs are ';'-separated. Throws
    // SyntaxError with a position. Arity is inferred from the largest
    // variable index unless given.
    static ExprMap parse(const Ring& ring, const std::string& text, int arity = -1);

    const Ring& ring() const { return ring_; }
    int arity() const { return arity_; }
    int coarity() const { return static_cast<int>(outs_.size()); }
    const std::vector<ExprPtr>& outputs() const { return outs_; }
    const ExprPtr& output(int i) const { return outs_[i]; }

    // Parsing this string reproduces the map, structurally.
    std::string to_string() const;
    bool operator==(const ExprMap& o) const;
    bool operator!=(const ExprMap& o) const { return !(*this == o); }

private:
    Ring ring_;
    int arity_;
    std::vector<ExprPtr> outs_;
};

namespace detail {

template <AlgebraContext Ctx>
typename Ctx::value_type eval_node(
    const Ctx& ctx, const ExprPtr& n,
    const std::vector<typename Ctx::value_type>& args,
    std::map<const ExprNode*, typename Ctx::value_type>& memo) {
    auto hit = memo.find(n.get());
    if (hit != memo.end()) return hit->second;
    using V = typename Ctx::value_type;
    V out = [&]() -> V {
        switch (n->op) {
            case ExprNode::Op::constant: return ctx.embed(*n->value);
            case ExprNode::Op::variable: return args[static_cast<size_t>(n->var)];
            case ExprNode::Op::add:
                return ctx.add(eval_node(ctx, n->a, args, memo),
                               eval_node(ctx, n->b, args, memo));
            case ExprNode::Op::neg: return ctx.neg(eval_node(ctx, n->a, args, memo));
            case ExprNode::Op::mul:
                return ctx.mul(eval_node(ctx, n->a, args, memo),
                               eval_node(ctx, n->b, args, memo));
            case ExprNode::Op::scalar_mul:
                return ctx.mul(ctx.embed(*n->value), eval_node(ctx, n->a, args, memo));
            case ExprNode::Op::int_pow:
                return ctx_pow(ctx, eval_node(ctx, n->a, args, memo), n->exponent);
            case ExprNode::Op::inv: {
                V inner = eval_node(ctx, n->a, args, memo);
                try {
                    return ctx.inv(inner);
                } catch (const NotAUnitError& e) {
                    throw DomainError("reciprocal of a non-unit at " + expr_string(n) +
                                      " (" + e.what() + ")");
                }
            }
        }
        throw Error("corrupt expression node");
    }();
    return memo.emplace(n.get(), std::move(out)).first->second;
}

} // namespace detail

// Homomorphic evaluation over any context; the realization of the functor on
// points. NotAUnitError at a reciprocal surfaces as DomainError naming the
// subexpression; NotPolynomialError (polynomial contexts) passes through.
template <AlgebraContext Ctx>
std::vector<typename Ctx::value_type> eval_expr(
    const Ctx& ctx, const ExprMap& f,
    const std::vector<typename Ctx::value_type>& args) {
    if (static_cast<int>(args.size()) != f.arity())
        throw ArityMismatchError("argument count does not match expression arity");
    if (f.ring() != ctx.ring())
        throw RingMismatchError("expression over the wrong ring for this context");
    std::map<const ExprNode*, typename Ctx::value_type> memo;
    std::vector<typename Ctx::value_type> out;
    out.reserve(f.coarity());
    for (const auto& o : f.outputs()) out.push_back(detail::eval_node(ctx, o, args, memo));
    return out;
}

// Substitutes f's outputs for g's variables; g.arity() must equal
// f.coarity().
ExprMap compose(const ExprMap& g, const ExprMap& f);

// True when every reciprocal in f sits over a unit constant, i.e. f expands
// to an honest PolyMap.
bool is_polynomial(const ExprMap& f);
// Expansion into a PolyMap; NotPolynomialError when a reciprocal of a
// nonconstant survives.
PolyMap to_polymap(const ExprMap& f);
ExprMap from_polymap(const PolyMap& p);

// Base image and fiber image of the functor applied to f, at base point x
// with nilpotent argument nu (one element of the kernel per input).
struct Pushforward {
    std::vector<Scalar> base;        // f(x)
    std::vector<WeilElement> fiber;  // nilpotent parts of f(x + nu)
};

// Computed twice — directly, and through the Taylor polynomial of order
// nilpotency-1 evaluated on the nilpotent argument — and the two paths are
// asserted equal before returning. DomainError can only arise from the base
// point (nilpotent perturbations never change invertibility).
Pushforward pushforward(const ExprMap& f, const AlgebraPtr& A,
                        const std::vector<Scalar>& x,
                        const std::vector<WeilElement>& nu);

struct EqualityReport {
    bool equal = true;
    std::string detail; // first mismatch, empty when equal
};

// Evaluates f once over tensor(A, B) and once as an iterated evaluation (B
// outside, A inside), then compares coefficients under the canonical
// identification basis(A ⊗ B) = basis(A) x basis(B).
EqualityReport nested_vs_direct(const ExprMap& f, const MonomialPtr& A,
                                const MonomialPtr& B,
                                const std::vector<WeilElement>& z);

} // namespace weiljet
