// Command-line front end: algebra inspection, Taylor/jet computation, the
// randomized property-suite runner, and micro-benchmarks.
//
// Exit codes: 0 success, 1 verification failure, 2 flag/parse problem,
// 3 evaluation outside a map's domain.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "weiljet/context.hpp"
#include "weiljet/expr.hpp"
#include "weiljet/jet.hpp"
#include "weiljet/json_io.hpp"
#include "weiljet/verify.hpp"

using namespace weiljet;

namespace {

// ------------------------------------------------------------------ algebra

struct AlgebraArgs {
    std::string preset;
    std::string ring = "rat";
    bool table = false;
};

int cmd_algebra(const AlgebraArgs& args) {
    Ring ring = Ring::parse(args.ring);
    MonomialPtr a = parse_preset(ring, args.preset);
    std::cout << algebra_json(a, args.table).dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------- jet

struct JetArgs {
    std::string expr;
    std::string ring = "rat";
    std::string at;
    int order = 1;
    std::string algebra; // empty: Taylor/jet mode
};

Scalar scalar_from_json(const Ring& ring, const Json& j) {
    if (j.is_string()) return Scalar::parse(ring, j.get<std::string>());
    if (j.is_number_integer()) return Scalar::from_int(ring, j.get<long long>());
    throw SyntaxError("scalar entries must be integers or \"p/q\" strings");
}

std::vector<WeilElement> nilpotent_args_from_stdin(const AlgebraPtr& a, int arity) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw SyntaxError(
            "pushforward needs the nilpotent argument on stdin as a JSON array "
            "of coefficient arrays (one per input variable)");
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SyntaxError(std::string("stdin is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw SyntaxError("stdin JSON must be an array");
    if (arity == 1 && !doc.empty() && !doc[0].is_array())
        doc = Json::array({doc}); // allow a flat array for one input
    if (static_cast<int>(doc.size()) != arity)
        throw SyntaxError("expected " + std::to_string(arity) +
                          " coefficient arrays, got " + std::to_string(doc.size()));
    std::vector<WeilElement> out;
    out.reserve(doc.size());
    for (const Json& row : doc) {
        if (!row.is_array() || static_cast<int>(row.size()) != a->dim())
            throw SyntaxError("each coefficient array must have length " +
                              std::to_string(a->dim()));
        std::vector<Scalar> coords;
        coords.reserve(row.size());
        for (const Json& entry : row) coords.push_back(scalar_from_json(a->ring(), entry));
        out.emplace_back(a, std::move(coords));
    }
    return out;
}

int cmd_jet(const JetArgs& args) {
    Ring ring = Ring::parse(args.ring);
    ExprMap f = ExprMap::parse(ring, args.expr);
    std::vector<Scalar> x = parse_point(ring, args.at);
    if (static_cast<int>(x.size()) != f.arity())
        throw SyntaxError("--at supplies " + std::to_string(x.size()) +
                          " coordinates but the expression has " +
                          std::to_string(f.arity()) + " variables");

    Json out;
    out["expr"] = f.to_string();
    out["ring"] = ring.to_string();

    if (!args.algebra.empty()) {
        MonomialPtr a = parse_preset(ring, args.algebra);
        std::vector<WeilElement> nu = nilpotent_args_from_stdin(a, f.arity());
        Pushforward p = pushforward(f, a, x, nu);
        out["algebra"] = algebra_json(a);
        Json base = Json::array();
        for (const Scalar& c : p.base) base.push_back(scalar_json(c));
        out["base_point"] = Json::array();
        for (const Scalar& c : x) out["base_point"].push_back(scalar_json(c));
        out["base"] = base;
        Json fiber = Json::array();
        for (const WeilElement& e : p.fiber) fiber.push_back(element_json(e));
        out["fiber"] = fiber;
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (args.order < 0) throw SyntaxError("--order must be nonnegative");
    TaylorPoly tp = taylor(f, x, args.order);
    std::vector<Scalar> value = scalar_eval(f, x);
    out["order"] = args.order;
    Json pt = Json::array();
    for (const Scalar& c : x) pt.push_back(scalar_json(c));
    out["base_point"] = pt;
    Json val = Json::array();
    for (const Scalar& c : value) val.push_back(scalar_json(c));
    out["value"] = val;
    out["taylor"] = taylor_json(tp);
    if (f.arity() == 1) {
        // jet along the unit-speed line: component j is the h^j coefficient
        std::vector<std::vector<Scalar>> curve(static_cast<size_t>(args.order) + 1, x);
        for (int l = 1; l <= args.order; ++l)
            curve[static_cast<size_t>(l)] =
                std::vector<Scalar>{l == 1 ? Scalar::one(ring) : Scalar::zero(ring)};
        JetValue jv = simplicial_jet(f, curve);
        out["jet"] = jet_json(jv);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite = "all";
    std::string ring = "rat";
    int trials = 50;
    uint64_t seed = 1;
    int max_degree = 3;
    int vars = 2;
};

int cmd_verify(const VerifyArgs& args) {
    VerifyOptions opt;
    opt.ring = Ring::parse(args.ring);
    opt.trials = args.trials;
    opt.seed = args.seed;
    opt.max_degree = args.max_degree;
    opt.vars = args.vars;

    std::vector<std::string> selected;
    if (args.suite == "all") {
        selected = suite_names();
    } else {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), args.suite) == names.end()) {
            std::cerr << "unknown suite '" << args.suite << "'; available:";
            for (const auto& n : names) std::cerr << " " << n;
            std::cerr << "\n";
            return 2;
        }
        selected.push_back(args.suite);
    }

    Json doc;
    doc["ring"] = opt.ring.to_string();
    doc["seed"] = opt.seed;
    doc["trials"] = opt.trials;
    doc["max_degree"] = opt.max_degree;
    doc["vars"] = opt.vars;
    Json suites = Json::array();
    bool any_failure = false;
    for (const std::string& name : selected) {
        SuiteReport r = run_suite(name, opt);
        Json s;
        s["suite"] = r.suite;
        if (r.suite_skipped) {
            s["status"] = "skip";
            s["skip_reason"] = r.skip_reason;
        } else {
            s["status"] = r.failures.empty() ? "ok" : "fail";
            s["trials"] = r.trials_run;
            s["trial_skips"] = r.skipped;
            Json fails = Json::array();
            for (const SuiteFailure& f : r.failures)
                fails.push_back(Json{{"trial", f.trial}, {"what", f.what}});
            s["failures"] = fails;
        }
        suites.push_back(s);
        any_failure = any_failure || (!r.suite_skipped && !r.failures.empty());
        std::cerr << "suite " << r.suite << ": "
                  << (r.suite_skipped ? "SKIP"
                                      : (r.failures.empty() ? "ok" : "FAIL"))
                  << " (" << r.trials_run << " trials, " << r.skipped
                  << " trial skips, " << r.failures.size() << " failures, "
                  << r.elapsed_seconds << "s)\n";
    }
    doc["suites"] = suites;
    std::cout << doc.dump(2) << "\n";
    return any_failure ? 1 : 0;
}

// -------------------------------------------------------------------- bench

struct BenchArgs {
    std::string expr;
    std::string ring = "rat";
    std::string mode = "both";
    std::string orders = "1..4";
    int repeat = 10;
};

std::pair<int, int> parse_order_range(const std::string& text) {
    auto bad = [&]() -> std::pair<int, int> {
        throw SyntaxError("--orders must be 'k' or 'a..b' with 1 <= a <= b");
    };
    size_t dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int k = std::stoi(text);
            if (k < 1) return bad();
            return {k, k};
        }
        int a = std::stoi(text.substr(0, dots));
        int b = std::stoi(text.substr(dots + 2));
        if (a < 1 || b < a) return bad();
        return {a, b};
    } catch (const std::logic_error&) {
        return bad();
    }
}

// Nilpotent displacement used by every benchmark mode: the sum of the
// degree-1 basis monomials, so all first-order directions are exercised.
std::vector<WeilElement> bench_arguments(const MonomialPtr& a,
                                         const std::vector<Scalar>& x) {
    WeilElement nu = WeilElement::zero(a);
    for (int i = 0; i < a->dim(); ++i)
        if (a->grading()[static_cast<size_t>(i)] == 1)
            nu += WeilElement::basis(a, i);
    std::vector<WeilElement> args;
    args.reserve(x.size());
    for (const Scalar& xi : x) args.push_back(embed(AlgebraPtr(a), xi) + nu);
    return args;
}

template <class Fn>
int64_t time_ns_per_eval(int repeat, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeat; ++i) fn();
    auto t1 = std::chrono::steady_clock::now();
    auto total = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    return total / std::max(repeat, 1);
}

// ---- iterated first-order context: value = pair(value, value), e^2 = 0 ----

template <class Base>
class DualCtx {
public:
    using value_type = std::pair<typename Base::value_type, typename Base::value_type>;

    explicit DualCtx(Base base) : base_(std::move(base)) {}

    const Ring& ring() const { return base_.ring(); }
    const Base& inner() const { return base_; }
    value_type zero() const { return {base_.zero(), base_.zero()}; }
    value_type one() const { return {base_.one(), base_.zero()}; }
    value_type embed(const Scalar& s) const { return {base_.embed(s), base_.zero()}; }
    value_type add(const value_type& a, const value_type& b) const {
        return {base_.add(a.first, b.first), base_.add(a.second, b.second)};
    }
    value_type neg(const value_type& a) const {
        return {base_.neg(a.first), base_.neg(a.second)};
    }
    value_type mul(const value_type& a, const value_type& b) const {
        return {base_.mul(a.first, b.first),
                base_.add(base_.mul(a.first, b.second), base_.mul(a.second, b.first))};
    }
    value_type inv(const value_type& a) const {
        auto ia = base_.inv(a.first);
        return {ia, base_.neg(base_.mul(base_.mul(ia, a.second), ia))};
    }
    bool equal(const value_type& a, const value_type& b) const {
        return base_.equal(a.first, b.first) && base_.equal(a.second, b.second);
    }

private:
    Base base_;
};

template <int K>
struct NestOf {
    using Ctx = DualCtx<typename NestOf<K - 1>::Ctx>;
    static Ctx make(const Ring& r) { return Ctx(NestOf<K - 1>::make(r)); }
};
template <>
struct NestOf<0> {
    using Ctx = ScalarCtx;
    static Ctx make(const Ring& r) { return ScalarCtx(r); }
};

inline Scalar seed_arg(const ScalarCtx& ctx, const Scalar& x) { return ctx.embed(x); }
template <class B>
typename DualCtx<B>::value_type seed_arg(const DualCtx<B>& ctx, const Scalar& x) {
    return {seed_arg(ctx.inner(), x), ctx.inner().one()};
}

inline void flatten_value(const Scalar& v, std::vector<Scalar>& out) { out.push_back(v); }
template <class A>
void flatten_value(const std::pair<A, A>& v, std::vector<Scalar>& out) {
    flatten_value(v.first, out);
    flatten_value(v.second, out);
}

struct NestedRun {
    int64_t ns_per_eval;
    // flattened coefficients per output; index bit j-1 <-> direction j taken
    std::vector<std::vector<Scalar>> coeffs;
};

template <int K>
NestedRun run_nested(const ExprMap& f, const std::vector<Scalar>& x, int repeat) {
    auto ctx = NestOf<K>::make(f.ring());
    using V = typename NestOf<K>::Ctx::value_type;
    std::vector<V> args;
    args.reserve(x.size());
    for (const Scalar& xi : x) args.push_back(seed_arg(ctx, xi));
    std::vector<V> result = eval_expr(ctx, f, args);
    NestedRun run{0, {}};
    for (const V& v : result) {
        std::vector<Scalar> flat;
        flatten_value(v, flat);
        run.coeffs.push_back(std::move(flat));
    }
    run.ns_per_eval = time_ns_per_eval(repeat, [&] { eval_expr(ctx, f, args); });
    return run;
}

NestedRun run_nested_depth(int k, const ExprMap& f, const std::vector<Scalar>& x,
                           int repeat) {
    switch (k) {
        case 1: return run_nested<1>(f, x, repeat);
        case 2: return run_nested<2>(f, x, repeat);
        case 3: return run_nested<3>(f, x, repeat);
        case 4: return run_nested<4>(f, x, repeat);
        case 5: return run_nested<5>(f, x, repeat);
        case 6: return run_nested<6>(f, x, repeat);
        case 7: return run_nested<7>(f, x, repeat);
        case 8: return run_nested<8>(f, x, repeat);
        case 9: return run_nested<9>(f, x, repeat);
        case 10: return run_nested<10>(f, x, repeat);
        default:
            throw SyntaxError("nested timing supports orders 1..10");
    }
}

int cmd_bench(const BenchArgs& args) {
    Ring ring = Ring::parse(args.ring);
    ExprMap f = ExprMap::parse(ring, args.expr);
    auto [lo, hi] = parse_order_range(args.orders);
    if (args.repeat < 1) throw SyntaxError("--repeat must be positive");
    bool do_jet = args.mode == "jet" || args.mode == "both";
    bool do_tan = args.mode == "tangent" || args.mode == "both";
    bool do_nested = args.mode == "both";
    if (do_nested && hi > 10) throw SyntaxError("nested timing supports orders 1..10");

    Rng rng(9001);
    std::vector<Scalar> x = random_domain_point(f, rng);

    std::cout << "k,dim,mode,ns_per_eval\n";
    for (int k = lo; k <= hi; ++k) {
        int64_t jet_ns = 0, tan_ns = 0, nested_ns = 0;
        if (do_jet) {
            MonomialPtr a = make_jet(ring, k);
            WeilCtx ctx((AlgebraPtr(a)));
            std::vector<WeilElement> wargs = bench_arguments(a, x);
            eval_expr(ctx, f, wargs); // warm-up; surfaces DomainError early
            jet_ns = time_ns_per_eval(args.repeat, [&] { eval_expr(ctx, f, wargs); });
            std::cout << k << "," << a->dim() << ",jet," << jet_ns << "\n";
        }
        MonomialPtr tangent_algebra;
        std::vector<WeilElement> direct_result;
        if (do_tan || do_nested) tangent_algebra = make_tangent(ring, k);
        if (do_tan) {
            WeilCtx ctx((AlgebraPtr(tangent_algebra)));
            std::vector<WeilElement> wargs = bench_arguments(tangent_algebra, x);
            direct_result = eval_expr(ctx, f, wargs);
            tan_ns = time_ns_per_eval(args.repeat, [&] { eval_expr(ctx, f, wargs); });
            std::cout << k << "," << tangent_algebra->dim() << ",tangent," << tan_ns
                      << "\n";
        }
        if (do_nested) {
            if (direct_result.empty()) {
                WeilCtx ctx((AlgebraPtr(tangent_algebra)));
                direct_result = eval_expr(ctx, f, bench_arguments(tangent_algebra, x));
            }
            NestedRun nested = run_nested_depth(k, f, x, args.repeat);
            // correctness gate: the iterated first-order values must agree
            // with the one-shot evaluation coefficient by coefficient
            for (size_t w = 0; w < nested.coeffs.size(); ++w) {
                for (size_t mask = 0; mask < nested.coeffs[w].size(); ++mask) {
                    Exp e(static_cast<size_t>(k), 0u);
                    for (int j = 0; j < k; ++j) e[static_cast<size_t>(j)] = (mask >> j) & 1u;
                    int idx = tangent_algebra->monomial_index(e);
                    if (nested.coeffs[w][mask] != direct_result[w].coeff(idx)) {
                        std::cerr << "nested/direct mismatch at k=" << k << " output "
                                  << w << " mask " << mask << "\n";
                        return 1;
                    }
                }
            }
            nested_ns = nested.ns_per_eval;
            std::cout << k << "," << (1 << k) << ",nested," << nested_ns << "\n";
        }
        if (do_jet && do_tan && jet_ns > 0)
            std::cerr << "k=" << k << ": tangent/jet time ratio "
                      << static_cast<double>(tan_ns) / static_cast<double>(jet_ns)
                      << "\n";
        if (do_nested && nested_ns > 0 && tan_ns > 0)
            std::cerr << "k=" << k << ": nested/direct time ratio "
                      << static_cast<double>(nested_ns) / static_cast<double>(tan_ns)
                      << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Weil-algebra jets, difference quotients, and property suites"};
    app.require_subcommand(1);

    AlgebraArgs algebra_args;
    CLI::App* algebra = app.add_subcommand("algebra", "Describe a Weil algebra preset");
    algebra->add_option("preset", algebra_args.preset,
                        "jet:k | tan:k | trunc:n,r | tensor(a,b) | whitney(a,b)")
        ->required();
    algebra->add_option("--ring", algebra_args.ring, "rat | mod:<m>");
    algebra->add_flag("--table", algebra_args.table, "include the multiplication table");

    JetArgs jet_args;
    CLI::App* jet = app.add_subcommand("jet", "Taylor polynomial and jet of an expression");
    jet->add_option("--expr", jet_args.expr, "expression in x0,x1,...")->required();
    jet->add_option("--ring", jet_args.ring, "rat | mod:<m>");
    jet->add_option("--at", jet_args.at, "base point, comma separated")->required();
    jet->add_option("--order", jet_args.order, "truncation order k >= 0");
    jet->add_option("--algebra", jet_args.algebra,
                    "Weil algebra preset: print the pushforward at the nilpotent "
                    "argument read from stdin (JSON coefficient arrays)");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Run randomized property suites");
    verify->add_option("--suite", verify_args.suite, "suite name or 'all'");
    verify->add_option("--ring", verify_args.ring, "rat | mod:<m>");
    verify->add_option("--trials", verify_args.trials, "trials per suite")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_args.seed, "root seed");
    verify->add_option("--max-degree", verify_args.max_degree, "generator degree bound")
        ->check(CLI::PositiveNumber);
    verify->add_option("--vars", verify_args.vars, "generator variable count")
        ->check(CLI::PositiveNumber);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Time evaluation backends (CSV)");
    bench->add_option("--expr", bench_args.expr, "expression in x0,x1,...")->required();
    bench->add_option("--ring", bench_args.ring, "rat | mod:<m>");
    bench->add_option("--mode", bench_args.mode, "jet | tangent | both")
        ->check(CLI::IsMember({"jet", "tangent", "both"}));
    bench->add_option("--orders", bench_args.orders, "k or a..b");
    bench->add_option("--repeat", bench_args.repeat, "evaluations per timing")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(algebra)) return cmd_algebra(algebra_args);
        if (app.got_subcommand(jet)) return cmd_jet(jet_args);
        if (app.got_subcommand(verify)) return cmd_verify(verify_args);
        if (app.got_subcommand(bench)) return cmd_bench(bench_args);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidPresetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArityMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
