#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "weiljet/diffcalc.hpp"
#include "weiljet/jet.hpp"
#include "weiljet/rng.hpp"

namespace weiljet {

// ---- deterministic random generators shared by the suites and tests ----

Scalar random_scalar(const Ring& ring, Rng& rng, int span = 10);
Scalar random_unit(const Ring& ring, Rng& rng);
std::vector<Scalar> random_point(const Ring& ring, int width, Rng& rng, int span = 10);

// Random polynomial map with the given shape; every component gets `terms`
// monomials of total degree <= max_degree.
PolyMap random_polymap(const Ring& ring, int arity, int coarity, int max_degree, int terms,
                       Rng& rng);

// The same as an expression tree.
ExprMap random_poly_expr(const Ring& ring, int arity, int coarity, int max_degree, int terms,
                         Rng& rng);

// Random rational expression (may contain reciprocals). Evaluation can throw
// DomainError at unlucky points; pair with a retry loop.
ExprMap random_rational_expr(const Ring& ring, int arity, int coarity, int depth, Rng& rng);

// Point where f evaluates (retries up to `attempts`; DomainError if none found).
std::vector<Scalar> random_domain_point(const ExprMap& f, Rng& rng, int attempts = 64);

// Nonsingular time tuples come from sample_units, so ExhaustedError
// propagates when the ring is too small for the requested order.
SimplicialPoint random_nonsingular_simplicial(const Ring& ring, int k, int width, Rng& rng);
CubicPoint random_nonsingular_cubic(const Ring& ring, int k, int width, Rng& rng);

WeilElement random_element(const AlgebraPtr& a, Rng& rng);
WeilElement random_unit_element(const AlgebraPtr& a, Rng& rng);
WeilElement random_nilpotent(const AlgebraPtr& a, Rng& rng);

// ---- suite runner ----

struct VerifyOptions {
    Ring ring = Ring::rationals();
    int trials = 50;
    uint64_t seed = 1;
    int max_degree = 3;
    int vars = 2;
};

struct SuiteFailure {
    int trial;
    std::string what;
};

struct SuiteReport {
    std::string suite;
    int trials_run = 0;
    int skipped = 0;  // trials skipped for ring-capability reasons
    std::vector<SuiteFailure> failures;
    bool suite_skipped = false;  // the whole suite is inapplicable to the ring
    std::string skip_reason;
    double elapsed_seconds = 0.0;

    bool ok() const { return failures.empty(); }
};

// weil-laws, ktheory, taylor-chain, jets-vs-oracle, difference-functoriality,
// embedding-sign, graded-star, separation, naturality.
const std::vector<std::string>& suite_names();

// DomainError for an unknown name. Deterministic under (options.seed).
SuiteReport run_suite(const std::string& name, const VerifyOptions& options);

} // namespace weiljet
