#include "doctest.h"
#include "weiljet/verify.hpp"

using namespace weiljet;

TEST_CASE("every suite passes on working rings") {
    for (const char* ring_name : {"rat", "mod:101"}) {
        VerifyOptions opt;
        opt.ring = Ring::parse(ring_name);
        opt.trials = 8;
        opt.seed = 20240816;
        for (const std::string& name : suite_names()) {
            SuiteReport r = run_suite(name, opt);
            INFO(ring_name, " / ", name, ": ",
                 r.failures.empty() ? "" : r.failures.front().what);
            CHECK(r.ok());
        }
    }
}

TEST_CASE("characteristic two skips what it cannot sample and fails nothing") {
    VerifyOptions opt;
    opt.ring = Ring::modular(2);
    opt.trials = 6;
    opt.seed = 3;
    for (const std::string& name : suite_names()) {
        SuiteReport r = run_suite(name, opt);
        if (name == "separation") {
            CHECK(r.suite_skipped);
            CHECK_FALSE(r.skip_reason.empty());
        } else {
            INFO(name, ": ", r.failures.empty() ? "" : r.failures.front().what);
            CHECK(r.failures.empty());
        }
    }
}

TEST_CASE("suite runs are reproducible from the seed") {
    VerifyOptions opt;
    opt.trials = 5;
    opt.seed = 777;
    for (const std::string& name : {"ktheory", "jets-vs-oracle", "graded-star"}) {
        SuiteReport a = run_suite(name, opt);
        SuiteReport b = run_suite(name, opt);
        CHECK(a.trials_run == b.trials_run);
        CHECK(a.skipped == b.skipped);
        CHECK(a.failures.size() == b.failures.size());
    }
}

TEST_CASE("asking for an unknown suite is an error") {
    CHECK_THROWS_AS(run_suite("spectral", VerifyOptions{}), DomainError);
}
