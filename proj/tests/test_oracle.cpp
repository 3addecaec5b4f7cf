#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "latspec/frechet.hpp"
#include "latspec/oracle.hpp"

using latspec::AtomicSymbol;
using latspec::Complex;
using latspec::expr::Expr;
using namespace latspec::oracle;

namespace {

std::vector<Complex> reals(std::initializer_list<double> xs) {
    std::vector<Complex> out;
    for (double x : xs) out.emplace_back(x, 0.0);
    return out;
}

}  // namespace

TEST_CASE("quotient norm oracle walks the order statistics") {
    const auto samples = reals({5.0, 4.0, 3.0, 2.0, 1.0, 0.5, 0.5, 0.5});
    const OracleResult r = quotient_norm_oracle(samples, 3);
    REQUIRE(r.history.size() == 4);
    CHECK(r.history[0] == std::pair<long, double>(0, 5.0));
    CHECK(r.history[1] == std::pair<long, double>(1, 4.0));
    CHECK(r.history[2] == std::pair<long, double>(2, 3.0));
    CHECK(r.history[3] == std::pair<long, double>(3, 2.0));
    CHECK(r.value == 2.0);
    CHECK(r.budget == 3);
    CHECK_FALSE(r.converged);
}

TEST_CASE("order does not matter and moduli are compared") {
    const std::vector<Complex> samples = {Complex(0.0, -2.0), Complex(1.0, 0.0),
                                          Complex(-3.0, 4.0), Complex(0.1, 0.1)};
    const OracleResult r = quotient_norm_oracle(samples, 2);
    CHECK(r.history[0].second == 5.0);  // |(-3,4)|
    CHECK(r.history[1].second == 2.0);
    CHECK(r.value == 1.0);
}

TEST_CASE("a flat ladder reports the earliest budget and convergence") {
    const auto samples = reals({2.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0});
    const OracleResult r = quotient_norm_oracle(samples, 8);
    CHECK(r.value == 2.0);
    CHECK(r.budget == 0);
    CHECK(r.converged);
}

TEST_CASE("budget must stay below the sample count") {
    const auto samples = reals({1.0, 2.0});
    CHECK_THROWS_AS(quotient_norm_oracle(samples, 2), BudgetExceedsSamples);
    CHECK_THROWS_AS(quotient_norm_oracle(samples, -1), BudgetExceedsSamples);
    CHECK_NOTHROW(quotient_norm_oracle(samples, 1));
}

TEST_CASE("oracle agrees with the closed-form quotient norm") {
    std::mt19937 rng(550912);
    std::uniform_real_distribution<double> coef(-4.0, 4.0);
    std::uniform_int_distribution<int> len(0, 40);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Complex> prefix;
        const int n = len(rng);
        for (int j = 0; j < n; ++j) prefix.emplace_back(coef(rng), coef(rng));
        AtomicSymbol sym = [&] {
            switch (trial % 3) {
                case 0:
                    return AtomicSymbol::convergent_tail(prefix, Complex(coef(rng), coef(rng)));
                case 1:
                    return AtomicSymbol::eventually_zero(prefix);
                default:
                    return AtomicSymbol::eventually_periodic(
                        prefix, {Complex(coef(rng), coef(rng)), Complex(coef(rng), coef(rng))});
            }
        }();
        const auto section = finite_section_values(sym, 10000);
        const OracleResult r = quotient_norm_oracle(section, 64);
        CHECK(r.value == latspec::quotient_norm(sym));  // prefix length <= 64 entries
    }
}

TEST_CASE("cluster oracle keeps recurring values and drops transients") {
    std::vector<Complex> samples;
    for (int i = 0; i < 400; ++i) {
        if (i < 40) samples.emplace_back(9.0, 0.0);  // dies after the first block
        samples.emplace_back(i % 2 == 0 ? 1.0 : -1.0, 0.0);
    }
    const auto hits = cluster_oracle(samples, 1e-6, 8);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0] == Complex(1.0, 0.0));   // arg 0 sorts before arg pi
    CHECK(hits[1] == Complex(-1.0, 0.0));
}

TEST_CASE("cluster oracle tolerates drift within eps") {
    std::vector<Complex> samples;
    for (int i = 1; i <= 1000; ++i) samples.emplace_back(1.0 + 0.001 / i, 0.0);
    const auto hits = cluster_oracle(samples, 0.01, 10);
    REQUIRE(hits.size() == 1);
    CHECK(std::abs(hits[0] - Complex(1.0, 0.0)) <= 0.01);
}

TEST_CASE("cluster oracle validates its inputs") {
    const auto samples = reals({1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(cluster_oracle(samples, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(cluster_oracle(samples, 0.1, 3), std::invalid_argument);
    CHECK_THROWS_AS(cluster_oracle(samples, 0.0, 2), std::invalid_argument);
    CHECK_NOTHROW(cluster_oracle(samples, 0.1, 2));
}

TEST_CASE("tail check certifies eventually zero families") {
    const AtomicSymbol z =
        AtomicSymbol::eventually_zero({Complex(3.0, 0.0), Complex(2.0, 0.0)});
    const long Ns[] = {0, 1, 2, 10};
    const TailCheckResult r = compact_tail_check(z, Ns);
    REQUIRE(r.bounds.size() == 4);
    CHECK(r.bounds[0].second == 3.0);
    CHECK(r.bounds[1].second == 2.0);
    CHECK(r.bounds[2].second == 0.0);
    CHECK(r.compact_consistent);
}

TEST_CASE("tail check rejects families with persistent mass") {
    const AtomicSymbol c = AtomicSymbol::convergent_tail({}, Complex(0.0, 0.5));
    const long Ns[] = {0, 100, 100000};
    const TailCheckResult r = compact_tail_check(c, Ns);
    CHECK_FALSE(r.compact_consistent);
    for (const auto& [N, bound] : r.bounds) CHECK(bound == 0.5);
}

TEST_CASE("finite sections clamp to the defined range") {
    const AtomicSymbol f = AtomicSymbol::finite({Complex(1.0, 0.0), Complex(2.0, 0.0)});
    CHECK(finite_section_values(f, 10).size() == 2);
    CHECK(finite_section_values(f, 1).size() == 1);
    const AtomicSymbol g = AtomicSymbol::generator(Expr::parse("1/n", "n"), 1000);
    CHECK(finite_section_values(g, 5000).size() == 1000);
    const AtomicSymbol p = AtomicSymbol::eventually_periodic({}, {Complex(1.0, 0.0)});
    const auto vs = finite_section_values(p, 12);
    CHECK(vs.size() == 12);
    CHECK_THROWS_AS(finite_section_values(p, -1), std::invalid_argument);
}
