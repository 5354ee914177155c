#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hk/estimate.hpp"

using namespace hk;

namespace {

EstimateInput synthetic(std::uint64_t p, int d, const BigRational& c, const BigInt& s,
                        const BigInt& rho, int n_points) {
    EstimateInput in;
    in.p = p;
    in.m = static_cast<std::size_t>(d + 1);
    for (int n = 1; n <= n_points; ++n) {
        BigInt pnd = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(n * d));
        BigRational hk = c * pnd + BigRational(s * boost::multiprecision::pow(rho, static_cast<unsigned>(n)));
        REQUIRE(boost::multiprecision::denominator(hk) == 1);
        in.points.push_back({n, boost::multiprecision::numerator(hk)});
    }
    return in;
}

} // namespace

TEST_CASE("constant series recovered exactly") {
    EstimateInput in = synthetic(2, 2, BigRational(3), 0, 0, 5);
    MultiplicityEstimate est = estimate_multiplicity(in, 2);
    CHECK(est.estimate == BigRational(3));
    CHECK(est.band == 0);
    CHECK(est.converged);
}

TEST_CASE("geometric correction stays inside the band") {
    EstimateInput in = synthetic(2, 2, BigRational(3), 1, 2, 8); // r_n = 3 + 2^-n
    MultiplicityEstimate est = estimate_multiplicity(in, 2);
    CHECK(est.converged);
    CHECK(boost::multiprecision::abs(est.estimate - BigRational(3)) <= est.band);
}

TEST_CASE("estimator preconditions") {
    EstimateInput in = synthetic(2, 1, BigRational(1), 0, 0, 2);
    CHECK_THROWS_AS(estimate_multiplicity(in, 1), std::invalid_argument);
}

TEST_CASE("synthetic grids recover the leading coefficient") {
    struct Case {
        std::uint64_t p;
        int d;
        BigRational c;
    };
    for (const Case& cs : {Case{2, 1, BigRational(1)}, Case{2, 2, BigRational(3, 2)},
                           Case{3, 1, BigRational(7, 3)}}) {
        std::int64_t pd = 1;
        for (int i = 0; i < cs.d; ++i) pd *= static_cast<std::int64_t>(cs.p);
        for (std::int64_t s : {0, 1, 2, 5}) {
            for (std::int64_t rho = 0; rho < pd; ++rho) {
                EstimateInput in = synthetic(cs.p, cs.d, cs.c, s, rho, 8);
                MultiplicityEstimate est = estimate_multiplicity(in, cs.d);
                CHECK(boost::multiprecision::abs(est.estimate - cs.c) <= est.band);
            }
        }
    }
}

TEST_CASE("probe on exact rationals") {
    EstimateInput in = synthetic(2, 2, BigRational(3, 2), 0, 0, 4);
    MultiplicityEstimate est = estimate_multiplicity(in, 2);
    CHECK(est.estimate == BigRational(3, 2));
    CHECK(est.band == 0);
    RationalityReport rep = rationality_probe(est, 100);
    CHECK(rep.verdict == ProbeVerdict::ConsistentWithRational);
    REQUIRE(rep.best.has_value());
    CHECK(rep.best->num == 3);
    CHECK(rep.best->den == 2);
}

TEST_CASE("probe flags sqrt(2) as having no small rational") {
    MultiplicityEstimate est;
    est.d = 1;
    est.estimate = BigRational(BigInt("141421356237309504880"), BigInt("100000000000000000000"));
    est.band = BigRational(1, 1000000);
    est.converged = true;
    RationalityReport rep = rationality_probe(est, 100);
    CHECK(rep.verdict == ProbeVerdict::NoSmallRational);
    CHECK(rep.candidates.empty());

    // the nearest denominator-bounded approximation misses by ~7.2e-5
    auto conv = convergents(est.estimate, 100);
    REQUIRE(!conv.empty());
    CHECK(conv.back().first == 99);
    CHECK(conv.back().second == 70);
}

TEST_CASE("probe without convergence is inconclusive unless forced") {
    MultiplicityEstimate est;
    est.estimate = BigRational(BigInt("141421356237309504880"), BigInt("100000000000000000000"));
    est.band = BigRational(1, 1000000);
    est.converged = false;
    CHECK(rationality_probe(est, 100).verdict == ProbeVerdict::Inconclusive);
    CHECK(rationality_probe(est, 100, true).verdict == ProbeVerdict::NoSmallRational);
}

TEST_CASE("wide bands always admit a rational (Farey spacing)") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> num(0, 100000), den(1, 100000);
    for (int trial = 0; trial < 300; ++trial) {
        std::int64_t a = num(rng), b = den(rng);
        MultiplicityEstimate est;
        est.estimate = BigRational(a, b);
        est.band = BigRational(1, 50); // > 1/q_max for q_max = 100
        est.converged = true;
        CHECK(rationality_probe(est, 100).verdict == ProbeVerdict::ConsistentWithRational);
    }
}

TEST_CASE("verdict is monotone in q_max") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> num(1, 10000), den(1, 10000);
    for (int trial = 0; trial < 200; ++trial) {
        MultiplicityEstimate est;
        est.estimate = BigRational(num(rng), den(rng));
        est.band = BigRational(1, 1 + num(rng));
        est.converged = true;
        ProbeVerdict small = rationality_probe(est, 50).verdict;
        ProbeVerdict large = rationality_probe(est, 5000).verdict;
        if (small == ProbeVerdict::ConsistentWithRational)
            CHECK(large == ProbeVerdict::ConsistentWithRational);
    }
}

TEST_CASE("decimal rendering") {
    CHECK(rational_decimal_string(BigRational(3, 2)) == "1.5");
    CHECK(rational_decimal_string(BigRational(0)) == "0");
    CHECK(rational_decimal_string(BigRational(-7, 4)) == "-1.75");
    CHECK(rational_decimal_string(BigRational(1, 3), 5) == "0.33333");
}
