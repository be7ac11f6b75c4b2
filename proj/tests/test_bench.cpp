#include <algorithm>
#include <numeric>

#include <doctest.h>

#include "flowest/bench.hpp"
#include "support.hpp"

using namespace flowest;

TEST_CASE("sampled parameters stay inside the polytope")
{
    const Polytope poly{0.5, 5.0};
    std::mt19937_64 rng(1);
    std::vector<double> thetas;
    for (int i = 0; i < 5000; ++i)
    {
        const auto p = bench::sample_params(poly, rng);
        CHECK(p.w < p.v);
        CHECK(p.w > 0.0);
        CHECK(p.v > poly.v_min);
        CHECK(p.v <= poly.v_max);
        CHECK(p.theta < kTwoPi);
        thetas.push_back(p.theta / kTwoPi);
    }

    // Kolmogorov-Smirnov against U(0, 1); 1.63 / sqrt(n) is the 1% critical value
    std::sort(thetas.begin(), thetas.end());
    double dmax = 0.0;
    const double n = static_cast<double>(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i)
    {
        const double k = static_cast<double>(i);
        dmax = std::max({dmax, std::abs((k + 1) / n - thetas[i]), std::abs(thetas[i] - k / n)});
    }
    CHECK(dmax < 1.63 / std::sqrt(n));

    std::mt19937_64 a(9), b(9);
    const auto pa = bench::sample_params(poly, a);
    const auto pb = bench::sample_params(poly, b);
    CHECK(pa.v == pb.v);
    CHECK(pa.w == pb.w);
    CHECK(pa.theta == pb.theta);
}

TEST_CASE("pairwise sum")
{
    CHECK(bench::pairwise_sum({}) == 0.0);
    std::vector<double> xs(1000);
    std::iota(xs.begin(), xs.end(), 1.0);
    CHECK(bench::pairwise_sum(xs) == 500500.0);

    std::vector<double> tenth(1000000, 0.1);
    CHECK(std::abs(bench::pairwise_sum(tenth) - 100000.0) < 1e-8);
}

TEST_CASE("default grid yields thirty cells")
{
    bench::BenchConfig cfg;
    cfg.trials = 1;
    cfg.seed = 4;
    const auto res = bench::run(cfg);
    CHECK(res.cells.size() == 30);
    std::size_t quad = 0;
    for (const auto& c : res.cells)
    {
        CHECK(c.n_ok + c.n_failed == 1);
        if (c.method == bench::Method::Quad)
        {
            ++quad;
            CHECK(bench::is_full_revolution(c.span));
        }
    }
    CHECK(quad == 3);
    CHECK(res.find(bench::Method::OptXy, 0.05, std::numbers::pi) != nullptr);
    CHECK(res.find(bench::Method::Quad, 0.05, std::numbers::pi) == nullptr);
}

TEST_CASE("noise-free trials give near-zero errors")
{
    bench::BenchConfig cfg;
    cfg.sigmas = {0.0};
    cfg.spans = {kTwoPi};
    cfg.trials = 10;
    cfg.seed = 2;
    const auto res = bench::run(cfg);
    for (auto m : {bench::Method::Circle, bench::Method::OptXy, bench::Method::OptVg})
    {
        const auto* c = res.find(m, 0.0, kTwoPi);
        REQUIRE(c != nullptr);
        CHECK(c->n_ok == 10);
        CHECK(c->mean_err_v < 1e-6);
        CHECK(c->mean_err_w < 1e-6);
        CHECK(c->mean_err_theta_deg < 1e-4);
    }
}

TEST_CASE("trials are paired across methods and independent of threading")
{
    bench::BenchConfig cfg;
    cfg.sigmas = {0.05};
    cfg.spans = {kTwoPi, std::numbers::pi};
    cfg.trials = 6;
    cfg.seed = 123;
    cfg.threads = 1;
    const auto one = bench::run(cfg);
    cfg.threads = 3;
    const auto three = bench::run(cfg);
    REQUIRE(one.cells.size() == three.cells.size());
    for (std::size_t i = 0; i < one.cells.size(); ++i)
    {
        CHECK(one.cells[i].mean_err_v == three.cells[i].mean_err_v);
        CHECK(one.cells[i].mean_err_theta_deg == three.cells[i].mean_err_theta_deg);
    }

    const auto* circle = one.find(bench::Method::Circle, 0.05, kTwoPi);
    const auto* vg = one.find(bench::Method::OptVg, 0.05, kTwoPi);
    for (std::size_t t = 0; t < cfg.trials; ++t)
    {
        CHECK(circle->trials[t].truth.v == vg->trials[t].truth.v);
        CHECK(circle->trials[t].truth.theta == vg->trials[t].truth.theta);
    }
    // different spans draw different truths
    const auto* half = one.find(bench::Method::Circle, 0.05, std::numbers::pi);
    CHECK(half->trials[0].truth.v != circle->trials[0].truth.v);
}

TEST_CASE("configuration is validated")
{
    bench::BenchConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(bench::run(cfg), Error);
    cfg = {};
    cfg.spans = {7.0};
    CHECK_THROWS_AS(bench::run(cfg), Error);
    cfg = {};
    cfg.sigmas = {-0.1};
    CHECK_THROWS_AS(bench::run(cfg), Error);
}
