#ifndef FLOWEST_BENCH_HPP_
#define FLOWEST_BENCH_HPP_

#include <cstdint>
#include <random>
#include <string>

#include "flowest/quadfit.hpp"
#include "flowest/types.hpp"

namespace flowest::bench
{

enum class Method
{
    Circle,
    Quad,
    OptXy,
    OptVg,
};

/// CLI / report name: circle, quad, opt-xy, opt-vg.
const char* to_string(Method m);

struct BenchConfig
{
    std::vector<double> sigmas{0.01, 0.05, 0.10};
    std::vector<double> spans{kTwoPi, 1.5 * std::numbers::pi, std::numbers::pi};
    std::size_t trials = 250;
    std::size_t n = 100;
    Polytope poly{0.5, 5.0};
    double lambda = quadfit::kDefaultLambda;
    std::uint64_t seed = 0;
    /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
    unsigned threads = 0;

    void validate() const;
};

struct TrialError
{
    std::size_t trial = 0;
    FlowParams truth;
    bool ok = false;
    FlowParams estimate;
    double err_v = 0.0;
    double err_w = 0.0;
    double err_theta_deg = 0.0;
    std::string error;
};

struct CellResult
{
    Method method = Method::Circle;
    double sigma = 0.0;
    double span = 0.0;
    std::size_t n_ok = 0;
    std::size_t n_failed = 0;
    double mean_err_v = 0.0;
    double mean_err_w = 0.0;
    double mean_err_theta_deg = 0.0;
    std::vector<TrialError> trials;
};

struct BenchResult
{
    BenchConfig config;
    /// Ordered by sigma, then span, then method (quad only at a full revolution).
    std::vector<CellResult> cells;

    const CellResult* find(Method m, double sigma, double span) const;
};

/// Uniform draw from the polytope interior by rejection on the bounding box.
FlowParams sample_params(const Polytope& poly, std::mt19937_64& rng);

bool is_full_revolution(double span);

/// Pairwise (cascade) summation, deterministic for a given order.
double pairwise_sum(const std::vector<double>& xs);

BenchResult run(const BenchConfig& cfg);

} // namespace flowest::bench

#endif
