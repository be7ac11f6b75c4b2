#include "flowest/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "flowest/angles.hpp"
#include "flowest/circlefit.hpp"
#include "flowest/est_vg.hpp"
#include "flowest/est_xy.hpp"
#include "flowest/model.hpp"

namespace flowest::bench
{

const char* to_string(Method m)
{
    switch (m)
    {
    case Method::Circle: return "circle";
    case Method::Quad: return "quad";
    case Method::OptXy: return "opt-xy";
    case Method::OptVg: return "opt-vg";
    }
    return "unknown";
}

void BenchConfig::validate() const
{
    poly.validate();
    if (trials < 1)
        throw Error(ErrorKind::InvalidArgument, "benchmark needs at least one trial");
    if (n < 3)
        throw Error(ErrorKind::InvalidArgument, "benchmark datasets need n >= 3");
    if (sigmas.empty() || spans.empty())
        throw Error(ErrorKind::InvalidArgument, "benchmark grid must be non-empty");
    for (double s : sigmas)
        if (!(s >= 0.0) || !std::isfinite(s))
            throw Error(ErrorKind::InvalidArgument, "noise levels must be finite and >= 0");
    for (double s : spans)
        if (!(s > 0.0) || s > kTwoPi + 1e-12)
            throw Error(ErrorKind::InvalidArgument, "heading spans must lie in (0, 2π]");
    if (!(lambda > 0.0))
        throw Error(ErrorKind::InvalidArgument, "quadratic-fit window must be > 0");
}

const CellResult* BenchResult::find(Method m, double sigma, double span) const
{
    for (const auto& c : cells)
        if (c.method == m && c.sigma == sigma && c.span == span)
            return &c;
    return nullptr;
}

FlowParams sample_params(const Polytope& poly, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> vdist(poly.v_min, poly.v_max);
    std::uniform_real_distribution<double> wdist(0.0, poly.v_max);
    std::uniform_real_distribution<double> tdist(0.0, kTwoPi);
    for (;;)
    {
        const double v = vdist(rng);
        const double w = wdist(rng);
        const double theta = tdist(rng);
        if (v > poly.v_min && w > 0.0 && w < v && theta > 0.0)
            return {v, w, theta};
    }
}

bool is_full_revolution(double span)
{
    return std::abs(span - kTwoPi) < 1e-9;
}

double pairwise_sum(const std::vector<double>& xs)
{
    auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> double {
        if (hi - lo <= 8)
        {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i)
                s += xs[i];
            return s;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        return self(self, lo, mid) + self(self, mid, hi);
    };
    return rec(rec, 0, xs.size());
}

namespace
{

std::vector<Method> methods_for(double span)
{
    if (is_full_revolution(span))
        return {Method::Circle, Method::Quad, Method::OptXy, Method::OptVg};
    return {Method::Circle, Method::OptXy, Method::OptVg};
}

EstimateReport run_method(Method m, const VelDataset& vel, const GroundSpeedDataset& gs,
                          const BenchConfig& cfg)
{
    switch (m)
    {
    case Method::Circle: return circlefit::fit(vel);
    case Method::Quad: return quadfit::fit(gs, cfg.lambda);
    case Method::OptXy: return est_xy::estimate(vel, cfg.poly);
    case Method::OptVg: return est_vg::estimate(gs, cfg.poly);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown method");
}

struct Job
{
    std::size_t sigma_index;
    std::size_t span_index;
    std::size_t trial;
};

/// One trial: the same dataset goes to every method of the cell group.
std::vector<TrialError> run_trial(const BenchConfig& cfg, const Job& job,
                                  const std::vector<Method>& methods)
{
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(job.sigma_index),
                      static_cast<std::uint32_t>(job.span_index),
                      static_cast<std::uint32_t>(job.trial)};
    std::mt19937_64 rng(seq);
    const auto truth = sample_params(cfg.poly, rng);

    model::SimulateOptions opts;
    opts.n = cfg.n;
    opts.delta_psi = cfg.spans[job.span_index];
    opts.sigma = cfg.sigmas[job.sigma_index];
    opts.seed = rng();
    const auto vel = model::simulate(truth, opts);
    const auto gs = model::to_ground_speed(vel);

    std::vector<TrialError> out;
    for (Method m : methods)
    {
        TrialError e;
        e.trial = job.trial;
        e.truth = truth;
        try
        {
            const auto rep = run_method(m, vel, gs, cfg);
            e.ok = true;
            e.estimate = rep.params;
            e.err_v = std::abs(rep.params.v - truth.v);
            e.err_w = std::abs(rep.params.w - truth.w);
            e.err_theta_deg = std::abs(rad2deg(wrapped_diff(rep.params.theta, truth.theta)));
        }
        catch (const std::exception& ex)
        {
            e.error = ex.what();
        }
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

BenchResult run(const BenchConfig& cfg)
{
    cfg.validate();

    std::vector<Job> jobs;
    for (std::size_t si = 0; si < cfg.sigmas.size(); ++si)
        for (std::size_t di = 0; di < cfg.spans.size(); ++di)
            for (std::size_t t = 0; t < cfg.trials; ++t)
                jobs.push_back({si, di, t});

    std::vector<std::vector<TrialError>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++)
            results[j] = run_trial(cfg, jobs[j], methods_for(cfg.spans[jobs[j].span_index]));
    };

    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
    if (threads <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    BenchResult res;
    res.config = cfg;
    std::size_t job = 0;
    for (std::size_t si = 0; si < cfg.sigmas.size(); ++si)
    {
        for (std::size_t di = 0; di < cfg.spans.size(); ++di)
        {
            const auto methods = methods_for(cfg.spans[di]);
            const std::size_t first_job = job;
            for (std::size_t mi = 0; mi < methods.size(); ++mi)
            {
                CellResult cell;
                cell.method = methods[mi];
                cell.sigma = cfg.sigmas[si];
                cell.span = cfg.spans[di];
                std::vector<double> ev, ew, et;
                for (std::size_t t = 0; t < cfg.trials; ++t)
                {
                    const auto& e = results[first_job + t][mi];
                    if (e.ok)
                    {
                        ev.push_back(e.err_v);
                        ew.push_back(e.err_w);
                        et.push_back(e.err_theta_deg);
                    }
                    cell.trials.push_back(e);
                }
                cell.n_ok = ev.size();
                cell.n_failed = cfg.trials - ev.size();
                if (cell.n_ok > 0)
                {
                    const double k = static_cast<double>(cell.n_ok);
                    cell.mean_err_v = pairwise_sum(ev) / k;
                    cell.mean_err_w = pairwise_sum(ew) / k;
                    cell.mean_err_theta_deg = pairwise_sum(et) / k;
                }
                else
                {
                    cell.mean_err_v = cell.mean_err_w = cell.mean_err_theta_deg =
                        std::numeric_limits<double>::quiet_NaN();
                }
                res.cells.push_back(std::move(cell));
            }
            job += cfg.trials;
        }
    }
    return res;
}

} // namespace flowest::bench
