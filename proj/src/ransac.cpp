#include "flowest/ransac.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "flowest/est_vg.hpp"
#include "flowest/est_xy.hpp"
#include "flowest/model.hpp"
#include "flowest/optim.hpp"

namespace flowest::ransac
{

void RansacConfig::validate() const
{
    if (min_sample < 3)
        throw Error(ErrorKind::InvalidArgument, "RANSAC min_sample must be >= 3");
    if (iterations == 0)
        throw Error(ErrorKind::InvalidArgument, "RANSAC needs at least one iteration");
    if (!(min_inliers_frac > 0.0) || min_inliers_frac > 1.0)
        throw Error(ErrorKind::InvalidArgument, "RANSAC min_inliers_frac must lie in (0, 1]");
    if (inlier_threshold && !(*inlier_threshold >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "RANSAC inlier threshold must be >= 0");
}

double residual(const VelSample& s, const FlowParams& p)
{
    const auto [fx, fy] = model::forward_velocity(p, s.psi);
    return std::hypot(s.xdot - fx, s.ydot - fy);
}

double residual(const GroundSpeedSample& s, const FlowParams& p)
{
    return std::abs(s.vg - model::forward_ground_speed(p, s.psi));
}

namespace
{

EstimateReport run_estimator(const VelDataset& d, const Polytope& poly,
                             const std::vector<FlowParams>& starts)
{
    return est_xy::estimate(d, poly, starts);
}

EstimateReport run_estimator(const GroundSpeedDataset& d, const Polytope& poly,
                             const std::vector<FlowParams>& starts)
{
    return est_vg::estimate(d, poly, starts);
}

template <typename Sample>
Dataset<Sample> subset(const Dataset<Sample>& d, const std::vector<std::size_t>& idx)
{
    Dataset<Sample> out;
    out.samples.reserve(idx.size());
    for (std::size_t i : idx)
        out.samples.push_back(d.samples[i]);
    out.meta = d.meta;
    return out;
}

struct Candidate
{
    bool ok = false;
    std::vector<double> residuals;
};

/// All candidate fits in draw order; the draw sequence depends only on the seed.
template <typename Sample>
std::vector<Candidate> candidates(const Dataset<Sample>& d, const RansacConfig& cfg,
                                  const Polytope& poly)
{
    cfg.validate();
    poly.validate();
    if (d.size() < cfg.min_sample)
        throw Error(ErrorKind::InsufficientData, "dataset is smaller than the RANSAC minimal sample");

    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> all(d.size());
    std::iota(all.begin(), all.end(), 0);
    const std::vector<FlowParams> centroid_start{optim::centroid(poly)};

    std::vector<Candidate> out(cfg.iterations);
    for (std::size_t it = 0; it < cfg.iterations; ++it)
    {
        // partial Fisher-Yates: first min_sample entries become the draw
        for (std::size_t k = 0; k < cfg.min_sample; ++k)
        {
            std::uniform_int_distribution<std::size_t> pick(k, all.size() - 1);
            std::swap(all[k], all[pick(rng)]);
        }
        std::vector<std::size_t> draw(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cfg.min_sample));
        std::sort(draw.begin(), draw.end());

        try
        {
            const auto rep = run_estimator(subset(d, draw), poly, centroid_start);
            auto& c = out[it];
            c.residuals.reserve(d.size());
            for (const auto& s : d.samples)
                c.residuals.push_back(residual(s, rep.params));
            c.ok = true;
        }
        catch (const Error&)
        {
            // degenerate draw; the candidate simply gets no vote
        }
    }
    return out;
}

double median(std::vector<double> xs)
{
    const auto mid = xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2);
    std::nth_element(xs.begin(), mid, xs.end());
    if (xs.size() % 2 == 1)
        return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(xs.begin(), mid);
    return 0.5 * (lower + upper);
}

std::size_t count_within(const std::vector<double>& r, double threshold)
{
    return static_cast<std::size_t>(
        std::count_if(r.begin(), r.end(), [&](double x) { return x <= threshold; }));
}

template <typename Sample>
EstimateReport robust_estimate_impl(const Dataset<Sample>& d, const RansacConfig& cfg,
                                    const Polytope& poly)
{
    const auto cands = candidates(d, cfg, poly);

    double threshold = 0.0;
    if (cfg.inlier_threshold)
    {
        threshold = *cfg.inlier_threshold;
    }
    else
    {
        double best_median = std::numeric_limits<double>::infinity();
        for (const auto& c : cands)
            if (c.ok)
                best_median = std::min(best_median, median(c.residuals));
        if (!std::isfinite(best_median))
            throw Error(ErrorKind::ConsensusFailure, "every RANSAC candidate fit failed");
        threshold = std::max(3.0 * 1.4826 * best_median, kMinAutoThreshold);
    }

    std::size_t best = cands.size();
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < cands.size(); ++i)
    {
        if (!cands[i].ok)
            continue;
        const std::size_t count = count_within(cands[i].residuals, threshold);
        if (best == cands.size() || count > best_count)
        {
            best = i;
            best_count = count;
        }
    }

    const auto needed = static_cast<std::size_t>(
        std::ceil(cfg.min_inliers_frac * static_cast<double>(d.size()) - 1e-12));
    if (best == cands.size() || best_count < std::max<std::size_t>(needed, 3))
        throw Error(ErrorKind::ConsensusFailure,
                    "largest consensus set (" + std::to_string(best_count) + " of " +
                        std::to_string(d.size()) + ") is below the required inlier fraction");

    std::vector<bool> mask(d.size());
    std::vector<std::size_t> inliers;
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        mask[i] = cands[best].residuals[i] <= threshold;
        if (mask[i])
            inliers.push_back(i);
    }

    auto rep = run_estimator(subset(d, inliers), poly, optim::start_points(poly));
    rep.method += "+ransac";
    rep.n_excluded += d.size() - inliers.size();
    rep.inlier_mask = std::move(mask);
    rep.inlier_threshold = threshold;
    return rep;
}

} // namespace

EstimateReport robust_estimate(const VelDataset& d, const RansacConfig& cfg, const Polytope& poly)
{
    return robust_estimate_impl(d, cfg, poly);
}

EstimateReport robust_estimate(const GroundSpeedDataset& d, const RansacConfig& cfg,
                               const Polytope& poly)
{
    return robust_estimate_impl(d, cfg, poly);
}

template <typename Sample>
std::vector<std::size_t> consensus_sizes(const Dataset<Sample>& d, const RansacConfig& cfg,
                                         const Polytope& poly, double threshold)
{
    std::vector<std::size_t> sizes;
    for (const auto& c : candidates(d, cfg, poly))
        sizes.push_back(c.ok ? count_within(c.residuals, threshold) : 0);
    return sizes;
}

template std::vector<std::size_t> consensus_sizes(const VelDataset&, const RansacConfig&,
                                                  const Polytope&, double);
template std::vector<std::size_t> consensus_sizes(const GroundSpeedDataset&, const RansacConfig&,
                                                  const Polytope&, double);

} // namespace flowest::ransac
