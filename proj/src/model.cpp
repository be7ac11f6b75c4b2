#include "flowest/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace flowest::model
{

std::pair<double, double> forward_velocity(const FlowParams& params, double psi)
{
    return {params.v * std::cos(psi) + params.w * std::cos(params.theta),
            params.v * std::sin(psi) + params.w * std::sin(params.theta)};
}

double forward_ground_speed(const FlowParams& params, double psi)
{
    const double v = params.v;
    const double w = params.w;
    const double alpha = v * v + w * w + 2.0 * v * w * std::cos(params.theta - psi);
    // alpha >= (v - w)² analytically; rounding can push it a hair below zero at v == w
    return std::sqrt(std::max(alpha, 0.0));
}

std::vector<double> heading_schedule(std::size_t n, double delta_psi, double psi0)
{
    std::vector<double> psi(n);
    const bool full = delta_psi >= kTwoPi;
    const double step = full ? delta_psi / static_cast<double>(n)
                             : delta_psi / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        psi[i] = psi0 + step * static_cast<double>(i);
    return psi;
}

VelDataset simulate(const FlowParams& params, const SimulateOptions& opts)
{
    params.validate();
    if (opts.n < 3)
        throw Error(ErrorKind::InvalidArgument, "simulate needs n >= 3");
    if (!(opts.delta_psi > 0.0) || opts.delta_psi > kTwoPi)
        throw Error(ErrorKind::InvalidArgument, "delta_psi must lie in (0, 2π]");
    if (!(opts.sigma >= 0.0) || !(opts.sigma_psi >= 0.0) || !std::isfinite(opts.sigma) ||
        !std::isfinite(opts.sigma_psi) || !std::isfinite(opts.psi0))
        throw Error(ErrorKind::InvalidArgument, "noise levels must be finite and >= 0");

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> unit(0.0, 1.0);

    VelDataset d;
    d.samples.reserve(opts.n);
    for (double psi : heading_schedule(opts.n, opts.delta_psi, opts.psi0))
    {
        auto [xd, yd] = forward_velocity(params, psi);
        // fixed draw order: x noise, y noise, heading noise
        const double ex = unit(rng);
        const double ey = unit(rng);
        const double ep = unit(rng);
        d.samples.push_back({xd + opts.sigma * ex, yd + opts.sigma * ey, psi + opts.sigma_psi * ep});
    }
    d.meta = DatasetMeta{params, opts.sigma, opts.sigma_psi, opts.delta_psi, opts.psi0, opts.seed};
    return d;
}

VelDataset inject_outliers(const VelDataset& d, double frac, double half_width, std::uint64_t seed,
                           std::vector<bool>* outlier_mask)
{
    if (!(frac >= 0.0) || frac > 1.0)
        throw Error(ErrorKind::InvalidArgument, "outlier fraction must lie in [0, 1]");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw Error(ErrorKind::InvalidArgument, "outlier box half-width must be > 0");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(d.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto count = static_cast<std::size_t>(std::llround(frac * static_cast<double>(d.size())));

    VelDataset out = d;
    std::vector<bool> mask(d.size(), false);
    std::uniform_real_distribution<double> box(-half_width, half_width);
    for (std::size_t k = 0; k < count; ++k)
    {
        auto& s = out.samples[idx[k]];
        s.xdot = box(rng);
        s.ydot = box(rng);
        mask[idx[k]] = true;
    }
    if (outlier_mask)
        *outlier_mask = std::move(mask);
    return out;
}

GroundSpeedDataset to_ground_speed(const VelDataset& d)
{
    GroundSpeedDataset out;
    out.samples.reserve(d.size());
    for (const auto& s : d.samples)
        out.samples.push_back({std::hypot(s.xdot, s.ydot), s.psi});
    out.meta = d.meta;
    return out;
}

} // namespace flowest::model
