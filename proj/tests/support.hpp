#ifndef FLOWEST_TESTS_SUPPORT_HPP_
#define FLOWEST_TESTS_SUPPORT_HPP_

// Independent oracles for the test suites. Nothing here calls into the
// estimator code paths it is used to check.

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "flowest/types.hpp"

namespace flowest::testing
{

inline double wrapped_abs_diff(double a, double b)
{
    return std::abs(std::atan2(std::sin(a - b), std::cos(a - b)));
}

/// Plain scalar evaluation of the kinematic model.
inline double oracle_xdot(double v, double w, double theta, double psi)
{
    return v * std::cos(psi) + w * std::cos(theta);
}
inline double oracle_ydot(double v, double w, double theta, double psi)
{
    return v * std::sin(psi) + w * std::sin(theta);
}
inline double oracle_vg(double v, double w, double theta, double psi)
{
    return std::sqrt(v * v + w * w + 2.0 * v * w * std::cos(theta - psi));
}

/// ½ Σ residual², computed sample by sample.
inline double brute_xy_cost(const VelDataset& d, const FlowParams& p)
{
    double j = 0.0;
    for (const auto& s : d.samples)
    {
        const double rx = s.xdot - oracle_xdot(p.v, p.w, p.theta, s.psi);
        const double ry = s.ydot - oracle_ydot(p.v, p.w, p.theta, s.psi);
        j += 0.5 * (rx * rx + ry * ry);
    }
    return j;
}

inline double brute_vg_cost(const GroundSpeedDataset& d, const FlowParams& p)
{
    double j = 0.0;
    for (const auto& s : d.samples)
    {
        const double r = s.vg - oracle_vg(p.v, p.w, p.theta, s.psi);
        j += 0.5 * r * r;
    }
    return j;
}

/// Uniform point with v in [v_lo, v_hi], w in [w_frac_lo·v, w_frac_hi·v], theta in [0, 2π).
inline FlowParams random_params(std::mt19937_64& rng, double v_lo = 0.6, double v_hi = 4.9,
                                double w_frac_lo = 0.02, double w_frac_hi = 0.95)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double v = v_lo + (v_hi - v_lo) * u(rng);
    const double w = v * (w_frac_lo + (w_frac_hi - w_frac_lo) * u(rng));
    return {v, w, kTwoPi * u(rng)};
}

/// Noisy velocity dataset built without model::simulate.
inline VelDataset random_vel_dataset(std::mt19937_64& rng, std::size_t n, const FlowParams& truth,
                                     double sigma)
{
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> head(0.0, kTwoPi);
    VelDataset d;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double psi = head(rng);
        d.samples.push_back({oracle_xdot(truth.v, truth.w, truth.theta, psi) + sigma * noise(rng),
                             oracle_ydot(truth.v, truth.w, truth.theta, psi) + sigma * noise(rng), psi});
    }
    return d;
}

inline GroundSpeedDataset random_vg_dataset(std::mt19937_64& rng, std::size_t n, const FlowParams& truth,
                                            double sigma)
{
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> head(0.0, kTwoPi);
    GroundSpeedDataset d;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double psi = head(rng);
        d.samples.push_back({std::abs(oracle_vg(truth.v, truth.w, truth.theta, psi) + sigma * noise(rng)), psi});
    }
    return d;
}

using ScalarFn = std::function<double(const FlowParams&)>;
using VectorFn = std::function<Eigen::Vector3d(const FlowParams&)>;

inline FlowParams shifted(FlowParams p, int k, double h)
{
    if (k == 0)
        p.v += h;
    else if (k == 1)
        p.w += h;
    else
        p.theta += h;
    return p;
}

inline double coord(const FlowParams& p, int k)
{
    return k == 0 ? p.v : (k == 1 ? p.w : p.theta);
}

/// Central differences with step 1e-6 scaled by max(1, |x_k|).
inline Eigen::Vector3d fd_gradient(const ScalarFn& f, const FlowParams& p)
{
    Eigen::Vector3d g;
    for (int k = 0; k < 3; ++k)
    {
        const double h = 1e-6 * std::max(1.0, std::abs(coord(p, k)));
        g(k) = (f(shifted(p, k, h)) - f(shifted(p, k, -h))) / (2.0 * h);
    }
    return g;
}

inline Eigen::Matrix3d fd_hessian(const VectorFn& grad, const FlowParams& p)
{
    Eigen::Matrix3d H;
    for (int k = 0; k < 3; ++k)
    {
        const double h = 1e-6 * std::max(1.0, std::abs(coord(p, k)));
        H.col(k) = (grad(shifted(p, k, h)) - grad(shifted(p, k, -h))) / (2.0 * h);
    }
    return H;
}

inline double gradient_rel_error(const Eigen::Vector3d& analytic, const Eigen::Vector3d& fd)
{
    return (analytic - fd).norm() / (1.0 + fd.norm());
}

inline double hessian_max_entry_error(const Eigen::Matrix3d& analytic, const Eigen::Matrix3d& fd)
{
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, std::abs(analytic(i, j) - fd(i, j)) / (1.0 + std::abs(fd(i, j))));
    return worst;
}

} // namespace flowest::testing

#endif
