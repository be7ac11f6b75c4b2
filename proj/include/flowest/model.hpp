#ifndef FLOWEST_MODEL_HPP_
#define FLOWEST_MODEL_HPP_

#include <cstdint>
#include <utility>

#include "flowest/types.hpp"

namespace flowest::model
{

/// Ground velocity (xdot, ydot) of a vehicle heading psi through the flow.
std::pair<double, double> forward_velocity(const FlowParams& params, double psi);

/// Ground speed sqrt(v² + w² + 2vw cos(theta - psi)).
double forward_ground_speed(const FlowParams& params, double psi);

struct SimulateOptions
{
    std::size_t n = 100;
    double delta_psi = kTwoPi;
    double sigma = 0.0;     ///< std of additive velocity noise, m/s
    double sigma_psi = 0.0; ///< std of reported-heading noise, rad
    double psi0 = 0.0;      ///< first heading of the maneuver
    std::uint64_t seed = 0;
};

/// Headings used by simulate() before heading noise: n values from psi0
/// across delta_psi. A full revolution uses spacing delta_psi/n so the
/// first and last heading are distinct; shorter spans include both ends.
std::vector<double> heading_schedule(std::size_t n, double delta_psi, double psi0);

/**
 * Synthetic heading-change maneuver.
 *
 * Velocity components come from forward_velocity at the true heading plus
 * independent N(0, sigma²) noise; the reported heading carries N(0, sigma_psi²)
 * noise. Deterministic for a fixed seed.
 */
VelDataset simulate(const FlowParams& params, const SimulateOptions& opts);

/**
 * Replace round(frac * n) randomly chosen samples by gross outliers drawn
 * uniformly from the velocity box [-half_width, half_width]². Headings are
 * kept. Returns the corrupted dataset; outlier_mask (if given) marks the
 * replaced rows.
 */
VelDataset inject_outliers(const VelDataset& d, double frac, double half_width, std::uint64_t seed,
                           std::vector<bool>* outlier_mask = nullptr);

/// v_g = |(xdot, ydot)| per sample, headings carried over.
GroundSpeedDataset to_ground_speed(const VelDataset& d);

} // namespace flowest::model

#endif
