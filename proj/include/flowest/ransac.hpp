#ifndef FLOWEST_RANSAC_HPP_
#define FLOWEST_RANSAC_HPP_

#include <cstdint>
#include <optional>

#include "flowest/types.hpp"

namespace flowest::ransac
{

struct RansacConfig
{
    std::size_t iterations = 100;
    std::size_t min_sample = 10;
    /// Residual bound for inliers; unset means 3 × 1.4826 × median residual
    /// of the candidate with the smallest median residual.
    std::optional<double> inlier_threshold;
    double min_inliers_frac = 0.5;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Floor on the automatic threshold so noise-free inliers are not rejected over rounding.
inline constexpr double kMinAutoThreshold = 1e-6;

/// |(xdot, ydot) - forward_velocity(p, psi)|
double residual(const VelSample& s, const FlowParams& p);
/// |vg - forward_ground_speed(p, psi)|
double residual(const GroundSpeedSample& s, const FlowParams& p);

/**
 * Random sample consensus around the optimization estimators.
 *
 * Candidates are fitted from the polytope centroid on min_sample random
 * samples; the candidate with the largest inlier set (ties to the earliest)
 * wins and the estimator is rerun with all start points on its inliers.
 * Velocity data uses est_xy, ground-speed data uses est_vg.
 */
EstimateReport robust_estimate(const VelDataset& d, const RansacConfig& cfg, const Polytope& poly);
EstimateReport robust_estimate(const GroundSpeedDataset& d, const RansacConfig& cfg,
                               const Polytope& poly);

/// Sizes of the consensus set for every candidate at a fixed threshold;
/// failed candidates report 0. Exposed for tests of threshold monotonicity.
template <typename Sample>
std::vector<std::size_t> consensus_sizes(const Dataset<Sample>& d, const RansacConfig& cfg,
                                         const Polytope& poly, double threshold);

} // namespace flowest::ransac

#endif
