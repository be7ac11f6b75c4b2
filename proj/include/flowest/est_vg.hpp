#ifndef FLOWEST_EST_VG_HPP_
#define FLOWEST_EST_VG_HPP_

#include <Eigen/Dense>

#include "flowest/optim.hpp"
#include "flowest/types.hpp"

namespace flowest::est_vg
{

/// Samples whose squared model speed alpha falls at or below this are dropped.
inline constexpr double kAlphaEpsilon = 1e-12;

/// Per-sample model quantities at one parameter point.
struct AlphaTerm
{
    double alpha = 0.0;     ///< v² + 2vw cos(psi - theta) + w²
    double cos_dpsi = 0.0;  ///< cos(psi - theta)
    double sin_dpsi = 0.0;  ///< sin(psi - theta)
};

AlphaTerm alpha_term(const FlowParams& p, double psi);

/// Number of samples the cost keeps and drops at p.
struct SampleAccounting
{
    std::size_t retained = 0;
    std::size_t excluded = 0;
};

SampleAccounting accounting(const GroundSpeedDataset& d, const FlowParams& p);

/// ½ Σ (vg - sqrt(alpha))² over retained samples. Throws
/// DegenerateParameters if every sample is excluded.
double cost(const GroundSpeedDataset& d, const FlowParams& p);
Eigen::Vector3d gradient(const GroundSpeedDataset& d, const FlowParams& p);
Eigen::Matrix3d hessian(const GroundSpeedDataset& d, const FlowParams& p);

optim::OptProblem problem(const GroundSpeedDataset& d, const Polytope& poly);

/// Multi-start constrained least squares on ground speed and heading.
EstimateReport estimate(const GroundSpeedDataset& d, const Polytope& poly);
EstimateReport estimate(const GroundSpeedDataset& d, const Polytope& poly,
                        const std::vector<FlowParams>& starts);

} // namespace flowest::est_vg

#endif
