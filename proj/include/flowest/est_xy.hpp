#ifndef FLOWEST_EST_XY_HPP_
#define FLOWEST_EST_XY_HPP_

#include <Eigen/Dense>

#include "flowest/optim.hpp"
#include "flowest/types.hpp"

namespace flowest::est_xy
{

/**
 * Data sums that make the (xdot, ydot, psi) least-squares cost a closed-form
 * function of the parameters:
 *
 *   k1 = Σ xdot        k2 = Σ ydot        k3 = Σ xdot²         k4 = Σ ydot²
 *   k5 = Σ cos psi     k6 = Σ sin psi     k7 = Σ xdot cos psi  k8 = Σ ydot sin psi
 */
struct SufficientStats
{
    double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0;
    double k5 = 0.0, k6 = 0.0, k7 = 0.0, k8 = 0.0;
    std::size_t n = 0;

    SufficientStats& operator+=(const SufficientStats& o);
};

SufficientStats stats(const VelDataset& d);

/// ½ Σ [(xdot - f_x)² + (ydot - f_y)²] evaluated through the sums.
double cost(const SufficientStats& s, const FlowParams& p);
Eigen::Vector3d gradient(const SufficientStats& s, const FlowParams& p);
Eigen::Matrix3d hessian(const SufficientStats& s, const FlowParams& p);

/// Same cost summed sample by sample.
double direct_cost(const VelDataset& d, const FlowParams& p);

optim::OptProblem problem(const SufficientStats& s, const Polytope& poly);

/// Multi-start constrained least squares on velocity components and heading.
EstimateReport estimate(const VelDataset& d, const Polytope& poly);
EstimateReport estimate(const VelDataset& d, const Polytope& poly,
                        const std::vector<FlowParams>& starts);

} // namespace flowest::est_xy

#endif
