#ifndef FLOWEST_OPTIM_HPP_
#define FLOWEST_OPTIM_HPP_

#include <functional>

#include <Eigen/Dense>

#include "flowest/types.hpp"

namespace flowest::optim
{

/**
 * Smooth cost over (v, w, theta) with analytical first and second
 * derivatives, restricted to a Polytope. Callbacks must be pure.
 */
struct OptProblem
{
    std::function<double(const FlowParams&)> cost;
    std::function<Eigen::Vector3d(const FlowParams&)> gradient;
    std::function<Eigen::Matrix3d(const FlowParams&)> hessian;
    Polytope constraints;
};

struct OptResult
{
    FlowParams params;
    double cost = 0.0;
    bool converged = false;
    int iterations = 0;
    FlowParams start_point;
    std::size_t start_index = 0;
    std::vector<StartDiagnostic> starts;
};

/**
 * Log-barrier schedule and Newton settings. Defaults: barrier weight from
 * 1 down by a factor of 10 while it stays >= 1e-9, gradient tolerance 1e-9,
 * 200 Newton steps per stage and 2000 per start. A converged schedule is
 * followed by up to polish_iterations feasible Newton steps on the bare cost.
 */
struct Settings
{
    double mu_initial = 1.0;
    double mu_factor = 0.1;
    double mu_final = 1e-9;
    double grad_tol = 1e-9;
    int max_stage_iterations = 200;
    int max_start_iterations = 2000;
    int polish_iterations = 50;
};

/// Raised when no start converges; carries what every start did.
class OptimizationError : public Error
{
public:
    OptimizationError(const std::string& what, std::vector<StartDiagnostic> starts)
        : Error(ErrorKind::OptimizationFailure, what), starts_(std::move(starts))
    {
    }

    const std::vector<StartDiagnostic>& starts() const noexcept { return starts_; }

private:
    std::vector<StartDiagnostic> starts_;
};

/// Feasibility tolerance applied to every returned point.
inline constexpr double kFeasibilityTol = 1e-8;

/// Distance a start point is pushed inside the polytope, relative to v_max - v_min.
inline constexpr double kStartMargin = 1e-3;

/// The eight polytope corners nudged strictly inside, followed by the centroid.
std::vector<FlowParams> start_points(const Polytope& p);

/// Centroid of the eight polytope corners.
FlowParams centroid(const Polytope& p);

/**
 * Multi-start interior-point Newton minimization.
 *
 * Every start runs the barrier schedule independently; the result with the
 * lowest unbarriered cost wins, ties going to the lower start index. Throws
 * OptimizationError when no start converges to a feasible point.
 */
OptResult minimize(const OptProblem& prob, const std::vector<FlowParams>& starts,
                   const Settings& settings = {});

} // namespace flowest::optim

#endif
