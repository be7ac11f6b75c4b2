#ifndef FLOWEST_CIRCLEFIT_HPP_
#define FLOWEST_CIRCLEFIT_HPP_

#include <Eigen/Dense>

#include "flowest/types.hpp"

namespace flowest::circlefit
{

/// c = [-2 wx, -2 wy, -v² + wx² + wy²]
struct CircleCoeffs
{
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    /// (c1² + c2²)/4 - c3, the squared radius of the fitted circle.
    double radius_sq() const { return 0.25 * (c1 * c1 + c2 * c2) - c3; }
};

struct LinearSystem
{
    Eigen::MatrixXd A; ///< rows [xdot, ydot, 1]
    Eigen::VectorXd b; ///< -xdot² - ydot²
};

/// Condition number above which the ground velocities are treated as collinear.
inline constexpr double kMaxCondition = 1e10;

/// Relative current magnitude below which the direction is reported as indeterminate.
inline constexpr double kIndeterminateRatio = 1e-9;

LinearSystem build_system(const VelDataset& d);

/// Least-squares circle coefficients. Throws DegenerateGeometry when A is
/// numerically rank deficient.
CircleCoeffs solve(const LinearSystem& sys);

/// (v, w, theta) from circle coefficients. Throws DegenerateGeometry when the
/// radius argument is negative.
FlowParams recover(const CircleCoeffs& c, bool* direction_indeterminate = nullptr);

/// Algebraic circle fit on the (xdot, ydot) columns; headings are ignored.
EstimateReport fit(const VelDataset& d);

} // namespace flowest::circlefit

#endif
