#include "flowest/circlefit.hpp"

#include <cmath>

#include "flowest/angles.hpp"

namespace flowest::circlefit
{

LinearSystem build_system(const VelDataset& d)
{
    const auto n = static_cast<Eigen::Index>(d.size());
    if (n < 3)
        throw Error(ErrorKind::InsufficientData, "circle fit needs at least 3 samples");

    LinearSystem sys{Eigen::MatrixXd(n, 3), Eigen::VectorXd(n)};
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const auto& s = d.samples[static_cast<std::size_t>(i)];
        sys.A(i, 0) = s.xdot;
        sys.A(i, 1) = s.ydot;
        sys.A(i, 2) = 1.0;
        sys.b(i) = -s.xdot * s.xdot - s.ydot * s.ydot;
    }
    return sys;
}

CircleCoeffs solve(const LinearSystem& sys)
{
    if (sys.A.rows() < 3)
        throw Error(ErrorKind::InsufficientData, "circle fit needs at least 3 samples");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (!(sv(2) > 0.0) || sv(0) / sv(2) > kMaxCondition)
        throw Error(ErrorKind::DegenerateGeometry,
                    "ground velocities are collinear (circle system is rank deficient)");

    const Eigen::Vector3d c = svd.solve(sys.b);
    return {c(0), c(1), c(2)};
}

FlowParams recover(const CircleCoeffs& c, bool* direction_indeterminate)
{
    const double r2 = c.radius_sq();
    if (!(r2 >= 0.0))
        throw Error(ErrorKind::DegenerateGeometry, "fitted circle has a negative squared radius");

    // center of the circle is (wx, wy) = (-c1/2, -c2/2)
    FlowParams p;
    p.w = 0.5 * std::hypot(c.c1, c.c2);
    p.v = std::sqrt(r2);
    const bool indeterminate = p.w < kIndeterminateRatio * p.v;
    p.theta = indeterminate ? 0.0 : wrap_2pi(std::atan2(-c.c2, -c.c1));
    if (direction_indeterminate)
        *direction_indeterminate = indeterminate;
    return p;
}

EstimateReport fit(const VelDataset& d)
{
    const auto sys = build_system(d);
    const auto c = solve(sys);

    EstimateReport rep;
    rep.method = "circle";
    rep.params = recover(c, &rep.direction_indeterminate);
    const Eigen::Vector3d cv(c.c1, c.c2, c.c3);
    rep.cost = (sys.A * cv - sys.b).squaredNorm();
    rep.n_used = d.size();
    return rep;
}

} // namespace flowest::circlefit
