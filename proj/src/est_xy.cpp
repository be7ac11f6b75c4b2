#include "flowest/est_xy.hpp"

#include <cmath>

#include "flowest/angles.hpp"
#include "flowest/model.hpp"
#include "report_util.hpp"

namespace flowest::est_xy
{

SufficientStats& SufficientStats::operator+=(const SufficientStats& o)
{
    k1 += o.k1;
    k2 += o.k2;
    k3 += o.k3;
    k4 += o.k4;
    k5 += o.k5;
    k6 += o.k6;
    k7 += o.k7;
    k8 += o.k8;
    n += o.n;
    return *this;
}

SufficientStats stats(const VelDataset& d)
{
    if (d.empty())
        throw Error(ErrorKind::InsufficientData, "sufficient statistics need a non-empty dataset");

    SufficientStats s;
    for (const auto& smp : d.samples)
    {
        const double c = std::cos(smp.psi);
        const double sn = std::sin(smp.psi);
        s.k1 += smp.xdot;
        s.k2 += smp.ydot;
        s.k3 += smp.xdot * smp.xdot;
        s.k4 += smp.ydot * smp.ydot;
        s.k5 += c;
        s.k6 += sn;
        s.k7 += smp.xdot * c;
        s.k8 += smp.ydot * sn;
    }
    s.n = d.size();
    return s;
}

double cost(const SufficientStats& s, const FlowParams& p)
{
    const double n = static_cast<double>(s.n);
    const double ct = std::cos(p.theta);
    const double st = std::sin(p.theta);
    const double v = p.v;
    const double w = p.w;
    return 0.5 * n * v * v + 0.5 * n * w * w + 0.5 * s.k3 + 0.5 * s.k4 - s.k1 * w * ct -
           s.k2 * w * st - (s.k7 + s.k8) * v + s.k5 * v * w * ct + s.k6 * v * w * st;
}

Eigen::Vector3d gradient(const SufficientStats& s, const FlowParams& p)
{
    const double n = static_cast<double>(s.n);
    const double ct = std::cos(p.theta);
    const double st = std::sin(p.theta);
    const double v = p.v;
    const double w = p.w;
    return {n * v - s.k7 - s.k8 + s.k5 * w * ct + s.k6 * w * st,
            n * w + (s.k5 * v - s.k1) * ct + (s.k6 * v - s.k2) * st,
            (s.k1 - s.k5 * v) * w * st + (s.k6 * v - s.k2) * w * ct};
}

Eigen::Matrix3d hessian(const SufficientStats& s, const FlowParams& p)
{
    const double n = static_cast<double>(s.n);
    const double ct = std::cos(p.theta);
    const double st = std::sin(p.theta);
    const double v = p.v;
    const double w = p.w;

    const double hvw = s.k5 * ct + s.k6 * st;
    const double hvt = s.k6 * w * ct - s.k5 * w * st;
    const double hwt = (s.k1 - s.k5 * v) * st + (s.k6 * v - s.k2) * ct;
    const double htt = (s.k1 - s.k5 * v) * w * ct + (s.k2 - s.k6 * v) * w * st;

    Eigen::Matrix3d H;
    H << n, hvw, hvt,
         hvw, n, hwt,
         hvt, hwt, htt;
    return H;
}

double direct_cost(const VelDataset& d, const FlowParams& p)
{
    double j = 0.0;
    for (const auto& smp : d.samples)
    {
        const auto [fx, fy] = model::forward_velocity(p, smp.psi);
        const double rx = smp.xdot - fx;
        const double ry = smp.ydot - fy;
        j += rx * rx + ry * ry;
    }
    return 0.5 * j;
}

optim::OptProblem problem(const SufficientStats& s, const Polytope& poly)
{
    return {[s](const FlowParams& p) { return cost(s, p); },
            [s](const FlowParams& p) { return gradient(s, p); },
            [s](const FlowParams& p) { return hessian(s, p); }, poly};
}

EstimateReport estimate(const VelDataset& d, const Polytope& poly)
{
    return estimate(d, poly, optim::start_points(poly));
}

EstimateReport estimate(const VelDataset& d, const Polytope& poly,
                        const std::vector<FlowParams>& starts)
{
    if (d.size() < 3)
        throw Error(ErrorKind::InsufficientData, "estimation needs at least 3 samples");
    poly.validate();

    const auto s = stats(d);
    const auto res = optim::minimize(problem(s, poly), starts);

    auto rep = detail::report_from(res, "opt-xy");
    rep.n_used = d.size();
    return rep;
}

} // namespace flowest::est_xy
