#include "flowest/est_vg.hpp"

#include <cmath>

#include "report_util.hpp"

namespace flowest::est_vg
{

AlphaTerm alpha_term(const FlowParams& p, double psi)
{
    AlphaTerm t;
    t.cos_dpsi = std::cos(psi - p.theta);
    t.sin_dpsi = std::sin(psi - p.theta);
    t.alpha = p.v * p.v + 2.0 * t.cos_dpsi * p.v * p.w + p.w * p.w;
    return t;
}

SampleAccounting accounting(const GroundSpeedDataset& d, const FlowParams& p)
{
    SampleAccounting a;
    for (const auto& s : d.samples)
    {
        if (alpha_term(p, s.psi).alpha > kAlphaEpsilon)
            ++a.retained;
        else
            ++a.excluded;
    }
    return a;
}

namespace
{

void require_retained(std::size_t retained)
{
    if (retained == 0)
        throw Error(ErrorKind::DegenerateParameters,
                    "every sample has zero model ground speed at these parameters");
}

} // namespace

double cost(const GroundSpeedDataset& d, const FlowParams& p)
{
    double j = 0.0;
    std::size_t retained = 0;
    for (const auto& s : d.samples)
    {
        const auto t = alpha_term(p, s.psi);
        if (t.alpha <= kAlphaEpsilon)
            continue;
        const double r = s.vg - std::sqrt(t.alpha);
        j += r * r;
        ++retained;
    }
    require_retained(retained);
    return 0.5 * j;
}

// With s = sqrt(alpha) and r = vg - s:
//   dJ/dp      = -Σ r ds/dp,                 ds/dp = alpha_p / (2 s)
//   d²J/dp dq  =  Σ ds/dp ds/dq - r d²s/dpdq, d²s/dpdq = alpha_pq/(2s) - alpha_p alpha_q/(4 s³)
Eigen::Vector3d gradient(const GroundSpeedDataset& d, const FlowParams& p)
{
    const double v = p.v;
    const double w = p.w;
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    std::size_t retained = 0;
    for (const auto& s : d.samples)
    {
        const auto t = alpha_term(p, s.psi);
        if (t.alpha <= kAlphaEpsilon)
            continue;
        const double root = std::sqrt(t.alpha);
        const double k = -(s.vg - root) / (2.0 * root);
        g(0) += k * (2.0 * v + 2.0 * w * t.cos_dpsi);
        g(1) += k * (2.0 * w + 2.0 * v * t.cos_dpsi);
        g(2) += k * (2.0 * v * w * t.sin_dpsi);
        ++retained;
    }
    require_retained(retained);
    return g;
}

Eigen::Matrix3d hessian(const GroundSpeedDataset& d, const FlowParams& p)
{
    const double v = p.v;
    const double w = p.w;
    Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
    std::size_t retained = 0;
    for (const auto& s : d.samples)
    {
        const auto t = alpha_term(p, s.psi);
        if (t.alpha <= kAlphaEpsilon)
            continue;
        const double c = t.cos_dpsi;
        const double sn = t.sin_dpsi;
        const double root = std::sqrt(t.alpha);
        const double r = s.vg - root;

        const Eigen::Vector3d da(2.0 * v + 2.0 * w * c, 2.0 * w + 2.0 * v * c, 2.0 * v * w * sn);
        Eigen::Matrix3d dda;
        dda << 2.0, 2.0 * c, 2.0 * w * sn,
               2.0 * c, 2.0, 2.0 * v * sn,
               2.0 * w * sn, 2.0 * v * sn, -2.0 * v * w * c;

        const Eigen::Vector3d ds = da / (2.0 * root);
        const Eigen::Matrix3d dds = dda / (2.0 * root) - da * da.transpose() / (4.0 * t.alpha * root);
        H += ds * ds.transpose() - r * dds;
        ++retained;
    }
    require_retained(retained);
    return H;
}

optim::OptProblem problem(const GroundSpeedDataset& d, const Polytope& poly)
{
    // the dataset outlives the problem inside estimate(); callers that build
    // a problem themselves must keep d alive
    const GroundSpeedDataset* data = &d;
    return {[data](const FlowParams& p) { return cost(*data, p); },
            [data](const FlowParams& p) { return gradient(*data, p); },
            [data](const FlowParams& p) { return hessian(*data, p); }, poly};
}

EstimateReport estimate(const GroundSpeedDataset& d, const Polytope& poly)
{
    return estimate(d, poly, optim::start_points(poly));
}

EstimateReport estimate(const GroundSpeedDataset& d, const Polytope& poly,
                        const std::vector<FlowParams>& starts)
{
    if (d.size() < 3)
        throw Error(ErrorKind::InsufficientData, "estimation needs at least 3 samples");
    poly.validate();

    const auto res = optim::minimize(problem(d, poly), starts);
    auto rep = detail::report_from(res, "opt-vg");
    const auto acc = accounting(d, res.params);
    rep.n_used = acc.retained;
    rep.n_excluded = acc.excluded;
    return rep;
}

} // namespace flowest::est_vg
