#include "flowest/quadfit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "flowest/angles.hpp"
#include "flowest/model.hpp"

namespace flowest::quadfit
{

namespace
{

struct SortedCurve
{
    std::vector<double> psi; // wrapped, ascending
    std::vector<double> vg;
};

SortedCurve sorted_curve(const GroundSpeedDataset& d)
{
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> wrapped(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        wrapped[i] = wrap_2pi(d.samples[i].psi);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return wrapped[a] < wrapped[b]; });

    SortedCurve out;
    out.psi.reserve(d.size());
    out.vg.reserve(d.size());
    for (std::size_t i : order)
    {
        out.psi.push_back(wrapped[i]);
        out.vg.push_back(d.samples[i].vg);
    }
    return out;
}

double residual_cost(const GroundSpeedDataset& d, const FlowParams& p)
{
    double j = 0.0;
    for (const auto& s : d.samples)
    {
        const double r = s.vg - model::forward_ground_speed(p, s.psi);
        j += r * r;
    }
    return 0.5 * j;
}

} // namespace

double max_heading_gap(const GroundSpeedDataset& d)
{
    if (d.empty())
        return kTwoPi;
    const auto curve = sorted_curve(d);
    double gap = curve.psi.front() + kTwoPi - curve.psi.back();
    for (std::size_t i = 1; i < curve.psi.size(); ++i)
        gap = std::max(gap, curve.psi[i] - curve.psi[i - 1]);
    return gap;
}

ExtremaGuess locate_extrema(const GroundSpeedDataset& d)
{
    if (d.size() < kSmoothingWindow)
        throw Error(ErrorKind::InsufficientData, "quadratic fit needs more samples than the smoothing window");
    if (max_heading_gap(d) > kMaxHeadingGap)
        throw Error(ErrorKind::InsufficientCoverage,
                    "headings do not cover a full revolution (quadratic fit needs delta_psi = 2π)");

    const auto curve = sorted_curve(d);
    const std::size_t n = curve.vg.size();
    const std::size_t half = kSmoothingWindow / 2;

    std::vector<double> smooth(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double acc = 0.0;
        for (std::size_t k = 0; k < kSmoothingWindow; ++k)
            acc += curve.vg[(i + n + k - half) % n];
        smooth[i] = acc / static_cast<double>(kSmoothingWindow);
    }

    const auto [lo, hi] = std::minmax_element(smooth.begin(), smooth.end());
    ExtremaGuess g;
    g.psi_max = curve.psi[static_cast<std::size_t>(hi - smooth.begin())];
    g.psi_min = curve.psi[static_cast<std::size_t>(lo - smooth.begin())];
    const double mean = std::accumulate(smooth.begin(), smooth.end(), 0.0) / static_cast<double>(n);
    g.flat = (*hi - *lo) <= 1e-9 * std::max(std::abs(mean), 1e-300);
    return g;
}

QuadCoeffs window_fit(const GroundSpeedDataset& d, double center, double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(center))
        throw Error(ErrorKind::InvalidArgument, "window half-width must be > 0 and center finite");

    // local coordinate t = psi - center on the branch contiguous around center
    std::vector<double> t;
    std::vector<double> y;
    for (const auto& s : d.samples)
    {
        const double dt = wrapped_diff(s.psi, center);
        if (std::abs(dt) <= lambda)
        {
            t.push_back(dt);
            y.push_back(s.vg);
        }
    }
    if (t.size() < 3)
        throw Error(ErrorKind::InsufficientData, "fewer than 3 samples inside the quadratic-fit window");

    const auto m = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd V(m, 3);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i)
    {
        const double ti = t[static_cast<std::size_t>(i)];
        V(i, 0) = ti * ti;
        V(i, 1) = ti;
        V(i, 2) = 1.0;
        rhs(i) = y[static_cast<std::size_t>(i)];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
    if (qr.rank() < 3)
        throw Error(ErrorKind::InsufficientData, "window samples have fewer than 3 distinct headings");
    const Eigen::Vector3d local = qr.solve(rhs);

    // a t² + bl t + cl with t = psi - center, expanded in psi
    QuadCoeffs q;
    q.a = local(0);
    q.b = local(1) - 2.0 * local(0) * center;
    q.c = local(0) * center * center - local(1) * center + local(2);
    q.window_center = center;
    q.window_halfwidth = lambda;
    q.n_window = t.size();
    return q;
}

FlowParams recover(double psi_max, double v_max, double psi_min, double v_min)
{
    FlowParams p;
    p.v = 0.5 * (v_max + v_min);
    p.w = 0.5 * (v_max - v_min);
    p.theta = wrap_2pi(std::atan2(std::sin(psi_max) - std::sin(psi_min),
                                  std::cos(psi_max) - std::cos(psi_min)));
    return p;
}

EstimateReport fit(const GroundSpeedDataset& d, double lambda, QuadFitDetail* detail)
{
    const auto guess = locate_extrema(d);

    EstimateReport rep;
    rep.method = "quad";
    rep.n_used = d.size();

    if (guess.flat)
    {
        double mean = 0.0;
        for (const auto& s : d.samples)
            mean += s.vg;
        rep.params = FlowParams{mean / static_cast<double>(d.size()), 0.0, 0.0};
        rep.direction_indeterminate = true;
        rep.cost = residual_cost(d, rep.params);
        return rep;
    }

    const auto hi = window_fit(d, guess.psi_max, lambda);
    const auto lo = window_fit(d, guess.psi_min, lambda);
    if (!(hi.a < 0.0))
        throw Error(ErrorKind::FitQuality, "quadratic around the maximum is not concave");
    if (!(lo.a > 0.0))
        throw Error(ErrorKind::FitQuality, "quadratic around the minimum is not convex");

    // vertex formulas are evaluated in local coordinates to avoid cancellation
    // in -b/2a when the window sits far from psi = 0
    auto vertex = [](const QuadCoeffs& q) {
        const double C = q.window_center;
        const double bl = q.b + 2.0 * q.a * C;
        const double cl = q.c - q.a * C * C + bl * C;
        return std::pair{C - bl / (2.0 * q.a), cl - bl * bl / (4.0 * q.a)};
    };
    const auto [psi_max, v_max] = vertex(hi);
    const auto [psi_min, v_min] = vertex(lo);
    if (!(v_max > v_min))
        throw Error(ErrorKind::FitQuality, "fitted maximum does not exceed fitted minimum");

    rep.params = recover(psi_max, v_max, psi_min, v_min);
    if (rep.params.w < 1e-9 * rep.params.v)
    {
        rep.params.theta = 0.0;
        rep.direction_indeterminate = true;
    }
    rep.cost = residual_cost(d, rep.params);

    if (detail)
        *detail = QuadFitDetail{hi, lo, wrap_2pi(psi_max), v_max, wrap_2pi(psi_min), v_min};
    return rep;
}

} // namespace flowest::quadfit
