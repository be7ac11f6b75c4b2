#include "flowest/optim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace flowest::optim
{

namespace
{

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Rows a_j of the constraint set written as a_j . x + b_j >= 0, matching Polytope::slacks.
const std::array<Vec3, 6>& constraint_normals()
{
    static const std::array<Vec3, 6> rows = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0),
                                             Vec3(1, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)};
    return rows;
}

FlowParams to_params(const Vec3& x) { return {x(0), x(1), x(2)}; }
Vec3 to_vec(const FlowParams& p) { return {p.v, p.w, p.theta}; }

class BarrierSolver
{
public:
    BarrierSolver(const OptProblem& prob, const Settings& s) : prob_(prob), settings_(s) {}

    struct Outcome
    {
        Vec3 x;
        bool converged = false;
        int iterations = 0;
    };

    Outcome run(const Vec3& x0) const
    {
        Outcome out{x0, false, 0};
        bool last_stage_ok = false;
        for (double mu = settings_.mu_initial; mu >= settings_.mu_final * (1.0 - 1e-12);
             mu *= settings_.mu_factor)
        {
            last_stage_ok = newton_stage(out, mu, settings_.max_stage_iterations);
            if (out.iterations >= settings_.max_start_iterations)
                break;
        }
        out.converged = last_stage_ok;
        // unbarriered polish: removes the O(mu / slack) bias near active constraints
        if (last_stage_ok && settings_.polish_iterations > 0)
            newton_stage(out, 0.0, settings_.polish_iterations);
        return out;
    }

private:
    std::array<double, 6> slacks(const Vec3& x) const
    {
        const auto s = prob_.constraints.slacks(to_params(x));
        return {s[0], s[1], s[2], s[3], s[4], s[5]};
    }

    double merit(const Vec3& x, double mu) const
    {
        double barrier = 0.0;
        for (double s : slacks(x))
        {
            if (!(s > 0.0))
                return std::numeric_limits<double>::infinity();
            barrier -= std::log(s);
        }
        return prob_.cost(to_params(x)) + mu * barrier;
    }

    bool newton_stage(Outcome& out, double mu, int max_iterations) const
    {
        const auto& rows = constraint_normals();
        Vec3& x = out.x;
        double phi = merit(x, mu);

        for (int it = 0; it < max_iterations; ++it)
        {
            if (out.iterations >= settings_.max_start_iterations)
                return false;

            const auto p = to_params(x);
            const auto s = slacks(x);
            Vec3 g = prob_.gradient(p);
            Mat3 H = prob_.hessian(p);
            for (std::size_t j = 0; j < rows.size(); ++j)
            {
                g -= mu / s[j] * rows[j];
                H += mu / (s[j] * s[j]) * rows[j] * rows[j].transpose();
            }
            if (!g.allFinite() || !H.allFinite())
                return false;
            if (g.norm() < settings_.grad_tol)
                return true;

            const Vec3 d = newton_direction(H, g);
            const double slope = g.dot(d);
            if (!(slope < 0.0))
                return false;

            // fraction-to-boundary rule keeps every trial point strictly inside
            double step = 1.0;
            for (std::size_t j = 0; j < rows.size(); ++j)
            {
                const double rate = rows[j].dot(d);
                if (rate < 0.0)
                    step = std::min(step, 0.99 * s[j] / -rate);
            }

            ++out.iterations;
            bool accepted = false;
            for (int k = 0; k < 60; ++k)
            {
                const Vec3 trial = x + step * d;
                const double phi_trial = merit(trial, mu);
                if (phi_trial <= phi + 1e-4 * step * slope)
                {
                    const double moved = (trial - x).norm();
                    x = trial;
                    phi = phi_trial;
                    accepted = true;
                    if (moved <= 1e-15 * (1.0 + x.norm()))
                        return true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted)
            {
                // no representable decrease left: stationary up to rounding
                // when the predicted decrease is at the noise floor of phi
                return -slope <= 1e-14 * (1.0 + std::abs(phi));
            }
        }
        return false;
    }

    static Vec3 newton_direction(const Mat3& H, const Vec3& g)
    {
        Eigen::LLT<Mat3> llt(H);
        if (llt.info() == Eigen::Success)
            return -llt.solve(g);

        const double scale = std::max(H.diagonal().cwiseAbs().maxCoeff(), 1.0);
        for (double tau = 1e-8 * scale; tau < 1e20 * scale; tau *= 10.0)
        {
            llt.compute(H + tau * Mat3::Identity());
            if (llt.info() == Eigen::Success)
                return -llt.solve(g);
        }
        return -g;
    }

    const OptProblem& prob_;
    Settings settings_;
};

/// Candidate pinned to the theta seam: the same direction lives on the other
/// side of the 0/2π cut, which the linear constraints cannot see.
bool on_theta_seam(const FlowParams& p, double margin)
{
    return p.theta < margin || p.theta > kTwoPi - margin;
}

} // namespace

FlowParams centroid(const Polytope& p)
{
    p.validate();
    // corners have w in {0, v}, so the mean w is (v_min + v_max) / 4
    return {0.5 * (p.v_min + p.v_max), 0.25 * (p.v_min + p.v_max), std::numbers::pi};
}

std::vector<FlowParams> start_points(const Polytope& p)
{
    p.validate();
    const double m = kStartMargin * (p.v_max - p.v_min);
    std::vector<FlowParams> pts;
    pts.reserve(9);
    for (double v : {p.v_min + m, p.v_max - m})
        for (bool w_at_v : {false, true})
            for (double th : {m, kTwoPi - m})
                pts.push_back({v, w_at_v ? v - m : m, th});
    pts.push_back(centroid(p));
    return pts;
}

OptResult minimize(const OptProblem& prob, const std::vector<FlowParams>& starts,
                   const Settings& settings)
{
    prob.constraints.validate();
    if (starts.empty())
        throw Error(ErrorKind::InvalidArgument, "minimize needs at least one start point");

    const BarrierSolver solver(prob, settings);
    const double seam_margin = 1e-4;
    const double nudge = kStartMargin * (prob.constraints.v_max - prob.constraints.v_min);

    OptResult best;
    bool have_best = false;
    bool any_converged = false;
    std::string last_error;

    for (std::size_t i = 0; i < starts.size(); ++i)
    {
        StartDiagnostic diag;
        diag.start = starts[i];
        try
        {
            const auto slack = prob.constraints.slacks(starts[i]);
            for (double s : slack)
                if (!(s > 0.0))
                    throw Error(ErrorKind::InvalidArgument, "start point is not strictly feasible");

            auto run = solver.run(to_vec(starts[i]));
            auto candidate = to_params(run.x);
            double cost = prob.cost(candidate);
            int iterations = run.iterations;
            bool converged = run.converged;

            if (on_theta_seam(candidate, seam_margin))
            {
                FlowParams mirrored = candidate;
                mirrored.theta = candidate.theta < std::numbers::pi ? kTwoPi - nudge : nudge;
                mirrored.v = std::clamp(mirrored.v, prob.constraints.v_min + nudge,
                                        prob.constraints.v_max - nudge);
                mirrored.w = std::clamp(mirrored.w, nudge, mirrored.v - nudge);
                const auto rerun = solver.run(to_vec(mirrored));
                const auto alt = to_params(rerun.x);
                const double alt_cost = prob.cost(alt);
                iterations += rerun.iterations;
                if (alt_cost < cost)
                {
                    candidate = alt;
                    cost = alt_cost;
                    converged = rerun.converged;
                }
            }

            diag.result = candidate;
            diag.cost = cost;
            diag.converged = converged;
            diag.iterations = iterations;

            if (!std::isfinite(cost) || !prob.constraints.contains(candidate, kFeasibilityTol))
                throw Error(ErrorKind::OptimizationFailure, "start produced an infeasible or non-finite result");

            any_converged = any_converged || converged;
            if (!have_best || cost < best.cost)
            {
                best.params = candidate;
                best.cost = cost;
                best.converged = converged;
                best.iterations = iterations;
                best.start_point = starts[i];
                best.start_index = i;
                have_best = true;
            }
        }
        catch (const std::exception& e)
        {
            diag.error = e.what();
            last_error = e.what();
        }
        best.starts.push_back(std::move(diag));
    }

    if (!have_best || !any_converged)
        throw OptimizationError("no start point converged to a feasible minimum" +
                                    (last_error.empty() ? std::string() : " (last error: " + last_error + ")"),
                                std::move(best.starts));
    return best;
}

} // namespace flowest::optim
