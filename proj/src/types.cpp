#include "flowest/types.hpp"

#include "flowest/angles.hpp"

namespace flowest
{

const char* to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::DegenerateGeometry: return "degenerate-geometry";
    case ErrorKind::InsufficientCoverage: return "insufficient-coverage";
    case ErrorKind::FitQuality: return "fit-quality";
    case ErrorKind::DegenerateParameters: return "degenerate-parameters";
    case ErrorKind::OptimizationFailure: return "optimization-failure";
    case ErrorKind::ConsensusFailure: return "consensus-failure";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

void FlowParams::validate() const
{
    if (!std::isfinite(v) || !std::isfinite(w) || !std::isfinite(theta))
        throw Error(ErrorKind::InvalidArgument, "flow parameters must be finite");
    if (!(v > 0.0))
        throw Error(ErrorKind::InvalidArgument, "flow-relative speed v must be > 0");
    if (w < 0.0)
        throw Error(ErrorKind::InvalidArgument, "current speed w must be >= 0");
    if (w > v)
        throw Error(ErrorKind::InvalidArgument, "current speed w must not exceed v");
}

FlowParams FlowParams::normalized() const
{
    return FlowParams{v, w, wrap_2pi(theta)};
}

void Polytope::validate() const
{
    if (!std::isfinite(v_min) || !std::isfinite(v_max) || !(v_min > 0.0) || !(v_min < v_max))
        throw Error(ErrorKind::InvalidArgument, "polytope requires 0 < v_min < v_max");
}

std::vector<double> Polytope::slacks(const FlowParams& p) const
{
    return {p.v - v_min, v_max - p.v, p.w, p.v - p.w, p.theta, kTwoPi - p.theta};
}

bool Polytope::contains(const FlowParams& p, double tol) const
{
    for (double s : slacks(p))
        if (!(s >= -tol))
            return false;
    return true;
}

} // namespace flowest
