#ifndef FLOWEST_TYPES_HPP_
#define FLOWEST_TYPES_HPP_

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowest
{

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/** Failure categories raised by the estimators and their helpers. */
enum class ErrorKind
{
    InvalidArgument,
    InsufficientData,
    DegenerateGeometry,
    InsufficientCoverage,
    FitQuality,
    DegenerateParameters,
    OptimizationFailure,
    ConsensusFailure,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/**
 * Steady uniform flow plus the vehicle's flow-relative speed.
 *
 * v is the speed through the water, w the current magnitude and theta the
 * current direction. A plain aggregate: the optimizer also moves through
 * points that do not satisfy the physical invariants, so they are checked
 * explicitly with validate() at API boundaries.
 */
struct FlowParams
{
    double v = 0.0;
    double w = 0.0;
    double theta = 0.0;

    double wx() const { return w * std::cos(theta); }
    double wy() const { return w * std::sin(theta); }

    /// Throws Error(InvalidArgument) unless v > 0, 0 <= w <= v and all fields are finite.
    void validate() const;

    /// Copy with theta wrapped into [0, 2π).
    FlowParams normalized() const;
};

struct VelSample
{
    double xdot = 0.0;
    double ydot = 0.0;
    double psi = 0.0;
};

struct GroundSpeedSample
{
    double vg = 0.0;
    double psi = 0.0;
};

/// Provenance of a synthetic dataset.
struct DatasetMeta
{
    FlowParams params;
    double sigma = 0.0;
    double sigma_psi = 0.0;
    double delta_psi = 0.0;
    double psi0 = 0.0;
    unsigned long long seed = 0;
};

template <typename Sample>
struct Dataset
{
    std::vector<Sample> samples;
    std::optional<DatasetMeta> meta;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

using VelDataset = Dataset<VelSample>;
using GroundSpeedDataset = Dataset<GroundSpeedSample>;

/**
 * Feasible region for (v, w, theta):
 *   v_min <= v <= v_max,  0 <= w <= v,  0 <= theta <= 2π.
 */
struct Polytope
{
    double v_min = 0.5;
    double v_max = 5.0;

    void validate() const;

    /// Slack of the six inequality rows at p, in the order
    /// v - v_min, v_max - v, w, v - w, theta, 2π - theta. Feasible iff all >= 0.
    std::vector<double> slacks(const FlowParams& p) const;

    bool contains(const FlowParams& p, double tol = 0.0) const;
};

/// Outcome of one optimizer start, kept for diagnostics.
struct StartDiagnostic
{
    FlowParams start;
    FlowParams result;
    double cost = 0.0;
    bool converged = false;
    int iterations = 0;
    std::string error;
};

struct EstimateReport
{
    std::string method;
    FlowParams params;
    double cost = 0.0;
    bool converged = true;
    int iterations = 0;
    std::size_t n_used = 0;
    std::size_t n_excluded = 0;
    /// Set when the current is too weak for its direction to mean anything; theta is then 0.
    bool direction_indeterminate = false;
    std::optional<FlowParams> start_point;
    std::vector<StartDiagnostic> starts;
    /// Filled by the RANSAC wrapper only.
    std::optional<std::vector<bool>> inlier_mask;
    std::optional<double> inlier_threshold;
};

} // namespace flowest

#endif
