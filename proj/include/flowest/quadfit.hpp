#ifndef FLOWEST_QUADFIT_HPP_
#define FLOWEST_QUADFIT_HPP_

#include "flowest/types.hpp"

namespace flowest::quadfit
{

/**
 * Local quadratic a ψ² + b ψ + c fitted to ground speed around one extremum.
 *
 * ψ here is the unwrapped heading branch contiguous around window_center, so
 * the coefficients are only meaningful for ψ within window_halfwidth of it.
 */
struct QuadCoeffs
{
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double window_center = 0.0;
    double window_halfwidth = 0.0;
    std::size_t n_window = 0;

    double vertex_psi() const { return -b / (2.0 * a); }
    double vertex_value() const { return c - b * b / (4.0 * a); }
};

struct ExtremaGuess
{
    double psi_max = 0.0;
    double psi_min = 0.0;
    /// Smoothed curve has no usable peak-to-trough amplitude (w ≈ 0).
    bool flat = false;
};

inline constexpr double kDefaultLambda = 0.5;
/// Largest angular gap between consecutive headings still counted as a full revolution.
inline constexpr double kMaxHeadingGap = std::numbers::pi / 6.0;
/// Samples in the circular moving average used to guess the extrema.
inline constexpr std::size_t kSmoothingWindow = 5;

/// Largest gap between consecutive headings around the circle.
double max_heading_gap(const GroundSpeedDataset& d);

/// Argmax/argmin heading of the circularly smoothed v_g curve.
/// Throws InsufficientCoverage unless the headings cover a full revolution.
ExtremaGuess locate_extrema(const GroundSpeedDataset& d);

/// Unweighted least-squares quadratic over samples within lambda (wrapped) of center.
QuadCoeffs window_fit(const GroundSpeedDataset& d, double center, double lambda);

struct QuadFitDetail
{
    QuadCoeffs max_fit;
    QuadCoeffs min_fit;
    double psi_max = 0.0;
    double v_max = 0.0;
    double psi_min = 0.0;
    double v_min = 0.0;
};

/// (v, w, theta) from the two fitted vertices.
FlowParams recover(double psi_max, double v_max, double psi_min, double v_min);

EstimateReport fit(const GroundSpeedDataset& d, double lambda = kDefaultLambda,
                   QuadFitDetail* detail = nullptr);

} // namespace flowest::quadfit

#endif
