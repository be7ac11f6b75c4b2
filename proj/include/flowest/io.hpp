#ifndef FLOWEST_IO_HPP_
#define FLOWEST_IO_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <variant>

#include <json.hpp>

#include "flowest/bench.hpp"
#include "flowest/types.hpp"

namespace flowest::io
{

/// Version stamped on every JSON document and CSV header block.
inline constexpr int kSchemaVersion = 1;

/// Malformed trajectory file; message carries the line number.
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/**
 * Trajectory log read from CSV.
 *
 * Lines starting with '#' are comments; "# key=value" comments are collected
 * into meta. The first other line is the header. Recognised columns are t
 * (optional, ignored by the estimators), psi, and either xdot + ydot or vg.
 * Unknown columns are ignored.
 */
struct Trajectory
{
    std::variant<VelDataset, GroundSpeedDataset> data;
    std::map<std::string, std::string> meta;

    bool has_velocity() const { return std::holds_alternative<VelDataset>(data); }
};

Trajectory read_trajectory_csv(std::istream& in, bool psi_degrees = false);
Trajectory read_trajectory_csv_file(const std::string& path, bool psi_degrees = false);

/// %.9g formatting used for every CSV number.
std::string format_number(double x);

/// meta entries are written as "# key=value" lines in the given order.
using MetaLines = std::vector<std::pair<std::string, std::string>>;

void write_velocity_csv(std::ostream& out, const VelDataset& d, const MetaLines& meta);
void write_ground_speed_csv(std::ostream& out, const GroundSpeedDataset& d, const MetaLines& meta);

/// Model ground-speed curve sampled at `points` headings over [0, 2π).
void write_curve_csv(std::ostream& out, const FlowParams& p, std::size_t points = 360);

nlohmann::json to_json(const FlowParams& p);
nlohmann::json to_json(const EstimateReport& rep);

/// One row per (method, sigma, span) cell.
void write_bench_summary_csv(std::ostream& out, const bench::BenchResult& res);
nlohmann::json bench_detail_json(const bench::BenchResult& res);

/// Benchmark configuration from JSON; keys absent from j keep their defaults.
bench::BenchConfig bench_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const bench::BenchConfig& cfg);

} // namespace flowest::io

#endif
