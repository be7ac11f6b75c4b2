#include "flowest/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "flowest/angles.hpp"
#include "flowest/model.hpp"

namespace flowest::io
{

namespace
{

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_number(const std::string& cell, std::size_t line_no, const std::string& column)
{
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (!cell.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (cell.empty() || ec != std::errc() || ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ": column '" + column +
                         "' is not a number: '" + cell + "'");
    if (!std::isfinite(value))
        throw ParseError("line " + std::to_string(line_no) + ": column '" + column +
                         "' is not finite");
    return value;
}

void write_meta(std::ostream& out, const MetaLines& meta)
{
    out << "# schema_version=" << kSchemaVersion << '\n';
    for (const auto& [k, v] : meta)
        out << "# " << k << '=' << v << '\n';
}

} // namespace

std::string format_number(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

Trajectory read_trajectory_csv(std::istream& in, bool psi_degrees)
{
    Trajectory traj;
    std::optional<std::vector<std::string>> header;
    std::optional<std::size_t> col_x, col_y, col_vg, col_psi;
    VelDataset vel;
    GroundSpeedDataset gs;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty())
            continue;
        if (t.front() == '#')
        {
            const std::string body = trim(t.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string::npos)
                traj.meta[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
            continue;
        }

        auto cells = split(t);
        if (!header)
        {
            header = cells;
            for (std::size_t i = 0; i < cells.size(); ++i)
            {
                const auto& name = cells[i];
                if (name == "xdot")
                    col_x = i;
                else if (name == "ydot")
                    col_y = i;
                else if (name == "vg")
                    col_vg = i;
                else if (name == "psi")
                    col_psi = i;
            }
            if (!col_psi)
                throw ParseError("line " + std::to_string(line_no) + ": header has no 'psi' column");
            if (!(col_x && col_y) && !col_vg)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": header needs 'xdot' and 'ydot' columns or a 'vg' column");
            continue;
        }

        if (cells.size() != header->size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header->size()) + " columns, found " +
                             std::to_string(cells.size()));

        double psi = parse_number(cells[*col_psi], line_no, "psi");
        if (psi_degrees)
            psi = deg2rad(psi);
        if (col_x && col_y)
        {
            vel.samples.push_back({parse_number(cells[*col_x], line_no, "xdot"),
                                   parse_number(cells[*col_y], line_no, "ydot"), psi});
        }
        else
        {
            const double vg = parse_number(cells[*col_vg], line_no, "vg");
            if (vg < 0.0)
                throw ParseError("line " + std::to_string(line_no) + ": ground speed must be >= 0");
            gs.samples.push_back({vg, psi});
        }
    }

    if (!header)
        throw ParseError("trajectory file has no header row");
    if (col_x && col_y)
        traj.data = std::move(vel);
    else
        traj.data = std::move(gs);
    return traj;
}

Trajectory read_trajectory_csv_file(const std::string& path, bool psi_degrees)
{
    std::ifstream f(path);
    if (!f)
        throw ParseError("cannot open '" + path + "'");
    return read_trajectory_csv(f, psi_degrees);
}

void write_velocity_csv(std::ostream& out, const VelDataset& d, const MetaLines& meta)
{
    write_meta(out, meta);
    out << "xdot,ydot,psi\n";
    for (const auto& s : d.samples)
        out << format_number(s.xdot) << ',' << format_number(s.ydot) << ',' << format_number(s.psi) << '\n';
}

void write_ground_speed_csv(std::ostream& out, const GroundSpeedDataset& d, const MetaLines& meta)
{
    write_meta(out, meta);
    out << "vg,psi\n";
    for (const auto& s : d.samples)
        out << format_number(s.vg) << ',' << format_number(s.psi) << '\n';
}

void write_curve_csv(std::ostream& out, const FlowParams& p, std::size_t points)
{
    out << "psi,vg\n";
    for (std::size_t i = 0; i < points; ++i)
    {
        const double psi = kTwoPi * static_cast<double>(i) / static_cast<double>(points);
        out << format_number(psi) << ',' << format_number(model::forward_ground_speed(p, psi)) << '\n';
    }
}

nlohmann::json to_json(const FlowParams& p)
{
    return {{"v", p.v}, {"w", p.w}, {"theta", p.theta}};
}

nlohmann::json to_json(const EstimateReport& rep)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["method"] = rep.method;
    j["v_hat"] = rep.params.v;
    j["w_hat"] = rep.params.w;
    j["theta_hat_rad"] = rep.params.theta;
    j["theta_hat_deg"] = rad2deg(rep.params.theta);
    j["cost"] = rep.cost;
    j["n_used"] = rep.n_used;
    j["n_excluded"] = rep.n_excluded;
    if (rep.inlier_mask)
    {
        std::size_t inliers = 0;
        for (bool b : *rep.inlier_mask)
            inliers += b ? 1 : 0;
        j["inlier_fraction"] = rep.inlier_mask->empty()
                                   ? 0.0
                                   : static_cast<double>(inliers) / static_cast<double>(rep.inlier_mask->size());
    }

    nlohmann::json diag;
    diag["converged"] = rep.converged;
    diag["iterations"] = rep.iterations;
    diag["direction_indeterminate"] = rep.direction_indeterminate;
    if (rep.start_point)
        diag["start_point"] = to_json(*rep.start_point);
    if (rep.inlier_threshold)
        diag["inlier_threshold"] = *rep.inlier_threshold;
    if (rep.inlier_mask)
    {
        nlohmann::json mask = nlohmann::json::array();
        for (bool b : *rep.inlier_mask)
            mask.push_back(b ? 1 : 0);
        diag["inlier_mask"] = std::move(mask);
    }
    nlohmann::json starts = nlohmann::json::array();
    for (const auto& s : rep.starts)
    {
        nlohmann::json js{{"start", to_json(s.start)},
                          {"converged", s.converged},
                          {"iterations", s.iterations}};
        if (s.error.empty())
        {
            js["result"] = to_json(s.result);
            js["cost"] = s.cost;
        }
        else
        {
            js["error"] = s.error;
        }
        starts.push_back(std::move(js));
    }
    diag["starts"] = std::move(starts);
    j["diagnostics"] = std::move(diag);
    return j;
}

void write_bench_summary_csv(std::ostream& out, const bench::BenchResult& res)
{
    out << "method,sigma,delta_psi,delta_psi_deg,trials,n_ok,n_failed,mean_err_v,mean_err_w,mean_err_theta_deg\n";
    for (const auto& c : res.cells)
    {
        out << bench::to_string(c.method) << ',' << format_number(c.sigma) << ',' << format_number(c.span)
            << ',' << format_number(rad2deg(c.span)) << ',' << c.trials.size() << ',' << c.n_ok << ','
            << c.n_failed << ',' << format_number(c.mean_err_v) << ',' << format_number(c.mean_err_w)
            << ',' << format_number(c.mean_err_theta_deg) << '\n';
    }
}

nlohmann::json to_json(const bench::BenchConfig& cfg)
{
    return {{"sigmas", cfg.sigmas}, {"spans", cfg.spans}, {"trials", cfg.trials},
            {"n", cfg.n},           {"v_min", cfg.poly.v_min}, {"v_max", cfg.poly.v_max},
            {"lambda", cfg.lambda}, {"seed", cfg.seed}};
}

bench::BenchConfig bench_config_from_json(const nlohmann::json& j)
{
    bench::BenchConfig cfg;
    if (!j.is_object())
        throw Error(ErrorKind::InvalidArgument, "benchmark config must be a JSON object");
    try
    {
        if (j.contains("sigmas"))
            cfg.sigmas = j.at("sigmas").get<std::vector<double>>();
        if (j.contains("spans"))
            cfg.spans = j.at("spans").get<std::vector<double>>();
        if (j.contains("spans_deg"))
        {
            cfg.spans.clear();
            for (double d : j.at("spans_deg").get<std::vector<double>>())
                cfg.spans.push_back(d == 360.0 ? kTwoPi : deg2rad(d));
        }
        if (j.contains("trials"))
            cfg.trials = j.at("trials").get<std::size_t>();
        if (j.contains("n"))
            cfg.n = j.at("n").get<std::size_t>();
        if (j.contains("v_min"))
            cfg.poly.v_min = j.at("v_min").get<double>();
        if (j.contains("v_max"))
            cfg.poly.v_max = j.at("v_max").get<double>();
        if (j.contains("lambda"))
            cfg.lambda = j.at("lambda").get<double>();
        if (j.contains("seed"))
            cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("threads"))
            cfg.threads = j.at("threads").get<unsigned>();
    }
    catch (const nlohmann::json::exception& e)
    {
        throw Error(ErrorKind::InvalidArgument, std::string("bad benchmark config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json bench_detail_json(const bench::BenchResult& res)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["config"] = to_json(res.config);
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : res.cells)
    {
        nlohmann::json jc{{"method", bench::to_string(c.method)},
                          {"sigma", c.sigma},
                          {"delta_psi", c.span},
                          {"n_ok", c.n_ok},
                          {"n_failed", c.n_failed},
                          {"mean_err_v", c.mean_err_v},
                          {"mean_err_w", c.mean_err_w},
                          {"mean_err_theta_deg", c.mean_err_theta_deg}};
        nlohmann::json trials = nlohmann::json::array();
        for (const auto& t : c.trials)
        {
            nlohmann::json jt{{"trial", t.trial}, {"truth", to_json(t.truth)}, {"ok", t.ok}};
            if (t.ok)
            {
                jt["estimate"] = to_json(t.estimate);
                jt["err_v"] = t.err_v;
                jt["err_w"] = t.err_w;
                jt["err_theta_deg"] = t.err_theta_deg;
            }
            else
            {
                jt["error"] = t.error;
            }
            trials.push_back(std::move(jt));
        }
        jc["trials"] = std::move(trials);
        cells.push_back(std::move(jc));
    }
    j["cells"] = std::move(cells);
    return j;
}

} // namespace flowest::io
