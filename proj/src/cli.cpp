#include "flowest/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>

#include <CLI11.hpp>

#include "flowest/angles.hpp"
#include "flowest/bench.hpp"
#include "flowest/circlefit.hpp"
#include "flowest/est_vg.hpp"
#include "flowest/est_xy.hpp"
#include "flowest/io.hpp"
#include "flowest/model.hpp"
#include "flowest/quadfit.hpp"
#include "flowest/ransac.hpp"

namespace flowest::cli
{

namespace
{

/// Invalid user input detected after flag parsing.
struct BadInput : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::uint64_t fresh_seed()
{
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct SimulateArgs
{
    double v = 0.0;
    double w = 0.0;
    double theta = 0.0;
    std::size_t n = 100;
    double delta_psi = kTwoPi;
    double sigma = 0.0;
    double sigma_psi = 0.0;
    double psi0 = 0.0;
    std::uint64_t seed = 0;
    std::string out;
    bool ground_speed = false;
    double outlier_frac = 0.0;
};

struct EstimateArgs
{
    std::string method;
    std::string input;
    double vmin = 0.5;
    double vmax = 5.0;
    bool ransac = false;
    double lambda = quadfit::kDefaultLambda;
    bool psi_degrees = false;
    std::uint64_t seed = 0;
    std::size_t ransac_iterations = 100;
    std::size_t ransac_min_sample = 10;
    double ransac_threshold = 0.0;
    double ransac_min_inliers = 0.5;
    std::string curve_out;
};

struct BenchmarkArgs
{
    std::string config;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::size_t trials = 0;
    unsigned threads = 0;
};

int cmd_simulate(const SimulateArgs& a, bool seed_given, std::ostream& out, std::ostream& err)
{
    const FlowParams p{a.v, a.w, a.theta};
    try
    {
        p.validate();
    }
    catch (const Error& e)
    {
        throw BadInput(e.what());
    }

    const std::uint64_t seed = seed_given ? a.seed : fresh_seed();
    model::SimulateOptions opts;
    opts.n = a.n;
    opts.delta_psi = a.delta_psi;
    opts.sigma = a.sigma;
    opts.sigma_psi = a.sigma_psi;
    opts.psi0 = a.psi0;
    opts.seed = seed;

    VelDataset d;
    try
    {
        d = model::simulate(p, opts);
        if (a.outlier_frac > 0.0)
            d = model::inject_outliers(d, a.outlier_frac, 1.5 * (a.v + a.w), seed + 1);
    }
    catch (const Error& e)
    {
        throw BadInput(e.what());
    }

    io::MetaLines meta{{"v", io::format_number(a.v)},
                       {"w", io::format_number(a.w)},
                       {"theta", io::format_number(a.theta)},
                       {"n", std::to_string(a.n)},
                       {"delta_psi", io::format_number(a.delta_psi)},
                       {"sigma", io::format_number(a.sigma)},
                       {"sigma_psi", io::format_number(a.sigma_psi)},
                       {"psi0", io::format_number(a.psi0)},
                       {"seed", std::to_string(seed)}};
    if (a.outlier_frac > 0.0)
        meta.emplace_back("outlier_frac", io::format_number(a.outlier_frac));

    auto write = [&](std::ostream& os) {
        if (a.ground_speed)
            io::write_ground_speed_csv(os, model::to_ground_speed(d), meta);
        else
            io::write_velocity_csv(os, d, meta);
    };

    if (a.out.empty())
    {
        write(out);
    }
    else
    {
        std::ofstream f(a.out, std::ios::binary);
        if (!f)
            throw BadInput("cannot write '" + a.out + "'");
        write(f);
        err << "wrote " << d.size() << " samples to " << a.out << " (seed " << seed << ")\n";
    }
    return kExitOk;
}

int cmd_estimate(const EstimateArgs& a, bool seed_given, std::ostream& out, std::ostream& err)
{
    io::Trajectory traj;
    try
    {
        traj = io::read_trajectory_csv_file(a.input, a.psi_degrees);
    }
    catch (const io::ParseError& e)
    {
        throw BadInput(std::string("input: ") + e.what());
    }

    const bool needs_velocity = a.method == "circle" || a.method == "opt-xy";
    if (needs_velocity && !traj.has_velocity())
        throw BadInput("method '" + a.method + "' needs xdot/ydot columns");
    if (a.ransac && (a.method == "circle" || a.method == "quad"))
        throw BadInput("--ransac applies to the opt-xy and opt-vg methods only");

    const Polytope poly{a.vmin, a.vmax};
    try
    {
        poly.validate();
    }
    catch (const Error& e)
    {
        throw BadInput(e.what());
    }

    auto ground_speed = [&] {
        return traj.has_velocity() ? model::to_ground_speed(std::get<VelDataset>(traj.data))
                                   : std::get<GroundSpeedDataset>(traj.data);
    };

    ransac::RansacConfig rcfg;
    rcfg.iterations = a.ransac_iterations;
    rcfg.min_sample = a.ransac_min_sample;
    rcfg.min_inliers_frac = a.ransac_min_inliers;
    if (a.ransac_threshold > 0.0)
        rcfg.inlier_threshold = a.ransac_threshold;
    rcfg.seed = seed_given ? a.seed : fresh_seed();
    if (a.ransac)
    {
        try
        {
            rcfg.validate();
        }
        catch (const Error& e)
        {
            throw BadInput(e.what());
        }
    }

    EstimateReport rep;
    try
    {
        if (a.method == "circle")
            rep = circlefit::fit(std::get<VelDataset>(traj.data));
        else if (a.method == "quad")
            rep = quadfit::fit(ground_speed(), a.lambda);
        else if (a.method == "opt-xy")
            rep = a.ransac ? ransac::robust_estimate(std::get<VelDataset>(traj.data), rcfg, poly)
                           : est_xy::estimate(std::get<VelDataset>(traj.data), poly);
        else
            rep = a.ransac ? ransac::robust_estimate(ground_speed(), rcfg, poly)
                           : est_vg::estimate(ground_speed(), poly);
    }
    catch (const Error& e)
    {
        err << "estimation failed [" << a.method << "]: " << e.what() << '\n';
        return kExitEstimatorFailure;
    }

    auto j = io::to_json(rep);
    if (a.ransac)
        j["seed"] = rcfg.seed;
    out << j.dump(2) << '\n';

    if (!a.curve_out.empty())
    {
        std::ofstream f(a.curve_out, std::ios::binary);
        if (!f)
            throw BadInput("cannot write '" + a.curve_out + "'");
        io::write_curve_csv(f, rep.params);
    }
    return kExitOk;
}

int cmd_benchmark(const BenchmarkArgs& a, bool seed_given, std::ostream& out, std::ostream& err)
{
    bench::BenchConfig cfg;
    try
    {
        if (!a.config.empty())
        {
            std::ifstream f(a.config);
            if (!f)
                throw BadInput("cannot open config '" + a.config + "'");
            cfg = io::bench_config_from_json(nlohmann::json::parse(f));
        }
        if (seed_given)
            cfg.seed = a.seed;
        else if (a.config.empty())
            cfg.seed = fresh_seed();
        if (a.trials > 0)
            cfg.trials = a.trials;
        if (a.threads > 0)
            cfg.threads = a.threads;
        cfg.validate();
    }
    catch (const nlohmann::json::exception& e)
    {
        throw BadInput(std::string("config: ") + e.what());
    }
    catch (const Error& e)
    {
        throw BadInput(e.what());
    }

    const auto res = bench::run(cfg);

    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    const auto dir = std::filesystem::path(a.out_dir);
    {
        std::ofstream f(dir / "bench_summary.csv", std::ios::binary);
        if (!f)
            throw BadInput("cannot write into '" + a.out_dir + "'");
        io::write_bench_summary_csv(f, res);
    }
    {
        std::ofstream f(dir / "bench_detail.json", std::ios::binary);
        f << io::bench_detail_json(res).dump(1) << '\n';
    }
    out << "wrote " << res.cells.size() << " summary rows to " << (dir / "bench_summary.csv").string()
        << " (seed " << cfg.seed << ")\n";
    (void)err;
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Steady uniform current estimation from ground velocity and heading"};
    app.name("flowest");
    app.require_subcommand(1);

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Write a synthetic heading-change maneuver as CSV");
    sim->add_option("--v", sa.v, "flow-relative speed, m/s")->required();
    sim->add_option("--w", sa.w, "current speed, m/s")->required();
    sim->add_option("--theta", sa.theta, "current direction, rad")->required();
    sim->add_option("--n", sa.n, "number of samples")->capture_default_str();
    sim->add_option("--delta-psi", sa.delta_psi, "heading span, rad")->capture_default_str();
    sim->add_option("--sigma", sa.sigma, "velocity noise std, m/s")->capture_default_str();
    sim->add_option("--sigma-psi", sa.sigma_psi, "heading noise std, rad")->capture_default_str();
    sim->add_option("--psi0", sa.psi0, "initial heading, rad")->capture_default_str();
    auto* sim_seed = sim->add_option("--seed", sa.seed, "RNG seed (random if omitted)");
    sim->add_option("--out", sa.out, "output file (stdout if omitted)");
    sim->add_flag("--ground-speed", sa.ground_speed, "write vg,psi instead of xdot,ydot,psi");
    sim->add_option("--outlier-frac", sa.outlier_frac, "fraction of rows replaced by gross outliers")
        ->check(CLI::Range(0.0, 1.0));

    EstimateArgs ea;
    auto* est = app.add_subcommand("estimate", "Estimate (v, w, theta) from a trajectory CSV");
    est->add_option("--method", ea.method, "estimator")
        ->required()
        ->check(CLI::IsMember({"circle", "quad", "opt-xy", "opt-vg"}));
    est->add_option("--input", ea.input, "trajectory CSV")->required();
    est->add_option("--vmin", ea.vmin, "lower bound on v, m/s")->capture_default_str();
    est->add_option("--vmax", ea.vmax, "upper bound on v, m/s")->capture_default_str();
    est->add_flag("--ransac", ea.ransac, "wrap the optimizer in RANSAC");
    est->add_option("--lambda", ea.lambda, "quadratic-fit window half-width, rad")->capture_default_str();
    est->add_flag("--psi-degrees", ea.psi_degrees, "psi column is in degrees");
    auto* est_seed = est->add_option("--seed", ea.seed, "RANSAC seed (random if omitted)");
    est->add_option("--ransac-iterations", ea.ransac_iterations)->capture_default_str();
    est->add_option("--ransac-min-sample", ea.ransac_min_sample)->capture_default_str();
    est->add_option("--ransac-threshold", ea.ransac_threshold, "inlier residual bound (automatic if omitted)");
    est->add_option("--ransac-min-inliers", ea.ransac_min_inliers)->capture_default_str();
    est->add_option("--curve-out", ea.curve_out, "write the fitted vg(psi) curve as CSV");

    BenchmarkArgs ba;
    auto* bm = app.add_subcommand("benchmark", "Run the Monte Carlo comparison of all estimators");
    bm->add_option("--config", ba.config, "JSON config (sigmas, spans, trials, n, v_min, v_max, lambda, seed)");
    auto* bm_seed = bm->add_option("--seed", ba.seed, "RNG seed (random if omitted)");
    bm->add_option("--out-dir", ba.out_dir, "directory for bench_summary.csv and bench_detail.json")
        ->capture_default_str();
    bm->add_option("--trials", ba.trials, "override the number of trials per cell");
    bm->add_option("--threads", ba.threads, "worker threads (0 = all cores)");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        if (e.get_exit_code() == 0)
        {
            out << app.help();
            return kExitOk;
        }
        err << "flowest: " << e.what() << '\n';
        return kExitBadInput;
    }

    try
    {
        if (sim->parsed())
            return cmd_simulate(sa, sim_seed->count() > 0, out, err);
        if (est->parsed())
            return cmd_estimate(ea, est_seed->count() > 0, out, err);
        return cmd_benchmark(ba, bm_seed->count() > 0, out, err);
    }
    catch (const BadInput& e)
    {
        err << "flowest: " << e.what() << '\n';
        return kExitBadInput;
    }
}

} // namespace flowest::cli
