#include <sstream>

#include <doctest.h>

#include "flowest/io.hpp"
#include "flowest/model.hpp"

using namespace flowest;

TEST_CASE("velocity CSV round trip")
{
    model::SimulateOptions o;
    o.n = 25;
    o.sigma = 0.1;
    o.seed = 3;
    const auto d = model::simulate({2.5, 0.7, 1.1}, o);
    std::stringstream s;
    io::write_velocity_csv(s, d, {{"seed", "3"}, {"note", "x"}});
    const auto t = io::read_trajectory_csv(s);
    REQUIRE(t.has_velocity());
    const auto& back = std::get<VelDataset>(t.data);
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        CHECK(back.samples[i].xdot == doctest::Approx(d.samples[i].xdot).epsilon(1e-8));
        CHECK(back.samples[i].psi == doctest::Approx(d.samples[i].psi).epsilon(1e-8));
    }
    CHECK(t.meta.at("seed") == "3");
    CHECK(t.meta.at("schema_version") == "1");
}

TEST_CASE("ground-speed CSV with extra columns")
{
    std::istringstream in("# comment\nt,psi,extra,vg\n0,0.0,a,2.5\n1,0.1,b,2.6\n\n2,0.2,c,2.7\n");
    const auto t = io::read_trajectory_csv(in);
    REQUIRE_FALSE(t.has_velocity());
    const auto& g = std::get<GroundSpeedDataset>(t.data);
    REQUIRE(g.size() == 3);
    CHECK(g.samples[2].vg == 2.7);
    CHECK(g.samples[1].psi == 0.1);
}

TEST_CASE("degrees are converted")
{
    std::istringstream in("vg,psi\n1,180\n");
    const auto t = io::read_trajectory_csv(in, true);
    CHECK(std::get<GroundSpeedDataset>(t.data).samples[0].psi == doctest::Approx(std::numbers::pi));
}

TEST_CASE("malformed input names the line")
{
    auto fails_at = [](const std::string& text, const std::string& where) {
        std::istringstream in(text);
        try
        {
            io::read_trajectory_csv(in);
        }
        catch (const io::ParseError& e)
        {
            return std::string(e.what()).find(where) != std::string::npos;
        }
        return false;
    };
    CHECK(fails_at("xdot,ydot\n1,2\n", "line 1"));
    CHECK(fails_at("# c\nxdot,ydot,psi\n1,2,3\n1,2\n", "line 4"));
    CHECK(fails_at("vg,psi\n-1,0\n", "line 2"));
    CHECK(fails_at("vg,psi\n1,nan\n", "line 2"));
    CHECK(fails_at("", "header"));
}

TEST_CASE("number formatting")
{
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(3.0) == "3");
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333");
}

TEST_CASE("report JSON carries the documented keys")
{
    EstimateReport rep;
    rep.method = "opt-vg";
    rep.params = {3, 1, std::numbers::pi / 2};
    rep.n_used = 98;
    rep.n_excluded = 2;
    const auto j = io::to_json(rep);
    for (const char* k : {"schema_version", "method", "v_hat", "w_hat", "theta_hat_rad", "theta_hat_deg", "cost",
                          "n_used", "n_excluded", "diagnostics"})
        CHECK(j.contains(k));
    CHECK(j["theta_hat_deg"].get<double>() == doctest::Approx(90.0));
}

TEST_CASE("benchmark config from JSON")
{
    const auto cfg = io::bench_config_from_json(
        nlohmann::json::parse(R"({"sigmas":[0.2],"spans_deg":[360,90],"trials":3,"v_min":1,"v_max":4,"seed":8})"));
    CHECK(cfg.sigmas == std::vector<double>{0.2});
    REQUIRE(cfg.spans.size() == 2);
    CHECK(cfg.spans[0] == doctest::Approx(kTwoPi));
    CHECK(cfg.spans[1] == doctest::Approx(std::numbers::pi / 2));
    CHECK(cfg.trials == 3);
    CHECK(cfg.poly.v_min == 1.0);
    CHECK(cfg.seed == 8);
    const auto back = io::bench_config_from_json(io::to_json(cfg));
    CHECK(back.spans == cfg.spans);
    CHECK(back.trials == cfg.trials);
}
