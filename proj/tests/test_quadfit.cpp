#include <array>

#include <doctest.h>

#include "flowest/angles.hpp"
#include "flowest/model.hpp"
#include "flowest/quadfit.hpp"
#include "support.hpp"

using namespace flowest;
using flowest::testing::wrapped_abs_diff;

namespace
{

GroundSpeedDataset sweep(const FlowParams& p, std::size_t n = 100, double span = kTwoPi, double psi0 = 0.0)
{
    model::SimulateOptions o;
    o.n = n;
    o.delta_psi = span;
    o.psi0 = psi0;
    return model::to_ground_speed(model::simulate(p, o));
}

/// Unweighted least-squares quadratic through (t, y) via normal equations and Cramer's rule.
std::array<long double, 3> cramer_quadratic(const std::vector<double>& t, const std::vector<double>& y)
{
    long double s[5] = {0, 0, 0, 0, 0};
    long double r[3] = {0, 0, 0};
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        long double tk = 1;
        for (int k = 0; k < 5; ++k)
        {
            s[k] += tk;
            if (k < 3)
                r[k] += tk * y[i];
            tk *= t[i];
        }
    }
    // unknowns (c, b, a) for c + b t + a t²
    long double M[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
    auto det = [](long double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const long double d0 = det(M);
    std::array<long double, 3> out{};
    for (int col = 0; col < 3; ++col)
    {
        long double Mc[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                Mc[i][j] = j == col ? r[i] : M[i][j];
        out[static_cast<std::size_t>(col)] = det(Mc) / d0;
    }
    return out; // c, b, a
}

} // namespace

TEST_CASE("locate_extrema on a noise-free sweep")
{
    const FlowParams p{3, 1, std::numbers::pi / 2};
    const auto d = sweep(p);
    const auto g = quadfit::locate_extrema(d);
    CHECK_FALSE(g.flat);

    // dense-grid argmax / argmin of the sampled curve
    std::size_t hi = 0, lo = 0;
    for (std::size_t i = 1; i < d.size(); ++i)
    {
        if (d.samples[i].vg > d.samples[hi].vg)
            hi = i;
        if (d.samples[i].vg < d.samples[lo].vg)
            lo = i;
    }
    const double spacing = kTwoPi / 100.0;
    CHECK(wrapped_abs_diff(g.psi_max, d.samples[hi].psi) <= spacing + 1e-12);
    CHECK(wrapped_abs_diff(g.psi_min, d.samples[lo].psi) <= spacing + 1e-12);
    CHECK(wrapped_abs_diff(g.psi_max, std::numbers::pi / 2) <= spacing);
    CHECK(wrapped_abs_diff(g.psi_min, 3 * std::numbers::pi / 2) <= spacing);
}

TEST_CASE("flat curve is flagged, short spans are rejected")
{
    CHECK(quadfit::locate_extrema(sweep({2, 0, 0})).flat);
    const auto rep = quadfit::fit(sweep({2, 0, 0}));
    CHECK(rep.direction_indeterminate);
    CHECK(rep.params.w == 0.0);
    CHECK(rep.params.v == doctest::Approx(2.0));

    try
    {
        quadfit::locate_extrema(sweep({3, 1, 1}, 100, std::numbers::pi));
        FAIL("expected an insufficient-coverage error");
    }
    catch (const Error& e)
    {
        CHECK(e.kind() == ErrorKind::InsufficientCoverage);
    }
    CHECK_THROWS_AS(quadfit::fit(sweep({3, 1, 1}, 100, 1.5 * std::numbers::pi)), Error);
}

TEST_CASE("window_fit recovers an exact quadratic")
{
    const double a = -0.7, b = 1.9, c = 0.4;
    GroundSpeedDataset d;
    for (int i = 0; i < 41; ++i)
    {
        const double psi = 0.5 + 0.025 * i;
        d.samples.push_back({a * psi * psi + b * psi + c, psi});
    }
    const auto q = quadfit::window_fit(d, 1.0, 0.5);
    CHECK(q.n_window == 41);
    CHECK(std::abs(q.a - a) < 1e-10);
    CHECK(std::abs(q.b - b) < 1e-10);
    CHECK(std::abs(q.c - c) < 1e-10);
    CHECK(q.vertex_psi() == doctest::Approx(-b / (2 * a)));

    CHECK_THROWS_AS(quadfit::window_fit(d, 4.0, 0.1), Error);
}

TEST_CASE("window_fit matches an independent normal-equation fit on a dense grid")
{
    const FlowParams p{2.4, 1.1, 2.2};
    const auto d = sweep(p, 20000);
    const double lambda = 0.5;
    for (double center : {p.theta, p.theta + std::numbers::pi})
    {
        const auto q = quadfit::window_fit(d, center, lambda);
        std::vector<double> t, y;
        for (const auto& s : d.samples)
        {
            const double dt = wrapped_diff(s.psi, center);
            if (std::abs(dt) <= lambda)
            {
                t.push_back(dt);
                y.push_back(s.vg);
            }
        }
        const auto [c0, b0, a0] = cramer_quadratic(t, y);
        const double vertex_t = static_cast<double>(-b0 / (2 * a0));
        const double vertex_v = static_cast<double>(c0 - b0 * b0 / (4 * a0));
        CHECK(q.a == doctest::Approx(static_cast<double>(a0)).epsilon(1e-8));
        CHECK(std::abs(wrapped_diff(q.vertex_psi(), center + vertex_t)) < 1e-8);
        CHECK(q.vertex_value() == doctest::Approx(vertex_v).epsilon(1e-8));
    }
}

TEST_CASE("vertex of the maximum window sits near theta")
{
    const FlowParams p{3, 1, std::numbers::pi / 2};
    const auto d = sweep(p);
    const auto q = quadfit::window_fit(d, quadfit::locate_extrema(d).psi_max, 0.5);
    CHECK(q.a < 0.0);
    CHECK(wrapped_abs_diff(q.vertex_psi(), p.theta) < 0.02);
}

TEST_CASE("window straddling the 0/2pi seam")
{
    const FlowParams p{3, 1, 0.05};
    const auto wrapped = sweep(p);
    // same curve shifted so the maximum sits mid-circle, then compared back
    const double shift = 2.0;
    const auto shifted = sweep({3, 1, 0.05 + shift}, 100, kTwoPi, shift);
    const auto qa = quadfit::window_fit(wrapped, 0.05, 0.5);
    const auto qb = quadfit::window_fit(shifted, 0.05 + shift, 0.5);
    CHECK(qa.n_window == qb.n_window);
    CHECK(wrapped_abs_diff(qa.vertex_psi(), qb.vertex_psi() - shift) < 1e-9);
    CHECK(qa.vertex_value() == doctest::Approx(qb.vertex_value()).epsilon(1e-9));
    CHECK(qa.a == doctest::Approx(qb.a).epsilon(1e-9));
}

TEST_CASE("noise-free fit at (2, 0.8, pi) with lambda 0.4")
{
    const FlowParams p{2, 0.8, std::numbers::pi};
    const auto rep = quadfit::fit(sweep(p), 0.4);
    CHECK(std::abs(rep.params.v - p.v) / p.v < 0.02);
    CHECK(std::abs(rep.params.w - p.w) / p.w < 0.02);
    CHECK(rad2deg(wrapped_abs_diff(rep.params.theta, p.theta)) < 1.0);
}

TEST_CASE("recovery arithmetic and vertex identity")
{
    const auto p = quadfit::recover(std::numbers::pi / 2, 4.0, 3 * std::numbers::pi / 2, 2.0);
    CHECK(p.v == 3.0);
    CHECK(p.w == 1.0);
    CHECK(p.theta == doctest::Approx(std::numbers::pi / 2));

    quadfit::QuadFitDetail det;
    const auto rep = quadfit::fit(sweep({3.3, 1.2, 4.0}), 0.5, &det);
    CHECK(rep.params.v + rep.params.w == doctest::Approx(det.v_max).epsilon(1e-14));
    CHECK(rep.params.v - rep.params.w == doctest::Approx(det.v_min).epsilon(1e-14));
    // the minimum is sharper than the maximum
    CHECK(std::abs(det.min_fit.a) > std::abs(det.max_fit.a));
}

TEST_CASE("theta estimate rotates with the data")
{
    const FlowParams p{2.5, 0.9, 1.0};
    const auto base = quadfit::fit(sweep(p));
    for (double rot : {0.7, 2.9, 5.5})
    {
        const auto r = quadfit::fit(sweep({p.v, p.w, p.theta + rot}, 100, kTwoPi, rot));
        CHECK(wrapped_abs_diff(r.params.theta, base.params.theta + rot) < 1e-9);
    }
}

TEST_CASE("noisy full-orbit scenario (v=3, w=1, theta=90 deg, sigma=0.1)" * doctest::test_suite("noisy-orbit"))
{
    int good = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s)
    {
        model::SimulateOptions o;
        o.sigma = 0.1;
        o.seed = static_cast<std::uint64_t>(s);
        const auto g = model::to_ground_speed(model::simulate({3, 1, std::numbers::pi / 2}, o));
        try
        {
            const auto rep = quadfit::fit(g);
            good += (std::abs(rep.params.v - 3) <= 0.1 && std::abs(rep.params.w - 1) <= 0.1 &&
                     rad2deg(wrapped_abs_diff(rep.params.theta, std::numbers::pi / 2)) <= 6.0)
                        ? 1
                        : 0;
        }
        catch (const Error&)
        {
        }
    }
    CHECK(good >= 80);
}
