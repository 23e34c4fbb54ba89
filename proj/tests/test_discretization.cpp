#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dynsamp/discretization.hpp"

using namespace dynsamp;
using doctest::Approx;

namespace {

std::mt19937_64 rng(90110);

Spectrum random_spectrum(int n) {
    std::uniform_real_distribution<double> re(0.1, 5.0);
    std::uniform_real_distribution<double> im(-5.0, 5.0);
    std::vector<cplx> values;
    for (int j = 0; j < n; ++j) values.emplace_back(re(rng), im(rng));
    return Spectrum::from_values(values);
}

VectorSet random_vectors(int m, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd coeffs(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) coeffs(i, j) = cplx(gauss(rng), gauss(rng));
    return make_vector_set(std::move(coeffs), VectorKind::continuous_g);
}

VectorSet ones(int n) {
    return make_vector_set(Eigen::MatrixXcd::Ones(1, n), VectorKind::continuous_g);
}

VectorSet canonical(const Spectrum& spec) {
    Eigen::MatrixXcd coeffs(1, spec.dimension());
    for (int j = 0; j < spec.dimension(); ++j) coeffs(0, j) = std::sqrt(spec.lambda(j).real());
    return make_vector_set(std::move(coeffs), VectorKind::continuous_g);
}

}  // namespace

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS(TimeGrid::finite({1.0, 2.0}), validation_error);
    CHECK_THROWS_AS(TimeGrid::finite({0.0, 2.0, 2.0}), validation_error);
    CHECK_THROWS_AS(TimeGrid::uniform(0.0), validation_error);
    CHECK(TimeGrid::finite({0.0}).delta0() == std::numeric_limits<double>::infinity());
    CHECK(TimeGrid::finite({0.0, 0.5, 2.0}).delta0() == Approx(0.5));
    CHECK(TimeGrid::uniform(0.1).delta0() == Approx(0.1));
}

TEST_CASE("sampled quadratic form at reference points") {
    const Spectrum one = Spectrum::from_values({cplx(1, 0)});

    const auto q0 = sampled_quadform(one, ones(1), TimeGrid::finite({0.0}));
    CHECK(q0.matrix(0, 0).real() == Approx(1.0));

    const double m = 0.3;
    const auto qu = sampled_quadform(one, ones(1), TimeGrid::uniform(m));
    CHECK(qu.matrix(0, 0).real() == Approx(1.0 / (1.0 - std::exp(-2.0 * m))).epsilon(1e-14));

    const auto qf = sampled_quadform(one, ones(1), TimeGrid::finite({0.0, std::log(2.0)}));
    CHECK(qf.matrix(0, 0).real() == Approx(1.25).epsilon(1e-14));
}

TEST_CASE("closed uniform sums match direct summation") {
    for (int rep = 0; rep < 10; ++rep) {
        const Spectrum spec = random_spectrum(6);
        const VectorSet g = random_vectors(2, 6);
        const TimeGrid grid = TimeGrid::uniform(0.2);
        const auto closed = sampled_quadform(spec, g, grid);
        const auto direct = sampled_quadform_direct(spec, g, grid);
        CHECK((closed.matrix - direct.matrix).norm() <=
              1e-10 * std::max(1.0, closed.matrix.norm()));
    }
}

TEST_CASE("horizon quadratic form is the incomplete integral") {
    const Spectrum one = Spectrum::from_values({cplx(1, 0)});
    const auto q = horizon_quadform(one, ones(1), 1.0);
    CHECK(q.matrix(0, 0).real() == Approx(0.5 * (1.0 - std::exp(-2.0))).epsilon(1e-14));
    // L -> infinity recovers the full continuous form
    const auto qinf = horizon_quadform(one, ones(1), 50.0);
    CHECK(qinf.matrix(0, 0).real() == Approx(0.5).epsilon(1e-13));
}

TEST_CASE("delta search produces a self-consistent certificate") {
    const Spectrum one = Spectrum::from_values({cplx(1, 0)});
    const VectorSet g = ones(1);
    const FrameBounds cb = frame_bounds(quadform_continuous(one, g));
    CHECK(cb.lower == Approx(0.5));
    const DiscretizationCertificate cert = search_delta(one, g, cb, bessel_constant(g));
    CHECK(cert.delta > 0.0);
    CHECK(cert.delta0 == Approx(0.5 * cert.delta));
    CHECK(cert.inequality_holds());
    CHECK(cert.guaranteed_lower == Approx(cb.lower / (2.0 * cert.delta)));
}

TEST_CASE("delta search fails cleanly when the lower bound vanishes") {
    const Spectrum one = Spectrum::from_values({cplx(1, 0)});
    FrameBounds zero;
    zero.lower = 0.0;
    zero.upper = 1.0;
    CHECK_THROWS_AS(search_delta(one, ones(1), zero, 1.0), numerical_error);
}

TEST_CASE("shrinking c shrinks the certified delta-epsilon product proportionally") {
    const Spectrum spec = random_spectrum(4);
    const VectorSet g = random_vectors(1, 4);
    FrameBounds cb = frame_bounds(quadform_continuous(spec, g));
    if (cb.lower <= 0.0) return;
    const DiscretizationCertificate big = search_delta(spec, g, cb, bessel_constant(g));
    FrameBounds small = cb;
    small.lower = cb.lower / 10.0;
    const DiscretizationCertificate tiny = search_delta(spec, g, small, bessel_constant(g));
    CHECK(tiny.delta * tiny.epsilon <= big.delta * big.epsilon / 10.0 * (1.0 + 1e-9));
}

TEST_CASE("finite horizon at reference points") {
    FrameBounds b1;
    b1.lower = 1.0;
    b1.upper = 1.0;
    const HorizonResult r1 = finite_horizon(b1, 1.0, -1.0);
    CHECK(r1.L > 0.0);
    CHECK(r1.guaranteed_lower > 0.0);
    CHECK(r1.guaranteed_lower == Approx(1.0 - std::exp(-2.0 * r1.L)).epsilon(1e-13));

    FrameBounds b2;
    b2.lower = 0.5;
    b2.upper = 1.0;
    const HorizonResult r2 = finite_horizon(b2, 1.0, -1.0);
    CHECK(r2.L > std::log(2.0) / 2.0);
    CHECK(r2.guaranteed_lower > 0.0);

    CHECK_THROWS_AS(finite_horizon(b2, 1.0, 0.0), numerical_error);
}

TEST_CASE("horizon guarantee is honored by the exact restricted form") {
    for (int rep = 0; rep < 10; ++rep) {
        const Spectrum spec = random_spectrum(5);
        const VectorSet g = random_vectors(2, 5);
        const FrameBounds cb = frame_bounds(quadform_continuous(spec, g));
        if (cb.lower <= 0.0) continue;
        const HorizonResult hr = finite_horizon(cb, 1.0, -spec.margin());
        const FrameBounds restricted = frame_bounds(horizon_quadform(spec, g, hr.L));
        CHECK(restricted.lower >= hr.guaranteed_lower - 1e-10);
    }
}

TEST_CASE("grid verification against the Riemann scaling") {
    const Spectrum one = Spectrum::from_values({cplx(1, 0)});
    const VectorSet g = ones(1);
    const FrameBounds cb = frame_bounds(quadform_continuous(one, g));

    const GridFrameReport fine = verify_grid_frame(one, g, TimeGrid::uniform(0.01), cb);
    CHECK(fine.is_frame);
    CHECK(fine.scaled_lower == Approx(0.5).epsilon(0.02));
    CHECK(fine.within_band);

    // a single sample cannot frame a 2-dimensional space
    const Spectrum two = Spectrum::from_values({cplx(1, 0), cplx(2, 0)});
    const VectorSet g2 = ones(2);
    const GridFrameReport rank =
        verify_grid_frame(two, g2, TimeGrid::finite({0.0}),
                          frame_bounds(quadform_continuous(two, g2)));
    CHECK_FALSE(rank.is_frame);
    CHECK(rank.discrete.lower <= 1e-12 * rank.discrete.upper);

    // coarse sampling keeps only the t = 0 energy
    const GridFrameReport coarse = verify_grid_frame(one, g, TimeGrid::uniform(40.0), cb);
    CHECK(coarse.discrete.lower == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("rank obstruction: m * n < N forces a degenerate sampled form") {
    for (int rep = 0; rep < 10; ++rep) {
        const int n_dim = 8;
        const Spectrum spec = random_spectrum(n_dim);
        const VectorSet g = random_vectors(2, n_dim);  // m = 2, 3 instants -> rank <= 6 < 8
        const FrameBounds fb =
            frame_bounds(sampled_quadform(spec, g, TimeGrid::finite({0.0, 0.4, 1.1})));
        CHECK(fb.lower <= 1e-12 * std::max(fb.upper, 1e-300));
        CHECK(fb.numerically_zero);
    }
}

TEST_CASE("stability dichotomy on reference families") {
    // lambda_j = j
    {
        std::vector<cplx> values;
        for (int j = 1; j <= 8; ++j) values.emplace_back(j, 0.0);
        const Spectrum spec = Spectrum::from_values(values);
        const VectorSet g = canonical(spec);
        const DichotomyVerdict v =
            stability_dichotomy(spec, g, frame_bounds(quadform_continuous(spec, g)));
        CHECK(v.margin_positive);
        CHECK(v.finite_horizon_frame);
        CHECK(v.finite_grid_frame);
        CHECK(v.margin == Approx(1.0));
    }
    // lambda_j = 2^{-j} with a margin trend sweep
    {
        const SpectrumGenerator gen = [](int j) { return cplx(std::pow(2.0, -j), 0.0); };
        const Spectrum spec = truncate(gen, 8);
        const VectorSet g = canonical(spec);
        const std::vector<int> sweep{4, 8, 12};
        const DichotomyVerdict v = stability_dichotomy(
            spec, g, frame_bounds(quadform_continuous(spec, g)), &gen, &sweep);
        CHECK(v.margin_positive);
        CHECK(v.margin == Approx(std::pow(2.0, -8)).epsilon(1e-13));
        REQUIRE(v.margin_trend.size() == 3);
        CHECK(v.margin_trend[0] > v.margin_trend[1]);
        CHECK(v.margin_trend[1] > v.margin_trend[2]);
    }
    // degenerate single eigenvalue
    {
        const Spectrum spec = Spectrum::from_values({cplx(2, 1)});
        const VectorSet g = canonical(spec);
        const DichotomyVerdict v =
            stability_dichotomy(spec, g, frame_bounds(quadform_continuous(spec, g)));
        CHECK(v.margin_positive);
        CHECK(v.finite_horizon_frame);
        CHECK(v.finite_grid_frame);
    }
}

TEST_CASE("certified grids sample frames") {
    // The certificate reasons about grids filling [0, infinity); the finite
    // stand-ins must extend past the decay horizon. Draw systems until one
    // admits a desk-scale check.
    std::uniform_real_distribution<double> re(0.5, 3.0), im(-1.0, 1.0);
    int systems = 0;
    for (int attempt = 0; attempt < 100 && systems < 2; ++attempt) {
        std::vector<cplx> values;
        for (int j = 0; j < 3; ++j) values.emplace_back(re(rng), im(rng));
        const Spectrum spec = Spectrum::from_values(values);
        const VectorSet g = random_vectors(2, 3);
        const FrameBounds cb = frame_bounds(quadform_continuous(spec, g));
        if (cb.lower <= 0.0 || cb.numerically_zero) continue;
        const DiscretizationCertificate cert = search_delta(spec, g, cb, bessel_constant(g));
        const HorizonResult hr = finite_horizon(cb, 1.0, -spec.margin());
        const double span = 2.0 * hr.L;
        if (span / cert.delta0 > 60000.0) continue;
        ++systems;
        std::uniform_real_distribution<double> gap(cert.delta0, cert.delta);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<double> pts{0.0};
            while (pts.back() < span) pts.push_back(pts.back() + gap(rng));
            const FrameBounds fb =
                frame_bounds(sampled_quadform(spec, g, TimeGrid::finite(pts)));
            CHECK(fb.lower > 0.0);
            CHECK_FALSE(fb.numerically_zero);
        }
    }
    CHECK(systems == 2);
}
