#include "dynsamp/discretization.hpp"

#include <algorithm>
#include <cmath>

namespace dynsamp {

TimeGrid TimeGrid::finite(std::vector<double> points) {
    if (points.empty()) throw validation_error("TimeGrid: needs at least one instant");
    if (points.front() != 0.0) throw validation_error("TimeGrid: first instant must be 0");
    for (size_t i = 1; i < points.size(); ++i)
        if (points[i] <= points[i - 1])
            throw validation_error("TimeGrid: instants must be strictly increasing");
    TimeGrid grid;
    grid.kind = Kind::finite_explicit;
    grid.points = std::move(points);
    return grid;
}

TimeGrid TimeGrid::uniform(double step, long cap) {
    if (step <= 0.0) throw validation_error("TimeGrid: uniform step must be positive");
    if (cap < 0) throw validation_error("TimeGrid: cap must be nonnegative");
    TimeGrid grid;
    grid.kind = Kind::uniform_infinite;
    grid.step = step;
    grid.cap = cap;
    return grid;
}

double TimeGrid::delta0() const {
    if (kind == Kind::uniform_infinite) return step;
    if (points.size() < 2) return std::numeric_limits<double>::infinity();
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < points.size(); ++i) d = std::min(d, points[i] - points[i - 1]);
    return d;
}

bool DiscretizationCertificate::inequality_holds() const {
    const double lhs =
        std::sqrt(2.0) * bessel_K * M * M * delta / (1.0 - std::exp(omega * delta0)) * epsilon;
    return lhs < lower_c / 2.0;
}

namespace {

void hermitize(Eigen::MatrixXcd& m) {
    m = 0.5 * (m + m.adjoint()).eval();
}

void check_dims(const Spectrum& spec, const VectorSet& g, const char* who) {
    if (g.dim() != spec.dimension())
        throw validation_error(std::string(who) + ": dimension mismatch");
    if (g.kind != VectorKind::continuous_g)
        throw validation_error(std::string(who) + ": expects a continuous_g vector set");
}

Eigen::MatrixXcd spatial_gram(const VectorSet& g, int j_dim) {
    Eigen::MatrixXcd s(j_dim, j_dim);
    for (int j = 0; j < j_dim; ++j)
        for (int k = 0; k < j_dim; ++k) {
            cplx acc = 0.0;
            for (int i = 0; i < g.m(); ++i) acc += g.coeffs(i, j) * std::conj(g.coeffs(i, k));
            s(j, k) = acc;
        }
    return s;
}

}  // namespace

long uniform_tail_cap(const Spectrum& spec, double step, double tol) {
    const double margin = spec.margin();
    if (margin <= 0.0)
        throw numerical_error("uniform_tail_cap: tail not bounded, spectrum not stable");
    const double r = std::exp(-2.0 * step * margin);
    // sum_{n > n*} r^n <= tol (1 - r) per unit amplitude
    const double bound = std::log(tol * (1.0 - r)) / std::log(r);
    return std::max<long>(1, static_cast<long>(std::ceil(bound)) + 1);
}

QuadForm sampled_quadform(const Spectrum& spec, const VectorSet& g, const TimeGrid& grid) {
    check_dims(spec, g, "sampled_quadform");
    const int n = spec.dimension();
    Eigen::MatrixXcd m = spatial_gram(g, n);
    if (grid.kind == TimeGrid::Kind::uniform_infinite) {
        if (spec.margin() <= 0.0)
            throw numerical_error("sampled_quadform: infinite grid over a non-stable spectrum");
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const cplx x = spec.lambda(j) + std::conj(spec.lambda(k));
                m(j, k) /= 1.0 - std::exp(-grid.step * x);
            }
    } else {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const cplx x = spec.lambda(j) + std::conj(spec.lambda(k));
                cplx tsum = 0.0;
                for (double t : grid.points) tsum += std::exp(-t * x);
                m(j, k) *= tsum;
            }
    }
    hermitize(m);
    return QuadForm{std::move(m), QuadSource::discrete};
}

QuadForm sampled_quadform_direct(const Spectrum& spec, const VectorSet& g, const TimeGrid& grid) {
    check_dims(spec, g, "sampled_quadform_direct");
    if (grid.kind == TimeGrid::Kind::finite_explicit) return sampled_quadform(spec, g, grid);
    const long cap = grid.cap > 0 ? grid.cap : uniform_tail_cap(spec, grid.step);
    const int n = spec.dimension();
    Eigen::MatrixXcd m = spatial_gram(g, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const cplx q = std::exp(-grid.step * (spec.lambda(j) + std::conj(spec.lambda(k))));
            cplx tsum = 0.0;
            cplx power = 1.0;
            for (long t = 0; t <= cap; ++t) {
                tsum += power;
                power *= q;
            }
            m(j, k) *= tsum;
        }
    hermitize(m);
    return QuadForm{std::move(m), QuadSource::discrete};
}

QuadForm horizon_quadform(const Spectrum& spec, const VectorSet& g, double L) {
    check_dims(spec, g, "horizon_quadform");
    if (L <= 0.0) throw validation_error("horizon_quadform: L must be positive");
    const int n = spec.dimension();
    Eigen::MatrixXcd m = spatial_gram(g, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const cplx x = spec.lambda(j) + std::conj(spec.lambda(k));
            m(j, k) *= (1.0 - std::exp(-L * x)) / x;
        }
    hermitize(m);
    return QuadForm{std::move(m), QuadSource::continuous};
}

DiscretizationCertificate search_delta(const Spectrum& spec, const VectorSet& g,
                                       const FrameBounds& continuous_bounds, double bessel_K) {
    check_dims(spec, g, "search_delta");
    const double c = continuous_bounds.lower;
    if (c <= 0.0)
        throw numerical_error("search_delta: no feasible delta, continuous lower bound is zero");
    const double margin = spec.margin();
    const double lmax = spec.max_modulus();
    // Monotone upper envelope of the gap norm: |e^{-t lambda} - 1| <= t |lambda| e^{t |lambda|}.
    const auto envelope = [lmax](double t) { return t * lmax * std::exp(t * lmax); };
    const auto lhs = [&](double delta) {
        return std::sqrt(2.0) * bessel_K * delta / (1.0 - std::exp(-margin * 0.5 * delta)) *
               envelope(delta);
    };
    const double target = c / 2.0;
    double hi = 1.0;
    while (lhs(hi) < target && hi < 1e6) hi *= 2.0;
    double lo = hi;
    while (lhs(lo) >= target) {
        lo *= 0.5;
        if (lo < 1e-300)
            throw numerical_error("search_delta: no feasible delta found");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (lhs(mid) < target ? lo : hi) = mid;
    }

    DiscretizationCertificate cert;
    cert.delta = lo;
    cert.delta0 = 0.5 * lo;
    cert.epsilon = envelope(lo);
    cert.bessel_K = bessel_K;
    cert.M = 1.0;
    cert.omega = -margin;
    cert.lower_c = c;
    cert.upper_C = continuous_bounds.upper;
    cert.guaranteed_lower = c / (2.0 * lo);
    if (!cert.inequality_holds())
        throw invariant_error("search_delta: produced certificate fails its own inequality");
    return cert;
}

HorizonResult finite_horizon(const FrameBounds& continuous_bounds, double M, double omega) {
    if (omega >= 0.0)
        throw numerical_error("finite_horizon: semigroup not exponentially stable (omega >= 0)");
    const double c = continuous_bounds.lower;
    const double C = continuous_bounds.upper;
    if (c <= 0.0) throw validation_error("finite_horizon: continuous lower bound must be positive");
    // c - C M e^{2 omega L} > 0  <=>  L > log(C M / c) / (-2 omega)
    const double l_min = std::max(0.0, std::log(C * M / c) / (-2.0 * omega));
    const double step = std::max(l_min, 1.0 / (-omega)) / 64.0;
    for (int k = 1; k <= 100000; ++k) {
        const double L = l_min + k * step;
        const double guarantee = c - C * M * std::exp(2.0 * omega * L);
        if (guarantee > 0.0) return HorizonResult{L, guarantee};
    }
    throw numerical_error("finite_horizon: search grid exhausted");
}

GridFrameReport verify_grid_frame(const Spectrum& spec, const VectorSet& g, const TimeGrid& grid,
                                  const FrameBounds& continuous_bounds, double band_tol) {
    GridFrameReport report;
    report.band_tol = band_tol;
    report.discrete = frame_bounds(sampled_quadform(spec, g, grid));
    if (grid.kind == TimeGrid::Kind::uniform_infinite) {
        report.scale = grid.step;
    } else if (grid.points.size() > 1) {
        report.scale = grid.points.back() / static_cast<double>(grid.points.size() - 1);
    } else {
        report.scale = 1.0;
    }
    report.scaled_lower = report.scale * report.discrete.lower;
    report.scaled_upper = report.scale * report.discrete.upper;
    report.is_frame = report.discrete.lower > 0.0 && !report.discrete.numerically_zero;
    if (continuous_bounds.lower > 0.0) {
        report.rel_deviation_lower =
            std::abs(report.scaled_lower - continuous_bounds.lower) / continuous_bounds.lower;
        report.within_band = report.rel_deviation_lower <= band_tol;
    }
    return report;
}

DichotomyVerdict stability_dichotomy(const Spectrum& spec, const VectorSet& g,
                                     const FrameBounds& continuous_bounds,
                                     const SpectrumGenerator* generator,
                                     const std::vector<int>* sweep) {
    DichotomyVerdict verdict;
    verdict.margin = spec.margin();
    verdict.margin_positive = verdict.margin > 0.0;

    // Strict positivity above the eigen-solver noise floor. This is looser
    // than the 1e-10 usability flag on FrameBounds: severely ill-conditioned
    // truncations (e.g. lambda_j = j) are still frames in exact arithmetic
    // and the dichotomy compares positivity, not usability.
    const auto positive = [](const FrameBounds& fb) {
        return fb.lower > 1e-13 * fb.upper;
    };

    if (continuous_bounds.lower > 0.0 && verdict.margin_positive) {
        const HorizonResult hr = finite_horizon(continuous_bounds, 1.0, -verdict.margin);
        verdict.horizon_L = hr.L;
        verdict.finite_horizon_frame = positive(frame_bounds(horizon_quadform(spec, g, hr.L)));

        // A finite uniform partition of [0, L] dense enough that the rank
        // obstruction m * n >= N cannot bite and the fastest mode e^{-t lambda}
        // is resolved by several samples per unit decay.
        const int needed = (spec.dimension() + g.m() - 1) / g.m();
        const int resolved = static_cast<int>(
            std::min(4096.0, std::ceil(hr.L * spec.max_modulus() * 4.0)));
        const int n_points = std::max({4 * needed, resolved, 8});
        std::vector<double> pts(static_cast<size_t>(n_points));
        for (int k = 0; k < n_points; ++k)
            pts[static_cast<size_t>(k)] = hr.L * k / (n_points - 1);
        verdict.finite_grid_frame =
            positive(frame_bounds(sampled_quadform(spec, g, TimeGrid::finite(std::move(pts)))));
    }

    if (generator && sweep) {
        for (int n : *sweep) {
            verdict.trend_dimensions.push_back(n);
            verdict.margin_trend.push_back(truncate(*generator, n).margin());
        }
    }
    return verdict;
}

}  // namespace dynsamp
