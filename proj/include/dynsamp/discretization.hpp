#pragma once

// Time-grid construction and verification: sampled quadratic forms on
// finite or uniform-infinite grids, the constructive delta-search yielding
// discretization certificates, the finite-horizon reduction, and the
// stability dichotomy.

#include <limits>
#include <vector>

#include "dynsamp/frame_analysis.hpp"

namespace dynsamp {

struct TimeGrid {
    enum class Kind { finite_explicit, uniform_infinite };

    Kind kind = Kind::finite_explicit;
    std::vector<double> points;  // finite case; sorted, points[0] == 0
    double step = 0.0;           // uniform case
    long cap = 0;                // uniform case: term cap for direct summation

    static TimeGrid finite(std::vector<double> points);
    static TimeGrid uniform(double step, long cap = 0);

    /// Minimum gap between consecutive sampling instants; +inf for a
    /// single-point grid.
    double delta0() const;
};

/// Constants produced by the delta-search. The stored inequality
/// sqrt(2) K M^2 delta / (1 - e^{omega delta0}) * epsilon < c/2 certifies
/// that any grid with gaps below delta and minimum gap delta0 samples a
/// frame with lower bound at least c / (2 delta).
struct DiscretizationCertificate {
    double delta = 0.0;
    double delta0 = 0.0;
    double epsilon = 0.0;
    double horizon_L = std::numeric_limits<double>::infinity();
    double bessel_K = 0.0;
    double M = 1.0;
    double omega = 0.0;  // < 0
    double lower_c = 0.0;
    double upper_C = 0.0;
    double guaranteed_lower = 0.0;  // c / (2 delta)

    bool inequality_holds() const;
};

/// Hermitian matrix of sum_i sum_{t in T} (e^{-t lambda_j} g^i_j) *
/// conj(e^{-t lambda_k} g^i_k). Uniform infinite grids use the closed-form
/// geometric time sum 1 / (1 - e^{-step (lambda_j + conj lambda_k)}).
QuadForm sampled_quadform(const Spectrum& spec, const VectorSet& g, const TimeGrid& grid);

/// Same quantity by direct term-by-term summation; uniform grids are
/// truncated at the grid cap (or a cap derived from a 1e-12 tail
/// tolerance). Cross-check companion of the closed form.
QuadForm sampled_quadform_direct(const Spectrum& spec, const VectorSet& g, const TimeGrid& grid);

/// Number of uniform-grid terms needed to push the dropped geometric tail
/// below tol.
long uniform_tail_cap(const Spectrum& spec, double step, double tol = 1e-12);

/// Exact [0, L] restriction of the continuous quadratic form via the
/// incomplete-integral closed form (1 - e^{-L(lambda_j + conj lambda_k)}) /
/// (lambda_j + conj lambda_k).
QuadForm horizon_quadform(const Spectrum& spec, const VectorSet& g, double L);

/// Bisection on delta with the monotone envelope
/// epsilon(delta) = delta * max|lambda| * e^{delta max|lambda|} bounding the
/// semigroup gap norm. Conservative by construction; certificates can be far
/// from tight.
DiscretizationCertificate search_delta(const Spectrum& spec, const VectorSet& g,
                                       const FrameBounds& continuous_bounds, double bessel_K);

struct HorizonResult {
    double L = 0.0;
    double guaranteed_lower = 0.0;  // c - C M e^{2 omega L}
};

/// Smallest horizon L on a search grid with c - C M e^{2 omega L} > 0.
HorizonResult finite_horizon(const FrameBounds& continuous_bounds, double M, double omega);

struct GridFrameReport {
    FrameBounds discrete;
    double scale = 1.0;  // step (uniform) or mean gap (finite)
    double scaled_lower = 0.0;
    double scaled_upper = 0.0;
    bool is_frame = false;
    double rel_deviation_lower = 0.0;
    bool within_band = false;
    double band_tol = 0.0;
};

/// Frame bounds of the sampled system, compared against the continuous
/// bounds through the Riemann-sum scaling step * (discrete bounds).
GridFrameReport verify_grid_frame(const Spectrum& spec, const VectorSet& g, const TimeGrid& grid,
                                  const FrameBounds& continuous_bounds, double band_tol = 0.05);

struct DichotomyVerdict {
    bool margin_positive = false;
    bool finite_horizon_frame = false;
    bool finite_grid_frame = false;
    double margin = 0.0;
    double horizon_L = 0.0;
    std::vector<int> trend_dimensions;
    std::vector<double> margin_trend;
};

/// Numerical check of the three equivalent legs of the stability corollary
/// at this truncation; optionally reports the margin trend over a sweep of
/// growing dimensions of the generated spectrum.
DichotomyVerdict stability_dichotomy(const Spectrum& spec, const VectorSet& g,
                                     const FrameBounds& continuous_bounds,
                                     const SpectrumGenerator* generator = nullptr,
                                     const std::vector<int>* sweep = nullptr);

}  // namespace dynsamp
