#pragma once

// Structural necessary-and-sufficient checker for the semi-continuous frame
// property: d/alpha factorization of the sampling vectors, atomic Carleson
// measure test, pseudo-hyperbolic separation, local alpha-matrix lower
// bounds, and the m = 1 interpolating-sequence specialization.

#include <vector>

#include "dynsamp/frame_analysis.hpp"

namespace dynsamp {

struct FactorizationResult {
    Eigen::VectorXd d;        // d_j > 0
    Eigen::MatrixXcd alpha;   // m x N, unit columns
    double C_bound = 1.0;     // max(sup d, sup 1/d)
};

struct CarlesonReport {
    bool is_carleson = false;
    double constant_estimate = 0.0;
    int witness_index = -1;  // index attaining the row-sum supremum
    double threshold = 0.0;
};

struct SeparationReport {
    double beta = 0.0;
    int max_count = 0;
    bool satisfied = false;
};

struct ClusterMatrixReport {
    double gamma = 0.0;
    double min_sigma_sq = 0.0;  // smallest squared singular value over clusters
    double D_estimate = 0.0;
    bool satisfied = false;
};

struct ConditionConfig {
    double carleson_threshold = 50.0;
    std::vector<double> beta_grid;   // defaults to 16 log-spaced values in [0.05, 0.95]
    std::vector<double> gamma_fractions;  // fractions of beta; defaults to {1/2, 1/4, 1/8}
    double interpolating_floor = 1e-4;
    double cluster_floor = 1e-8;  // min_sigma_sq below this counts as failed
    double factorization_C_threshold = 100.0;  // C_bound above this fails (ii)
};

ConditionConfig default_condition_config();

/// d_j = sqrt(sum_i |g^i_j|^2 / Re lambda_j), alpha^i_j = g^i_j / (d_j sqrt(Re lambda_j)),
/// normalizing to the unconjugated convention g^i_j = d_j alpha^i_j sqrt(Re lambda_j).
FactorizationResult factorize_vectors(const Spectrum& spec, const VectorSet& g);

/// Row-sum characterization of the atomic measure sum_j (1-|eta_j|^2) delta_{eta_j}:
/// constant = sup_j sum_k (1-|eta_j|^2)(1-|eta_k|^2) / |1 - conj(eta_j) eta_k|^2.
CarlesonReport carleson_test(const std::vector<hardy::DiscPoint>& etas, double threshold);

/// Largest beta in the grid such that every pseudo-hyperbolic ball
/// Delta(eta_j, beta) contains at most m points of the multiset.
SeparationReport separation_test(const std::vector<hardy::DiscPoint>& etas, int m,
                                 const std::vector<double>& beta_grid);

/// For each gamma < beta in the grid: anchor a cluster at every j, form the
/// m x p matrix of alpha columns, track the smallest squared singular value.
/// Returns the best gamma found.
ClusterMatrixReport cluster_matrix_test(const std::vector<hardy::DiscPoint>& etas,
                                        const Eigen::MatrixXcd& alpha, double beta,
                                        const std::vector<double>& gamma_grid,
                                        double cluster_floor = 1e-8);

struct InterpolatingReport {
    std::vector<int> truncations;
    std::vector<double> min_eigs;
    std::vector<double> max_eigs;
    bool interpolating = false;
    double floor = 0.0;
    double carleson_constant = 0.0;
    double min_separation = 0.0;  // min pairwise rho of h(lambda_j)
};

/// Normalized-kernel Gram eigenvalue sweep for m = 1 canonical vectors,
/// cross-reported with the Carleson constant and pairwise separation.
InterpolatingReport interpolating_test_m1(const std::vector<hardy::HalfPlanePoint>& lambdas,
                                          const ConditionConfig& config = default_condition_config());

struct ConditionReport {
    FactorizationResult factorization;
    CarlesonReport carleson;
    SeparationReport separation;
    ClusterMatrixReport cluster;
    bool structural_verdict = false;
    FrameBounds numerical;
    bool verdicts_agree = false;
};

/// Runs the full condition battery on (spec, g) and cross-reports the
/// structural verdict against the truncated numerical frame bounds.
ConditionReport full_theorem_check(const Spectrum& spec, const VectorSet& g,
                                   const ConditionConfig& config = default_condition_config());

}  // namespace dynsamp
