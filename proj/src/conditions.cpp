#include "dynsamp/conditions.hpp"

#include <algorithm>
#include <cmath>

namespace dynsamp {

ConditionConfig default_condition_config() {
    ConditionConfig cfg;
    const int n_beta = 16;
    const double lo = 0.05, hi = 0.95;
    for (int i = 0; i < n_beta; ++i)
        cfg.beta_grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n_beta - 1)));
    cfg.gamma_fractions = {0.5, 0.25, 0.125};
    return cfg;
}

FactorizationResult factorize_vectors(const Spectrum& spec, const VectorSet& g) {
    if (g.kind != VectorKind::continuous_g)
        throw validation_error("factorize_vectors: expects a continuous_g vector set");
    if (g.dim() != spec.dimension())
        throw validation_error("factorize_vectors: dimension mismatch");
    const int n = spec.dimension();
    FactorizationResult result;
    result.d.resize(n);
    result.alpha.resize(g.m(), n);
    for (int j = 0; j < n; ++j) {
        double col_norm_sq = 0.0;
        for (int i = 0; i < g.m(); ++i) col_norm_sq += std::norm(g.coeffs(i, j));
        if (col_norm_sq == 0.0)
            throw numerical_error("factorize_vectors: dead coordinate at index " +
                                  std::to_string(j) + ", system cannot be complete");
        const double re = spec.lambda(j).real();
        const double dj = std::sqrt(col_norm_sq / re);
        result.d(j) = dj;
        result.alpha.col(j) = g.coeffs.col(j) / (dj * std::sqrt(re));
        result.C_bound = std::max({result.C_bound, dj, 1.0 / dj});
    }
    return result;
}

CarlesonReport carleson_test(const std::vector<hardy::DiscPoint>& etas, double threshold) {
    if (etas.empty()) throw validation_error("carleson_test: empty point list");
    CarlesonReport report;
    report.threshold = threshold;
    const size_t n = etas.size();
    std::vector<double> weight(n);
    for (size_t j = 0; j < n; ++j) weight[j] = 1.0 - std::norm(etas[j].value());
    for (size_t j = 0; j < n; ++j) {
        double row = 0.0;
        for (size_t k = 0; k < n; ++k) {
            const double denom =
                std::norm(1.0 - std::conj(etas[j].value()) * etas[k].value());
            row += weight[j] * weight[k] / denom;
        }
        if (row > report.constant_estimate) {
            report.constant_estimate = row;
            report.witness_index = static_cast<int>(j);
        }
    }
    report.is_carleson = report.constant_estimate <= threshold;
    return report;
}

namespace {

// Multiset count of points within pseudo-hyperbolic distance < radius of
// eta_j, including j itself.
int max_ball_count(const std::vector<hardy::DiscPoint>& etas, double radius) {
    int worst = 0;
    for (size_t j = 0; j < etas.size(); ++j) {
        int count = 0;
        for (size_t k = 0; k < etas.size(); ++k)
            if (hardy::pseudo_hyperbolic(etas[j], etas[k]) < radius) ++count;
        worst = std::max(worst, count);
    }
    return worst;
}

}  // namespace

SeparationReport separation_test(const std::vector<hardy::DiscPoint>& etas, int m,
                                 const std::vector<double>& beta_grid) {
    if (m < 1) throw validation_error("separation_test: m must be >= 1");
    SeparationReport report;
    for (double beta : beta_grid) {
        const int count = max_ball_count(etas, beta);
        if (count <= m && beta > report.beta) {
            report.beta = beta;
            report.max_count = count;
            report.satisfied = true;
        }
    }
    if (!report.satisfied && !beta_grid.empty())
        report.max_count = max_ball_count(etas, *std::min_element(beta_grid.begin(), beta_grid.end()));
    return report;
}

ClusterMatrixReport cluster_matrix_test(const std::vector<hardy::DiscPoint>& etas,
                                        const Eigen::MatrixXcd& alpha, double beta,
                                        const std::vector<double>& gamma_grid,
                                        double cluster_floor) {
    if (alpha.cols() != static_cast<Eigen::Index>(etas.size()))
        throw validation_error("cluster_matrix_test: alpha columns must match point count");
    const int m = static_cast<int>(alpha.rows());
    ClusterMatrixReport best;
    for (double gamma : gamma_grid) {
        if (gamma <= 0.0 || gamma >= beta) continue;
        double min_sigma_sq = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < etas.size(); ++j) {
            std::vector<Eigen::Index> cluster;
            for (size_t k = 0; k < etas.size(); ++k)
                if (hardy::pseudo_hyperbolic(etas[j], etas[k]) < gamma)
                    cluster.push_back(static_cast<Eigen::Index>(k));
            if (static_cast<int>(cluster.size()) > m)
                throw validation_error(
                    "cluster_matrix_test: cluster exceeds m points, separation precondition violated");
            Eigen::MatrixXcd block(m, static_cast<Eigen::Index>(cluster.size()));
            for (size_t l = 0; l < cluster.size(); ++l) block.col(static_cast<Eigen::Index>(l)) = alpha.col(cluster[l]);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
            const double smin = svd.singularValues().minCoeff();
            min_sigma_sq = std::min(min_sigma_sq, smin * smin);
        }
        if (min_sigma_sq > best.min_sigma_sq || best.gamma == 0.0) {
            best.gamma = gamma;
            best.min_sigma_sq = min_sigma_sq;
            best.D_estimate = min_sigma_sq;
        }
    }
    best.satisfied = best.gamma > 0.0 && best.min_sigma_sq > cluster_floor;
    return best;
}

InterpolatingReport interpolating_test_m1(const std::vector<hardy::HalfPlanePoint>& lambdas,
                                          const ConditionConfig& config) {
    const int n = static_cast<int>(lambdas.size());
    if (n < 1) throw validation_error("interpolating_test_m1: empty sequence");
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            if (lambdas[static_cast<size_t>(j)].value() == lambdas[static_cast<size_t>(k)].value())
                throw validation_error("interpolating_test_m1: duplicate point");

    // Normalized-kernel Gram of the full sequence; truncations take leading
    // principal blocks.
    Eigen::MatrixXcd gram(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const cplx num = hardy::kernel_halfplane(lambdas[static_cast<size_t>(k)],
                                                     lambdas[static_cast<size_t>(j)]);
            const double njj =
                hardy::kernel_halfplane(lambdas[static_cast<size_t>(j)], lambdas[static_cast<size_t>(j)]).real();
            const double nkk =
                hardy::kernel_halfplane(lambdas[static_cast<size_t>(k)], lambdas[static_cast<size_t>(k)]).real();
            gram(j, k) = num / std::sqrt(njj * nkk);
        }

    InterpolatingReport report;
    report.floor = config.interpolating_floor;
    for (int trunc = std::min(4, n); ; trunc = std::min(trunc * 2, n)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram.topLeftCorner(trunc, trunc));
        if (solver.info() != Eigen::Success)
            throw numerical_error("interpolating_test_m1: eigen-solve failed");
        report.truncations.push_back(trunc);
        report.min_eigs.push_back(solver.eigenvalues().minCoeff());
        report.max_eigs.push_back(solver.eigenvalues().maxCoeff());
        if (trunc == n) break;
    }
    report.interpolating = report.min_eigs.back() >= config.interpolating_floor;

    std::vector<hardy::DiscPoint> etas;
    etas.reserve(static_cast<size_t>(n));
    for (const auto& lam : lambdas) etas.emplace_back(hardy::mobius(lam.value()));
    report.carleson_constant = carleson_test(etas, config.carleson_threshold).constant_estimate;
    report.min_separation = 1.0;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            report.min_separation = std::min(
                report.min_separation,
                hardy::pseudo_hyperbolic(etas[static_cast<size_t>(j)], etas[static_cast<size_t>(k)]));
    return report;
}

ConditionReport full_theorem_check(const Spectrum& spec, const VectorSet& g,
                                   const ConditionConfig& config) {
    ConditionReport report;
    report.factorization = factorize_vectors(spec, g);

    std::vector<hardy::DiscPoint> etas;
    etas.reserve(static_cast<size_t>(spec.dimension()));
    for (int j = 0; j < spec.dimension(); ++j) etas.emplace_back(hardy::mobius(spec.lambda(j)));

    report.carleson = carleson_test(etas, config.carleson_threshold);
    report.separation = separation_test(etas, g.m(), config.beta_grid);
    if (report.separation.satisfied) {
        std::vector<double> gamma_grid;
        for (double f : config.gamma_fractions) gamma_grid.push_back(f * report.separation.beta);
        report.cluster = cluster_matrix_test(etas, report.factorization.alpha,
                                             report.separation.beta, gamma_grid,
                                             config.cluster_floor);
    }
    report.structural_verdict = report.carleson.is_carleson && report.separation.satisfied &&
                                report.cluster.satisfied &&
                                report.factorization.C_bound <= config.factorization_C_threshold;

    report.numerical = frame_bounds(quadform_continuous(spec, g));
    const bool numerically_frame = report.numerical.lower > 0.0 && !report.numerical.numerically_zero;
    report.verdicts_agree = (report.structural_verdict == numerically_frame);
    return report;
}

}  // namespace dynsamp
