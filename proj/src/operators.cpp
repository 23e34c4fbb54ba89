#include "dynsamp/operators.hpp"

#include <algorithm>
#include <cmath>

namespace dynsamp {

Spectrum::Spectrum(std::vector<hardy::HalfPlanePoint> lambdas) : points_(std::move(lambdas)) {
    if (points_.empty()) throw validation_error("Spectrum: needs at least one eigenvalue");
}

Spectrum Spectrum::from_values(const std::vector<cplx>& values) {
    std::vector<hardy::HalfPlanePoint> pts;
    pts.reserve(values.size());
    for (cplx v : values) pts.emplace_back(v);
    return Spectrum(std::move(pts));
}

Eigen::VectorXcd Spectrum::lambdas() const {
    Eigen::VectorXcd out(dimension());
    for (int j = 0; j < dimension(); ++j) out(j) = lambda(j);
    return out;
}

double Spectrum::margin() const {
    double m = points_[0].value().real();
    for (const auto& p : points_) m = std::min(m, p.value().real());
    return m;
}

double Spectrum::max_modulus() const {
    double m = 0.0;
    for (const auto& p : points_) m = std::max(m, std::abs(p.value()));
    return m;
}

Spectrum truncate(const SpectrumGenerator& gen, int n) {
    if (n < 1) throw validation_error("truncate: dimension must be >= 1");
    std::vector<cplx> values(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) values[static_cast<size_t>(j - 1)] = gen(j);
    return Spectrum::from_values(values);
}

BasisChange::BasisChange(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
        throw validation_error("BasisChange: matrix must be square and nonempty");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix_);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0) throw validation_error("BasisChange: matrix is singular");
    condition_number_ = smax / smin;
    if (condition_number_ >= 1e8)
        throw validation_error("BasisChange: condition number exceeds 1e8, not a usable Riesz basis");
}

Eigen::VectorXcd semigroup_apply(const Spectrum& spec, double t, const Eigen::VectorXcd& v) {
    if (t < 0.0) throw validation_error("semigroup_apply: t must be >= 0");
    if (v.size() != spec.dimension())
        throw validation_error("semigroup_apply: dimension mismatch");
    Eigen::VectorXcd out(v.size());
    for (int j = 0; j < spec.dimension(); ++j)
        out(j) = std::exp(-t * spec.lambda(j)) * v(j);
    return out;
}

Eigen::VectorXcd power_apply(const std::vector<hardy::DiscPoint>& etas, long n,
                             const Eigen::VectorXcd& v) {
    if (n < 0) throw validation_error("power_apply: n must be >= 0");
    if (v.size() != static_cast<Eigen::Index>(etas.size()))
        throw validation_error("power_apply: dimension mismatch");
    Eigen::VectorXcd out(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j)
        out(j) = std::pow(etas[static_cast<size_t>(j)].value(), static_cast<double>(n)) * v(j);
    return out;
}

StabilityReport stability(const Spectrum& spec) {
    const double margin = spec.margin();
    return StabilityReport{margin, -margin, margin > 0.0};
}

double semigroup_gap_norm(const Spectrum& spec, double t) {
    if (t < 0.0) throw validation_error("semigroup_gap_norm: t must be >= 0");
    double gap = 0.0;
    for (int j = 0; j < spec.dimension(); ++j)
        gap = std::max(gap, std::abs(std::exp(-t * spec.lambda(j)) - 1.0));
    return gap;
}

Eigen::VectorXcd to_eigen_coords(const BasisChange& basis, const Eigen::VectorXcd& ambient) {
    if (ambient.size() != basis.matrix().rows())
        throw validation_error("to_eigen_coords: dimension mismatch");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(basis.matrix());
    Eigen::VectorXcd coords = lu.solve(ambient);
    if (!coords.allFinite()) throw numerical_error("to_eigen_coords: solve failed");
    return coords;
}

Eigen::VectorXcd from_eigen_coords(const BasisChange& basis, const Eigen::VectorXcd& coords) {
    if (coords.size() != basis.matrix().cols())
        throw validation_error("from_eigen_coords: dimension mismatch");
    return basis.matrix() * coords;
}

}  // namespace dynsamp
