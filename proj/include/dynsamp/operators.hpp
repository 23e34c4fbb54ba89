#pragma once

// The evolution model: a diagonal (or Riesz-basis diagonalizable) bounded
// operator A with A e_j = -lambda_j e_j, lambda_j in the right half plane.
// Sign convention throughout the library: the spectrum stores lambda_j with
// Re(lambda_j) > 0 and the semigroup acts as e^{-t lambda_j}.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "dynsamp/hardy.hpp"

namespace dynsamp {

/// Eigenvalue sequence {lambda_j} at a finite truncation dimension N.
/// Repeated values are allowed.
class Spectrum {
public:
    explicit Spectrum(std::vector<hardy::HalfPlanePoint> lambdas);
    static Spectrum from_values(const std::vector<cplx>& values);

    int dimension() const { return static_cast<int>(points_.size()); }
    const std::vector<hardy::HalfPlanePoint>& points() const { return points_; }
    cplx lambda(int j) const { return points_[static_cast<size_t>(j)].value(); }
    Eigen::VectorXcd lambdas() const;

    /// min_j Re(lambda_j); positive at every finite truncation.
    double margin() const;
    double max_modulus() const;

private:
    std::vector<hardy::HalfPlanePoint> points_;
};

/// Produces lambda_j for arbitrary 1-based index j; used to sweep growing
/// truncations of one underlying infinite spectrum.
using SpectrumGenerator = std::function<cplx(int j)>;

Spectrum truncate(const SpectrumGenerator& gen, int n);

struct StabilityReport {
    double margin;  // inf_j Re(lambda_j)
    double omega;   // decay rate of ||e^{tA}|| <= e^{omega t}, = -margin
    bool stable;
};

/// Change of coordinates to a Riesz basis given by the matrix columns.
class BasisChange {
public:
    explicit BasisChange(Eigen::MatrixXcd matrix);

    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    double condition_number() const { return condition_number_; }

private:
    Eigen::MatrixXcd matrix_;
    double condition_number_;
};

/// (e^{-t lambda_j} v_j)_j for t >= 0.
Eigen::VectorXcd semigroup_apply(const Spectrum& spec, double t, const Eigen::VectorXcd& v);

/// (eta_j^n v_j)_j, the discrete iteration.
Eigen::VectorXcd power_apply(const std::vector<hardy::DiscPoint>& etas, long n,
                             const Eigen::VectorXcd& v);

StabilityReport stability(const Spectrum& spec);

/// Operator norm of e^{tA} - I for diagonal A: max_j |e^{-t lambda_j} - 1|.
double semigroup_gap_norm(const Spectrum& spec, double t);

Eigen::VectorXcd to_eigen_coords(const BasisChange& basis, const Eigen::VectorXcd& ambient);
Eigen::VectorXcd from_eigen_coords(const BasisChange& basis, const Eigen::VectorXcd& coords);

}  // namespace dynsamp
