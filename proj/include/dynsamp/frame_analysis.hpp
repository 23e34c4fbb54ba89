#pragma once

// Closed-form quadratic forms for the continuous and discrete sampling
// energies, frame-bound extraction, the Cayley transform carrying one
// problem into the other, and independent brute-force oracles.

#include <vector>

#include <Eigen/Dense>

#include "dynsamp/operators.hpp"

namespace dynsamp {

enum class VectorKind { continuous_g, discrete_a };

/// m x N coefficient table; row i holds the vector g^i (or a^i) in
/// eigencoordinates.
struct VectorSet {
    Eigen::MatrixXcd coeffs;
    VectorKind kind;

    int m() const { return static_cast<int>(coeffs.rows()); }
    int dim() const { return static_cast<int>(coeffs.cols()); }
};

VectorSet make_vector_set(Eigen::MatrixXcd coeffs, VectorKind kind);

enum class QuadSource { continuous, discrete };

/// Hermitian positive semidefinite matrix M with c* M c = total sampling
/// energy of the analyzed vector c.
struct QuadForm {
    Eigen::MatrixXcd matrix;
    QuadSource source;

    int dim() const { return static_cast<int>(matrix.rows()); }
};

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
    int dimension = 0;
    /// Set when lower < 1e-10 * upper; the truncated system is rank
    /// deficient up to conditioning and should be treated as not a frame.
    bool numerically_zero = false;
};

/// M[j][k] = sum_i g^i_j conj(g^i_k) / (lambda_j + conj(lambda_k)); equals
/// the quadratic form c -> sum_i int_0^inf |<e^{tA} g^i, c>|^2 dt.
QuadForm quadform_continuous(const Spectrum& spec, const VectorSet& g);

/// M[j][k] = sum_i a^i_j conj(a^i_k) / (1 - eta_j conj(eta_k)); equals the
/// quadratic form c -> sum_i sum_{n>=0} |<A^n a^i, c>|^2.
QuadForm quadform_discrete(const std::vector<hardy::DiscPoint>& etas, const VectorSet& a);

struct CayleyData {
    std::vector<hardy::DiscPoint> etas;  // eta_j = h(lambda_j)
    VectorSet a;                         // a^i_j = sqrt(2)/(1 + lambda_j) g^i_j
};

/// Transports the continuous system (spec, g) to the equivalent discrete
/// one; quadform_continuous(spec, g) == quadform_discrete(etas, a) exactly.
CayleyData cayley_transform_vectors(const Spectrum& spec, const VectorSet& g);

/// Extreme eigenvalues of a Hermitian quadratic form: the optimal frame
/// constants of the truncated system.
FrameBounds frame_bounds(const QuadForm& q);

/// Adaptive Gauss-Legendre quadrature of sum_i int_0^{t_max} |<e^{tA} g^i, c>|^2 dt
/// plus an analytic tail bound <= tol. Independent of the closed form.
double oracle_continuous(const Spectrum& spec, const VectorSet& g,
                         const Eigen::VectorXcd& c, double t_max, double tol);

/// Same, with t_max chosen from the stability margin so the dropped tail
/// is below tol/2.
double oracle_continuous(const Spectrum& spec, const VectorSet& g,
                         const Eigen::VectorXcd& c, double tol);

/// Truncated power sums of sum_i sum_{n>=0} |<A^n a^i, c>|^2 with the cutoff
/// chosen from the geometric tail bound; absolute error <= tol.
double oracle_discrete(const std::vector<hardy::DiscPoint>& etas, const VectorSet& a,
                       const Eigen::VectorXcd& c, double tol);

/// Quadratic form rewritten in ambient coordinates, B^{-*} M B^{-1}; frame
/// bounds transform by at most condition_number^2.
QuadForm riesz_basis_conjugate(const QuadForm& q, const BasisChange& basis);

/// Largest eigenvalue of sum_i g^i (g^i)^*: the exact Bessel constant of a
/// finite vector family.
double bessel_constant(const VectorSet& g);

}  // namespace dynsamp
