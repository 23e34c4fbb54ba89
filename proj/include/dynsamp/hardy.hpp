#pragma once

// Reproducing kernels of H^2 on the unit disc and the right half plane,
// the self-inverse Moebius map exchanging the two domains, and the
// pseudo-hyperbolic geometry of the disc.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dynsamp/errors.hpp"

namespace dynsamp {

using cplx = std::complex<double>;

namespace hardy {

/// Point of the open unit disc. Membership is strict: |z| < 1 with zero
/// tolerance; callers wanting a safety margin must shrink their input.
class DiscPoint {
public:
    explicit DiscPoint(cplx z);
    cplx value() const { return z_; }

private:
    cplx z_;
};

/// Point of the open right half plane, Re(z) > 0 strictly.
class HalfPlanePoint {
public:
    explicit HalfPlanePoint(cplx z);
    cplx value() const { return z_; }

private:
    cplx z_;
};

enum class KernelSpace { disc, halfplane };

/// Hermitian matrix of kernel inner products <k_{p_k}, k_{p_j}>.
struct KernelGram {
    Eigen::MatrixXcd entries;
    KernelSpace space;
};

/// h(z) = (1 - z)/(1 + z). Self-inverse; maps the disc onto the right
/// half plane and back. Throws validation_error at the pole z = -1.
cplx mobius(cplx z);

/// Disc kernel k_s(z) = 1/(1 - z * conj(s)).
cplx kernel_disc(const DiscPoint& s, const DiscPoint& z);

/// Half-plane kernel k_s(z) = 1/(2 pi (z + conj(s))).
cplx kernel_halfplane(const HalfPlanePoint& s, const HalfPlanePoint& z);

/// Scalar c(s) with V^{-1}(k_s^{C+}) = c(s) * k_{h(s)}^{D}, where V is the
/// isometry between the two Hardy spaces: c(s) = 1/(sqrt(pi)(1 + conj(s))).
cplx kernel_transfer_coeff(const HalfPlanePoint& s);

/// rho(z, w) = |z - w| / |1 - conj(z) w|, in [0, 1).
double pseudo_hyperbolic(const DiscPoint& z, const DiscPoint& w);

KernelGram gram(const std::vector<DiscPoint>& points);
KernelGram gram(const std::vector<HalfPlanePoint>& points);

}  // namespace hardy
}  // namespace dynsamp
