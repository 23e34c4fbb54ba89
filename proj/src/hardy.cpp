#include "dynsamp/hardy.hpp"

#include <cmath>
#include <numbers>

namespace dynsamp::hardy {

namespace {

bool finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

DiscPoint::DiscPoint(cplx z) : z_(z) {
    if (!finite(z)) throw validation_error("DiscPoint: components must be finite");
    if (std::abs(z) >= 1.0) throw validation_error("DiscPoint: |z| < 1 violated");
}

HalfPlanePoint::HalfPlanePoint(cplx z) : z_(z) {
    if (!finite(z)) throw validation_error("HalfPlanePoint: components must be finite");
    if (z.real() <= 0.0) throw validation_error("HalfPlanePoint: Re(z) > 0 violated");
}

cplx mobius(cplx z) {
    if (z == cplx(-1.0, 0.0)) throw validation_error("mobius: pole at z = -1");
    return (1.0 - z) / (1.0 + z);
}

cplx kernel_disc(const DiscPoint& s, const DiscPoint& z) {
    return 1.0 / (1.0 - z.value() * std::conj(s.value()));
}

cplx kernel_halfplane(const HalfPlanePoint& s, const HalfPlanePoint& z) {
    return 1.0 / (2.0 * std::numbers::pi * (z.value() + std::conj(s.value())));
}

cplx kernel_transfer_coeff(const HalfPlanePoint& s) {
    return 1.0 / (std::sqrt(std::numbers::pi) * (1.0 + std::conj(s.value())));
}

double pseudo_hyperbolic(const DiscPoint& z, const DiscPoint& w) {
    return std::abs(z.value() - w.value()) /
           std::abs(1.0 - std::conj(z.value()) * w.value());
}

namespace {

template <typename Point, typename Kernel>
KernelGram gram_impl(const std::vector<Point>& points, Kernel k, KernelSpace space) {
    if (points.empty()) throw validation_error("gram: point list must be nonempty");
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < n; ++l)
            g(j, l) = k(points[l], points[j]);  // <k_{p_l}, k_{p_j}> = k_{p_l}(p_j)
    return KernelGram{std::move(g), space};
}

}  // namespace

KernelGram gram(const std::vector<DiscPoint>& points) {
    return gram_impl(points, kernel_disc, KernelSpace::disc);
}

KernelGram gram(const std::vector<HalfPlanePoint>& points) {
    return gram_impl(points, kernel_halfplane, KernelSpace::halfplane);
}

}  // namespace dynsamp::hardy
