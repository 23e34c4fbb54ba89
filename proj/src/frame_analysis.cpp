#include "dynsamp/frame_analysis.hpp"

#include <cmath>

namespace dynsamp {

namespace {

void hermitize(Eigen::MatrixXcd& m) {
    m = 0.5 * (m + m.adjoint()).eval();
}

}  // namespace

VectorSet make_vector_set(Eigen::MatrixXcd coeffs, VectorKind kind) {
    if (coeffs.rows() < 1 || coeffs.cols() < 1)
        throw validation_error("VectorSet: needs m >= 1 vectors of dimension N >= 1");
    if (!coeffs.allFinite())
        throw validation_error("VectorSet: entries must be finite");
    return VectorSet{std::move(coeffs), kind};
}

QuadForm quadform_continuous(const Spectrum& spec, const VectorSet& g) {
    if (g.kind != VectorKind::continuous_g)
        throw validation_error("quadform_continuous: expects a continuous_g vector set");
    if (g.dim() != spec.dimension())
        throw validation_error("quadform_continuous: dimension mismatch");
    const int n = spec.dimension();
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            cplx s = 0.0;
            for (int i = 0; i < g.m(); ++i)
                s += g.coeffs(i, j) * std::conj(g.coeffs(i, k));
            m(j, k) = s / (spec.lambda(j) + std::conj(spec.lambda(k)));
        }
    hermitize(m);
    return QuadForm{std::move(m), QuadSource::continuous};
}

QuadForm quadform_discrete(const std::vector<hardy::DiscPoint>& etas, const VectorSet& a) {
    if (a.kind != VectorKind::discrete_a)
        throw validation_error("quadform_discrete: expects a discrete_a vector set");
    if (a.dim() != static_cast<int>(etas.size()))
        throw validation_error("quadform_discrete: dimension mismatch");
    const int n = a.dim();
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            cplx s = 0.0;
            for (int i = 0; i < a.m(); ++i)
                s += a.coeffs(i, j) * std::conj(a.coeffs(i, k));
            m(j, k) = s / (1.0 - etas[static_cast<size_t>(j)].value() *
                                     std::conj(etas[static_cast<size_t>(k)].value()));
        }
    hermitize(m);
    return QuadForm{std::move(m), QuadSource::discrete};
}

CayleyData cayley_transform_vectors(const Spectrum& spec, const VectorSet& g) {
    if (g.kind != VectorKind::continuous_g)
        throw validation_error("cayley_transform_vectors: expects a continuous_g vector set");
    if (g.dim() != spec.dimension())
        throw validation_error("cayley_transform_vectors: dimension mismatch");
    const int n = spec.dimension();
    std::vector<hardy::DiscPoint> etas;
    etas.reserve(static_cast<size_t>(n));
    Eigen::MatrixXcd a(g.m(), n);
    const double sqrt2 = std::sqrt(2.0);
    for (int j = 0; j < n; ++j) {
        const cplx lam = spec.lambda(j);
        etas.emplace_back(hardy::mobius(lam));
        a.col(j) = (sqrt2 / (1.0 + lam)) * g.coeffs.col(j);
    }
    return CayleyData{std::move(etas), VectorSet{std::move(a), VectorKind::discrete_a}};
}

FrameBounds frame_bounds(const QuadForm& q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(q.matrix);
    if (solver.info() != Eigen::Success)
        throw numerical_error("frame_bounds: Hermitian eigen-solve failed");
    double lower = solver.eigenvalues().minCoeff();
    const double upper = solver.eigenvalues().maxCoeff();
    if (lower < -1e-8 * std::max(1.0, upper))
        throw invariant_error("frame_bounds: quadratic form is not positive semidefinite");
    if (lower < 0.0) lower = 0.0;
    FrameBounds fb;
    fb.lower = lower;
    fb.upper = upper;
    fb.dimension = q.dim();
    fb.numerically_zero = (lower < 1e-10 * upper);
    return fb;
}

namespace {

// Legendre nodes and weights on [-1, 1] by Newton iteration.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<size_t>(i)] = x;
        rule.weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussRule& gl15() {
    static const GaussRule rule = gauss_legendre(15);
    return rule;
}

double sample_energy(const Spectrum& spec, const VectorSet& g, const Eigen::VectorXcd& c,
                     double t) {
    double total = 0.0;
    for (int i = 0; i < g.m(); ++i) {
        cplx inner = 0.0;
        for (int j = 0; j < spec.dimension(); ++j)
            inner += std::exp(-t * spec.lambda(j)) * g.coeffs(i, j) * std::conj(c(j));
        total += std::norm(inner);
    }
    return total;
}

double gl_panel(const Spectrum& spec, const VectorSet& g, const Eigen::VectorXcd& c,
                double a, double b) {
    const GaussRule& rule = gl15();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * sample_energy(spec, g, c, mid + half * rule.nodes[i]);
    return half * acc;
}

double adaptive_panel(const Spectrum& spec, const VectorSet& g, const Eigen::VectorXcd& c,
                      double a, double b, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gl_panel(spec, g, c, a, mid);
    const double right = gl_panel(spec, g, c, mid, b);
    if (depth >= 30 || std::abs(left + right - whole) <= tol) return left + right;
    return adaptive_panel(spec, g, c, a, mid, left, 0.5 * tol, depth + 1) +
           adaptive_panel(spec, g, c, mid, b, right, 0.5 * tol, depth + 1);
}

// B with sum_i int_T^inf |<e^{tA} g^i, c>|^2 dt <= B e^{-2 margin T} / (2 margin).
double tail_coefficient(const Spectrum& spec, const VectorSet& g, const Eigen::VectorXcd& c) {
    double total = 0.0;
    for (int i = 0; i < g.m(); ++i) {
        double s = 0.0;
        for (int j = 0; j < spec.dimension(); ++j)
            s += std::abs(g.coeffs(i, j)) * std::abs(c(j));
        total += s * s;
    }
    return total;
}

}  // namespace

double oracle_continuous(const Spectrum& spec, const VectorSet& g, const Eigen::VectorXcd& c,
                         double t_max, double tol) {
    if (g.kind != VectorKind::continuous_g)
        throw validation_error("oracle_continuous: expects a continuous_g vector set");
    if (c.size() != spec.dimension() || g.dim() != spec.dimension())
        throw validation_error("oracle_continuous: dimension mismatch");
    if (t_max <= 0.0) return 0.0;
    // A handful of panels up front keeps the recursion shallow for
    // oscillatory spectra.
    const int panels = 8;
    const double h = t_max / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        const double b = a + h;
        acc += adaptive_panel(spec, g, c, a, b, gl_panel(spec, g, c, a, b), tol / panels, 0);
    }
    return acc;
}

double oracle_continuous(const Spectrum& spec, const VectorSet& g, const Eigen::VectorXcd& c,
                         double tol) {
    const double margin = spec.margin();
    if (margin <= 0.0)
        throw numerical_error("oracle_continuous: tail not bounded, spectrum not stable");
    const double b = tail_coefficient(spec, g, c);
    if (b == 0.0) return 0.0;
    // e^{-2 margin T} B / (2 margin) <= tol  <=>  T >= log(B / (2 margin tol)) / (2 margin)
    const double t_max = std::max(1.0, std::log(b / (2.0 * margin * tol)) / (2.0 * margin));
    return oracle_continuous(spec, g, c, t_max, tol);
}

double oracle_discrete(const std::vector<hardy::DiscPoint>& etas, const VectorSet& a,
                       const Eigen::VectorXcd& c, double tol) {
    if (a.kind != VectorKind::discrete_a)
        throw validation_error("oracle_discrete: expects a discrete_a vector set");
    if (c.size() != a.dim() || a.dim() != static_cast<int>(etas.size()))
        throw validation_error("oracle_discrete: dimension mismatch");
    double r = 0.0;
    for (const auto& eta : etas) r = std::max(r, std::abs(eta.value()));
    double b = 0.0;
    for (int i = 0; i < a.m(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.dim(); ++j) s += std::abs(a.coeffs(i, j)) * std::abs(c(j));
        b += s * s;
    }
    if (b == 0.0) return 0.0;
    long n_stop = 0;
    if (r > 0.0) {
        const double bound = std::log(tol * (1.0 - r * r) / b) / std::log(r * r);
        n_stop = std::max<long>(0, static_cast<long>(std::ceil(bound)));
    }
    double acc = 0.0;
    std::vector<cplx> powers(etas.size(), cplx(1.0, 0.0));
    for (long n = 0; n <= n_stop; ++n) {
        for (int i = 0; i < a.m(); ++i) {
            cplx inner = 0.0;
            for (int j = 0; j < a.dim(); ++j)
                inner += powers[static_cast<size_t>(j)] * a.coeffs(i, j) * std::conj(c(j));
            acc += std::norm(inner);
        }
        for (size_t j = 0; j < etas.size(); ++j) powers[j] *= etas[j].value();
    }
    return acc;
}

QuadForm riesz_basis_conjugate(const QuadForm& q, const BasisChange& basis) {
    if (q.dim() != static_cast<int>(basis.matrix().rows()))
        throw validation_error("riesz_basis_conjugate: dimension mismatch");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(basis.matrix());
    const Eigen::MatrixXcd inv = lu.inverse();
    if (!inv.allFinite()) throw numerical_error("riesz_basis_conjugate: singular basis");
    Eigen::MatrixXcd m = inv.adjoint() * q.matrix * inv;
    hermitize(m);
    return QuadForm{std::move(m), q.source};
}

double bessel_constant(const VectorSet& g) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g.coeffs);
    const double smax = svd.singularValues().maxCoeff();
    return smax * smax;
}

}  // namespace dynsamp
