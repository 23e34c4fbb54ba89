#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dynsamp/frame_analysis.hpp"

using namespace dynsamp;
using doctest::Approx;

namespace {

std::mt19937_64 rng(771220);

Spectrum random_spectrum(int n) {
    std::uniform_real_distribution<double> re(1e-3, 10.0);
    std::uniform_real_distribution<double> im(-10.0, 10.0);
    std::vector<cplx> values;
    values.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) values.emplace_back(re(rng), im(rng));
    return Spectrum::from_values(values);
}

VectorSet random_vectors(int m, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd coeffs(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) coeffs(i, j) = cplx(gauss(rng), gauss(rng));
    return make_vector_set(std::move(coeffs), VectorKind::continuous_g);
}

Eigen::VectorXcd random_vec(int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int j = 0; j < n; ++j) v(j) = cplx(gauss(rng), gauss(rng));
    return v;
}

VectorSet row(std::initializer_list<cplx> values, VectorKind kind) {
    Eigen::MatrixXcd coeffs(1, static_cast<Eigen::Index>(values.size()));
    Eigen::Index j = 0;
    for (cplx v : values) coeffs(0, j++) = v;
    return make_vector_set(std::move(coeffs), kind);
}

}  // namespace

TEST_CASE("continuous quadratic form at reference points") {
    const auto q1 = quadform_continuous(Spectrum::from_values({cplx(1, 0)}),
                                        row({cplx(1, 0)}, VectorKind::continuous_g));
    CHECK(q1.matrix(0, 0).real() == Approx(0.5).epsilon(1e-15));

    const auto q2 = quadform_continuous(Spectrum::from_values({cplx(1, 0), cplx(2, 0)}),
                                        row({cplx(1, 0), cplx(1, 0)}, VectorKind::continuous_g));
    CHECK(q2.matrix(0, 0).real() == Approx(0.5).epsilon(1e-15));
    CHECK(q2.matrix(0, 1).real() == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(q2.matrix(1, 0).real() == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(q2.matrix(1, 1).real() == Approx(0.25).epsilon(1e-15));

    const auto q0 = quadform_continuous(Spectrum::from_values({cplx(1, 0)}),
                                        row({cplx(0, 0)}, VectorKind::continuous_g));
    CHECK(q0.matrix(0, 0) == cplx(0, 0));
}

TEST_CASE("discrete quadratic form at reference points") {
    const auto q0 = quadform_discrete({hardy::DiscPoint(cplx(0, 0))},
                                      row({cplx(1, 0)}, VectorKind::discrete_a));
    CHECK(q0.matrix(0, 0) == cplx(1, 0));

    const auto q1 = quadform_discrete({hardy::DiscPoint(cplx(0.5, 0))},
                                      row({cplx(1, 0)}, VectorKind::discrete_a));
    CHECK(q1.matrix(0, 0).real() == Approx(4.0 / 3.0).epsilon(1e-15));

    const auto q2 =
        quadform_discrete({hardy::DiscPoint(cplx(0.5, 0)), hardy::DiscPoint(cplx(-0.5, 0))},
                          row({cplx(1, 0), cplx(1, 0)}, VectorKind::discrete_a));
    CHECK(q2.matrix(0, 0).real() == Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(q2.matrix(0, 1).real() == Approx(4.0 / 5.0).epsilon(1e-14));
    CHECK(q2.matrix(1, 1).real() == Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("vector kind is enforced") {
    const Spectrum one = Spectrum::from_values({cplx(1, 0)});
    CHECK_THROWS_AS(quadform_continuous(one, row({cplx(1, 0)}, VectorKind::discrete_a)),
                    validation_error);
    CHECK_THROWS_AS(quadform_discrete({hardy::DiscPoint(cplx(0, 0))},
                                      row({cplx(1, 0)}, VectorKind::continuous_g)),
                    validation_error);
}

TEST_CASE("cayley transform at reference points") {
    const Spectrum one = Spectrum::from_values({cplx(1, 0)});
    const CayleyData d1 = cayley_transform_vectors(one, row({cplx(1, 0)}, VectorKind::continuous_g));
    CHECK(d1.etas[0].value() == cplx(0, 0));
    CHECK(d1.a.coeffs(0, 0).real() == Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
    CHECK(d1.a.kind == VectorKind::discrete_a);

    // single-point identity: both quadratic forms evaluate to 1/2
    const auto qc = quadform_continuous(one, row({cplx(1, 0)}, VectorKind::continuous_g));
    const auto qd = quadform_discrete(d1.etas, d1.a);
    CHECK(qc.matrix(0, 0).real() == Approx(0.5).epsilon(1e-15));
    CHECK(qd.matrix(0, 0).real() == Approx(0.5).epsilon(1e-15));

    const Spectrum three = Spectrum::from_values({cplx(3, 0)});
    const CayleyData d3 =
        cayley_transform_vectors(three, row({cplx(1, 0)}, VectorKind::continuous_g));
    CHECK(d3.etas[0].value().real() == Approx(-0.5).epsilon(1e-15));
    CHECK(d3.a.coeffs(0, 0).real() == Approx(std::sqrt(2.0) / 4.0).epsilon(1e-15));
}

TEST_CASE("exact cayley equivalence on random systems") {
    std::uniform_int_distribution<int> dim(1, 24), mm(1, 4);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = dim(rng);
        const Spectrum spec = random_spectrum(n);
        const VectorSet g = random_vectors(mm(rng), n);
        const QuadForm cont = quadform_continuous(spec, g);
        const CayleyData data = cayley_transform_vectors(spec, g);
        const QuadForm disc = quadform_discrete(data.etas, data.a);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double ref = std::abs(cont.matrix(j, k));
                const double diff = std::abs(cont.matrix(j, k) - disc.matrix(j, k));
                CHECK(diff <= 1e-12 * std::max(ref, 1e-300));
            }
    }
}

TEST_CASE("frame bounds at reference points") {
    Eigen::MatrixXcd half(1, 1);
    half << cplx(0.5, 0);
    const FrameBounds fb1 = frame_bounds(QuadForm{half, QuadSource::continuous});
    CHECK(fb1.lower == Approx(0.5));
    CHECK(fb1.upper == Approx(0.5));
    CHECK(fb1.dimension == 1);
    CHECK_FALSE(fb1.numerically_zero);

    Eigen::MatrixXcd sym(2, 2);
    sym << cplx(4.0 / 3.0, 0), cplx(4.0 / 5.0, 0), cplx(4.0 / 5.0, 0), cplx(4.0 / 3.0, 0);
    const FrameBounds fb2 = frame_bounds(QuadForm{sym, QuadSource::discrete});
    CHECK(fb2.lower == Approx(8.0 / 15.0).epsilon(1e-13));
    CHECK(fb2.upper == Approx(32.0 / 15.0).epsilon(1e-13));

    const FrameBounds fb0 =
        frame_bounds(QuadForm{Eigen::MatrixXcd::Zero(2, 2), QuadSource::continuous});
    CHECK(fb0.lower == 0.0);
    CHECK(fb0.upper == 0.0);
}

TEST_CASE("frame bounds reject indefinite input") {
    Eigen::MatrixXcd bad(1, 1);
    bad << cplx(-1, 0);
    CHECK_THROWS_AS(frame_bounds(QuadForm{bad, QuadSource::continuous}), invariant_error);
}

TEST_CASE("continuous oracle at reference points") {
    const Spectrum one = Spectrum::from_values({cplx(1, 0)});
    Eigen::VectorXcd c1(1);
    c1 << cplx(1, 0);
    CHECK(oracle_continuous(one, row({cplx(1, 0)}, VectorKind::continuous_g), c1, 1e-9) ==
          Approx(0.5).epsilon(1e-8));

    const Spectrum two = Spectrum::from_values({cplx(1, 0), cplx(2, 0)});
    Eigen::VectorXcd c2(2);
    c2 << cplx(1, 0), cplx(1, 0);
    CHECK(oracle_continuous(two, row({cplx(1, 0), cplx(1, 0)}, VectorKind::continuous_g), c2,
                            1e-9) == Approx(17.0 / 12.0).epsilon(1e-8));

    CHECK(oracle_continuous(one, row({cplx(1, 0)}, VectorKind::continuous_g),
                            Eigen::VectorXcd::Zero(1), 1e-9) == 0.0);
}

TEST_CASE("discrete oracle at reference points") {
    Eigen::VectorXcd c1(1);
    c1 << cplx(1, 0);
    CHECK(oracle_discrete({hardy::DiscPoint(cplx(0, 0))}, row({cplx(1, 0)}, VectorKind::discrete_a),
                          c1, 1e-9) == Approx(1.0));
    CHECK(oracle_discrete({hardy::DiscPoint(cplx(0.5, 0))},
                          row({cplx(1, 0)}, VectorKind::discrete_a), c1,
                          1e-9) == Approx(4.0 / 3.0).epsilon(1e-9));
    Eigen::VectorXcd c2(2);
    c2 << cplx(1, 0), cplx(1, 0);
    CHECK(oracle_discrete({hardy::DiscPoint(cplx(0.5, 0)), hardy::DiscPoint(cplx(-0.5, 0))},
                          row({cplx(1, 0), cplx(1, 0)}, VectorKind::discrete_a), c2,
                          1e-9) == Approx(64.0 / 15.0).epsilon(1e-9));
}

TEST_CASE("oracles agree with the closed forms on random systems") {
    std::uniform_int_distribution<int> dim(1, 16), mm(1, 3);
    for (int rep = 0; rep < 15; ++rep) {
        const int n = dim(rng);
        const int m = mm(rng);
        const Spectrum spec = random_spectrum(n);
        const VectorSet g = random_vectors(m, n);
        const Eigen::VectorXcd c = random_vec(n);

        const QuadForm cont = quadform_continuous(spec, g);
        const double closed = (c.adjoint() * cont.matrix * c)(0).real();
        CHECK(oracle_continuous(spec, g, c, 1e-9) == Approx(closed).epsilon(1e-7));

        const CayleyData data = cayley_transform_vectors(spec, g);
        const QuadForm disc = quadform_discrete(data.etas, data.a);
        const double closed_d = (c.adjoint() * disc.matrix * c)(0).real();
        CHECK(std::abs(oracle_discrete(data.etas, data.a, c, 1e-9) - closed_d) <=
              1e-8 * std::max(1.0, closed_d));
    }
}

TEST_CASE("frame bound interlacing under nested truncations") {
    const Spectrum full = random_spectrum(12);
    const VectorSet g = random_vectors(2, 12);
    double prev_lower = std::numeric_limits<double>::infinity();
    double prev_upper = 0.0;
    for (int n : {4, 8, 12}) {
        std::vector<cplx> head;
        for (int j = 0; j < n; ++j) head.push_back(full.lambda(j));
        const VectorSet gh = make_vector_set(g.coeffs.leftCols(n), VectorKind::continuous_g);
        const FrameBounds fb = frame_bounds(quadform_continuous(Spectrum::from_values(head), gh));
        CHECK(fb.lower <= prev_lower + 1e-12);
        CHECK(fb.upper >= prev_upper - 1e-12);
        prev_lower = fb.lower;
        prev_upper = fb.upper;
    }
}

TEST_CASE("coincident eigenvalues with one vector collapse the lower bound") {
    const Spectrum spec = Spectrum::from_values({cplx(1, 2), cplx(1, 2), cplx(3, 0)});
    const VectorSet g = random_vectors(1, 3);
    const FrameBounds fb = frame_bounds(quadform_continuous(spec, g));
    CHECK(fb.lower <= 1e-12 * fb.upper);
    CHECK(fb.numerically_zero);
}

TEST_CASE("quadratic forms are positive semidefinite") {
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 10;
        const Spectrum spec = random_spectrum(n);
        const VectorSet g = random_vectors(2, n);
        const QuadForm q = quadform_continuous(spec, g);
        CHECK((q.matrix - q.matrix.adjoint()).norm() <= 1e-13 * std::max(1.0, q.matrix.norm()));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(q.matrix);
        CHECK(solver.eigenvalues().minCoeff() >= -1e-10 * std::max(1.0, q.matrix.norm()));
    }
}

TEST_CASE("riesz basis conjugation") {
    Eigen::MatrixXcd q1(1, 1);
    q1 << cplx(1, 0);
    const QuadForm base{q1, QuadSource::continuous};

    const QuadForm same = riesz_basis_conjugate(base, BasisChange(Eigen::MatrixXcd::Identity(1, 1)));
    CHECK(same.matrix(0, 0).real() == Approx(1.0));

    Eigen::MatrixXcd two(1, 1);
    two << cplx(2, 0);
    const QuadForm scaled = riesz_basis_conjugate(base, BasisChange(two));
    CHECK(scaled.matrix(0, 0).real() == Approx(0.25).epsilon(1e-14));

    // unitary conjugation preserves eigenvalues
    const Spectrum spec = random_spectrum(4);
    const VectorSet g = random_vectors(2, 4);
    const QuadForm q = quadform_continuous(spec, g);
    Eigen::MatrixXcd a(4, 4);
    for (int j = 0; j < 4; ++j) a.col(j) = random_vec(4);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    const Eigen::MatrixXcd unitary = qr.householderQ();
    const QuadForm rotated = riesz_basis_conjugate(q, BasisChange(unitary));
    const FrameBounds before = frame_bounds(q);
    const FrameBounds after = frame_bounds(rotated);
    CHECK(after.lower == Approx(before.lower).epsilon(1e-12));
    CHECK(after.upper == Approx(before.upper).epsilon(1e-12));
}

TEST_CASE("bessel constant of a finite family") {
    // single unit vector: constant 1
    CHECK(bessel_constant(row({cplx(1, 0)}, VectorKind::continuous_g)) == Approx(1.0));
    // m copies of the same unit vector: constant m
    Eigen::MatrixXcd coeffs(3, 1);
    coeffs << cplx(1, 0), cplx(1, 0), cplx(1, 0);
    CHECK(bessel_constant(make_vector_set(coeffs, VectorKind::continuous_g)) ==
          Approx(3.0).epsilon(1e-13));
}
