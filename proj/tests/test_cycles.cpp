#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "mp/cycles.hpp"
#include "mp/errors.hpp"
#include "mp/merom.hpp"
#include "mp/qf.hpp"
#include "mp/rational.hpp"
#include "mp/util.hpp"

using namespace mp;

namespace {

double rel(cplx a, cplx b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Canonical meromorphic form used by the heavier integration tests.
ScalarEvaluator canonical_form(double tol) {
    PrecisionConfig cfg;
    cfg.target_rel_error = tol;
    return [cfg](cplx z) { return eval_fkD(6, 1, -1, 1, -3, 1, z, cfg); };
}

} // namespace

TEST_CASE("cycle_from_matrix: forms, discriminants, validation") {
    GeodesicCycle c21 = cycle_from_matrix(2, 1, 1, 1);
    CHECK(c21.QA == 1);
    CHECK(c21.QB == -1);
    CHECK(c21.QC == -1);
    CHECK(c21.d_gamma == 5);
    CHECK(c21.base_point.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c21.base_point.imag() == doctest::Approx(std::sqrt(5.0) / 2).epsilon(1e-14));

    GeodesicCycle c52 = cycle_from_matrix(5, 2, 2, 1);
    CHECK(c52.QA == 2);
    CHECK(c52.QB == -4);
    CHECK(c52.QC == -2);
    CHECK(c52.d_gamma == 32);
    CHECK(c52.base_point.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c52.base_point.imag() ==
          doctest::Approx(std::sqrt(32.0) / 4).epsilon(1e-14));

    CHECK_THROWS_AS(cycle_from_matrix(1, 1, 0, 1), validation_error);  // parabolic
    CHECK_THROWS_AS(cycle_from_matrix(0, -1, 1, 0), validation_error); // elliptic
    CHECK_THROWS_AS(cycle_from_matrix(2, 1, 1, 2), validation_error);  // det 3

    // (5,3;3,2) is the square of (2,1;1,1); (-13,-8;-8,-5) is the cube of
    // (-2,-1;-1,-1), which itself is primitive.
    CHECK_THROWS_WITH_AS(cycle_from_matrix(5, 3, 3, 2),
                         doctest::Contains("power"), validation_error);
    CHECK_THROWS_WITH_AS(cycle_from_matrix(-13, -8, -8, -5),
                         doctest::Contains("power"), validation_error);
    CHECK_NOTHROW(cycle_from_matrix(-2, -1, -1, -1));
}

TEST_CASE("cycle geometry: apex, fixed points, balanced base point") {
    for (auto [a, b, c, d] : {std::array<long long, 4>{2, 1, 1, 1},
                              std::array<long long, 4>{5, 2, 2, 1}}) {
        GeodesicCycle cy = cycle_from_matrix(a, b, c, d);
        const double m = cy.base_point.real();
        const double R = cy.base_point.imag();

        // The axis endpoints are the fixed points and the zeros of Q.
        for (double sg : {-1.0, 1.0}) {
            const cplx x(m + sg * R, 0.0);
            CHECK(std::abs(cy.apply(x) - x) < 1e-10);
            CHECK(std::abs(cy.Q(x)) < 1e-10);
        }
        // At the apex Q is real: Q(m + iR) = -2 c R^2.
        const cplx qa = cy.Q(cy.base_point);
        CHECK(std::abs(qa.imag()) < 1e-12 * std::abs(qa));
        CHECK(qa.real() ==
              doctest::Approx(-2.0 * double(c) * R * R).epsilon(1e-12));

        // The balanced base point sits on the axis circle at the same height
        // as its image.
        const cplx bb = balanced_base_point(cy);
        CHECK(std::abs(bb - cplx(m, 0)) == doctest::Approx(R).epsilon(1e-11));
        CHECK(std::abs(cy.apply(bb).imag() - bb.imag()) < 1e-9 * bb.imag());
        CHECK(bb.imag() > 0.1);
    }
}

TEST_CASE("pairing: exact antiderivative, zero function, validation") {
    GeodesicCycle cy = cycle_from_matrix(2, 1, 1, 1);

    // k = 1 pairs f alone against the path: compare with the antiderivative
    // of z^2 between the endpoints.
    ScalarEvaluator f = [](cplx z) { return z * z; };
    PairingResult r = pairing(f, cy, 1);
    const cplx za = cy.base_point, zb = cy.apply(cy.base_point);
    const cplx exact = (zb * zb * zb - za * za * za) / 3.0;
    CHECK(rel(r.raw_integral, exact) < 1e-12);
    CHECK(r.projected == r.raw_integral); // (i/sqrt d)^0 = 1
    CHECK(r.pieces == 1);

    ScalarEvaluator zero = [](cplx) { return cplx(0.0); };
    PairingResult rz = pairing(zero, cy, 6);
    CHECK(rz.value == 0.0);
    CHECK(rz.l1_magnitude == 0.0);

    CHECK_THROWS_AS(pairing(f, cy, 0), validation_error);
    GeodesicCycle bad = cy;
    bad.base_point = cplx(0.5, -1.0);
    CHECK_THROWS_AS(pairing(f, bad, 2), validation_error);
}

TEST_CASE("pairing: bilinearity") {
    GeodesicCycle cy = cycle_from_matrix(2, 1, 1, 1);
    ScalarEvaluator f1 = [](cplx z) { return std::exp(cplx(0, 2 * PI) * z); };
    ScalarEvaluator f2 = [](cplx z) { return 1.0 / (z + cplx(0, 5)); };
    const double alpha = 2.5, beta = -1.25;
    ScalarEvaluator fc = [&](cplx z) { return alpha * f1(z) + beta * f2(z); };

    for (int k : {1, 4}) {
        PairingResult r1 = pairing(f1, cy, k);
        PairingResult r2 = pairing(f2, cy, k);
        PairingResult rc = pairing(fc, cy, k);
        const double scale = std::abs(alpha) * std::abs(r1.projected) +
                             std::abs(beta) * std::abs(r2.projected);
        CHECK(std::abs(rc.projected - (alpha * r1.projected + beta * r2.projected)) <
              1e-10 * scale);
        CHECK(std::abs(rc.value - (alpha * r1.value + beta * r2.value)) <
              1e-10 * scale);
    }
}

TEST_CASE("pairing: waypoint homotopy invariance for a pole-free integrand") {
    GeodesicCycle cy = cycle_from_matrix(2, 1, 1, 1);
    ScalarEvaluator f = [](cplx z) { return std::exp(cplx(0, 2 * PI) * z); };
    auto [v1, v2] = path_independence_check(
        f, cy, 3, {}, {}, {cplx(0.2, 1.9), cplx(1.2, 1.6)});
    CHECK(std::abs(v1.projected - v2.projected) <
          1e-8 * std::max(1.0, std::abs(v1.projected)));
    CHECK(v2.pieces == 3);
}

TEST_CASE("pairing: base-point independence for a holomorphic weight-12 form") {
    // G = q prod (1 - q^m)^24 through q^60; the tail is far below 1e-12 for
    // every point of both paths (heights >= 0.31).
    std::vector<long long> tau = delta_qexp(60);
    ScalarEvaluator G = [tau](cplx z) {
        const cplx q = std::exp(cplx(0, 2 * PI) * z);
        cplx qn = 1.0, s = 0.0;
        for (std::size_t n = 1; n <= tau.size(); ++n) {
            qn *= q;
            s += double(tau[n - 1]) * qn;
        }
        return s;
    };
    GeodesicCycle apex = cycle_from_matrix(2, 1, 1, 1);
    GeodesicCycle moved = apex;
    moved.base_point = balanced_base_point(apex);
    PairingResult ra = pairing(G, apex, 6);
    PairingResult rm = pairing(G, moved, 6);
    CHECK(std::abs(ra.projected - rm.projected) <
          1e-8 * std::max(1.0, std::abs(ra.projected)));
    CHECK(std::abs(ra.value - rm.value) <
          1e-8 * std::max(1.0, std::abs(ra.value)));
}

TEST_CASE("pairing: pole detours keep exactness and reject bad geometry") {
    GeodesicCycle cy = cycle_from_matrix(2, 1, 1, 1);
    cy.base_point = balanced_base_point(cy);
    const cplx za = cy.base_point, zb = cy.apply(cy.base_point);
    const cplx mid = 0.5 * (za + zb);
    ScalarEvaluator one = [](cplx) { return cplx(1.0); };

    // A constant integrand sees only the endpoints, so the detour must not
    // change the value at all.
    PairingResult direct = pairing(one, cy, 1);
    PairingResult detoured = pairing(one, cy, 1, {mid});
    CHECK(detoured.pieces >= 3);
    CHECK(std::abs(detoured.raw_integral - (zb - za)) < 1e-12);
    CHECK(std::abs(direct.raw_integral - (zb - za)) < 1e-14);

    // Path node inside the exclusion zone.
    CHECK_THROWS_WITH_AS(pairing(one, cy, 1, {za}),
                         doctest::Contains("node"), validation_error);

    // Overlapping exclusion zones of two nearby poles on the path.
    const cplx mid2 = mid + cplx(0.01 * mid.imag(), 0.0);
    CHECK_THROWS_WITH_AS(pairing(one, cy, 1, {mid, mid2}),
                         doctest::Contains("overlap"), validation_error);

    // Blockers sitting exactly on both candidate detour arcs.
    const cplx up(mid.real(), mid.imag() * std::exp(2e-2));
    const cplx down(mid.real(), mid.imag() * std::exp(-2e-2));
    CHECK_THROWS_WITH_AS(pairing(one, cy, 1, {mid, up, down}),
                         doctest::Contains("blocked"), validation_error);
}

TEST_CASE("elliptic_coeff_Q: reality, k = 2 closed form, k = 3 oracle") {
    GeodesicCycle cy = cycle_from_matrix(2, 1, 1, 1);
    const cplx rhos[] = {cplx(0.23, 1.37), cplx(0.5, std::sqrt(3.0) / 2),
                         cplx(-0.41, 0.77)};
    for (const cplx& rho : rhos) {
        for (int k = 2; k <= 8; ++k) {
            const cplx v = elliptic_coeff_Q(cy, rho, k);
            CHECK(std::abs(v.imag()) <= 1e-12 * std::max(1.0, std::abs(v)));
        }
        // k = 2: the Legendre factor is linear and the prefactors collapse to
        // (A|rho|^2 + B Re rho + C) / (2 y^2).
        const double qval = double(cy.QA) * std::norm(rho) +
                            double(cy.QB) * rho.real() + double(cy.QC);
        const double y = rho.imag();
        CHECK(elliptic_coeff_Q(cy, rho, 2).real() ==
              doctest::Approx(qval / (2 * y * y)).epsilon(1e-13));
    }

    // k = 3 against a finite-difference iterated raising of Q(z)^2 in weight
    // -4: coefficient = (-4y)^{-2} / 2! * R_{-4}^2 Q^2 at rho.
    const cplx rho(0.23, 1.37);
    auto g = [&](cplx z) { return cy.Q(z) * cy.Q(z); };
    auto raise2 = [&](double h) {
        auto R = [&](auto&& fn, double kappa, cplx z) {
            const cplx dx = (fn(z + h) - fn(z - h)) / (2 * h);
            const cplx dy = (fn(z + cplx(0, h)) - fn(z - cplx(0, h))) / (2 * h);
            return cplx(0, 1) * dx + dy + kappa / z.imag() * fn(z);
        };
        auto R1 = [&](cplx z) { return R(g, -4.0, z); };
        return R(R1, -2.0, rho);
    };
    const cplx r2 = (4.0 * raise2(5e-4) - raise2(1e-3)) / 3.0;
    const double y = rho.imag();
    const cplx oracle = r2 / (2.0 * 16.0 * y * y); // (-4y)^{-2} / 2!

    CHECK(rel(elliptic_coeff_Q(cy, rho, 3), oracle) < 1e-4);

    CHECK_THROWS_AS(elliptic_coeff_Q(cy, rho, 0), validation_error);
    CHECK_THROWS_AS(elliptic_coeff_Q(cy, cplx(0.3, -1.0), 4), validation_error);
}

TEST_CASE("raising_hypergeometric_check: closed form vs finite differences") {
    LatticeVector X;
    X.a = Rational(1);
    X.b = Rational(1);
    X.c = Rational(1, 2);
    X.N = 1;
    const Rational m(-1, 4);
    const cplx z(0.2, 1.1);
    CHECK(X.qX().num == -1);
    CHECK(X.qX().den == 4);

    RaisingCheck r2 = raising_hypergeometric_check(2, 1, m, X, z);
    CHECK(rel(r2.lhs, r2.rhs) < 1e-4);

    RaisingCheck r3 = raising_hypergeometric_check(3, 1, m, X, z);
    CHECK(rel(r3.lhs, r3.rhs) < 1e-4);

    // X -> -X flips both sgn(p_z) and Q_X, leaving the closed form unchanged.
    LatticeVector Xn;
    Xn.a = Rational(-1);
    Xn.b = Rational(-1);
    Xn.c = Rational(-1, 2);
    Xn.N = 1;
    CHECK(lattice_p(Xn, z) == doctest::Approx(-lattice_p(X, z)).epsilon(1e-14));
    RaisingCheck r2n = raising_hypergeometric_check(2, 1, m, Xn, z);
    CHECK(rel(r2n.rhs, r2.rhs) < 1e-13);
    CHECK(rel(r2n.lhs, r2n.rhs) < 1e-4);

    // Hypergeometric argument at or past 1.
    LatticeVector Xw;
    Xw.a = Rational(1, 2);
    Xw.b = Rational(0);
    Xw.c = Rational(1, 2);
    Xw.N = 1;
    CHECK_THROWS_WITH_AS(
        raising_hypergeometric_check(2, 1, m, Xw, cplx(0, 1)),
        doctest::Contains("hypergeometric"), validation_error);

    CHECK_THROWS_AS(raising_hypergeometric_check(2, 1, Rational(-1, 2), X, z),
                    validation_error); // q(X) != m
    CHECK_THROWS_AS(raising_hypergeometric_check(2, 1, Rational(1, 4), X, z),
                    validation_error); // m not negative
    LatticeVector X2 = X;
    X2.N = 2;
    CHECK_THROWS_AS(raising_hypergeometric_check(2, 1, m, X2, z),
                    validation_error); // level mismatch
    CHECK_THROWS_AS(raising_hypergeometric_check(0, 1, m, X, z),
                    validation_error);
}

TEST_CASE("pairing: canonical form against its own geodesic is tiny") {
    ScalarEvaluator f = canonical_form(1e-8);
    MeromFormSpec spec;
    spec.k = 6;
    spec.N = 1;
    spec.Delta = -3;
    spec.rho = 1;
    spec.principal_part[{-1, 1}] = 1.0;
    EtaAssembly assembly = eta_for_f(spec);

    GeodesicCycle cy = cycle_from_matrix(2, 1, 1, 1);
    cy.base_point = balanced_base_point(cy);
    PairingResult r = pairing(f, cy, 6, assembly);
    CAPTURE(r.value);
    CAPTURE(r.l1_magnitude);
    CHECK(r.l1_magnitude > 1.0);
    CHECK(std::abs(r.value) <= 1e-6 * r.l1_magnitude);
}

TEST_CASE("pairing: homotopy loop around a pole matches the local expansion") {
    const int k = 6;
    ScalarEvaluator f = canonical_form(1e-9);
    GeodesicCycle cy = cycle_from_matrix(2, 1, 1, 1);
    cy.base_point = balanced_base_point(cy);

    // Loop of hyperbolic radius 0.34 around the pole at rho = zeta_3 + 1,
    // walked as an octagon; both paths meet the loop at its bottom node so
    // their difference is exactly one counterclockwise circuit.
    const cplx rho(0.5, std::sqrt(3.0) / 2);
    const double hr = 0.34;
    const cplx pc(rho.real(), rho.imag() * std::cosh(hr));
    const double re = rho.imag() * std::sinh(hr);
    std::vector<cplx> octagon;
    for (int j = 0; j < 8; ++j)
        octagon.push_back(pc + re * std::polar(1.0, -PI / 2 + j * PI / 4));
    std::vector<cplx> wp1 = {octagon[0]};
    std::vector<cplx> wp2 = octagon;
    wp2.push_back(octagon[0]);

    std::vector<cplx> poles;
    for (int n = -2; n <= 3; ++n)
        poles.push_back(cplx(-0.5 + n, std::sqrt(3.0) / 2));

    auto [v1, v2] = path_independence_check(f, cy, k, poles, wp1, wp2);
    const cplx jump = v2.projected - v1.projected;
    CAPTURE(v1.projected);
    CAPTURE(v2.projected);
    CAPTURE(jump);

    // The real parts agree: only the imaginary part sees the loop.
    const double scale = std::abs(v1.projected) + std::abs(v2.projected) +
                         std::abs(jump);
    CHECK(std::abs(v1.value - v2.value) <= 1e-6 * scale);

    // Predicted jump: the contour picks up (pi / Im rho) times the product
    // of the leading local coefficient of f and the index-(k-1) elliptic
    // coefficient of Q^{k-1}, projected like the pairing.
    ResidueResult rr = residue_at(f, rho, k, 0.2);
    CHECK(rr.value == doctest::Approx(2 * std::pow(3.0, 2.5)).epsilon(1e-6));
    const cplx ell = elliptic_coeff_Q(cy, rho, k);
    const cplx pred = cpow_int(cplx(0, 1) / std::sqrt(5.0), k - 1) *
                      (PI / rho.imag()) * rr.value *
                      cpow_int(cplx(0, 2 * rho.imag()), k) * ell;
    CAPTURE(pred);
    CHECK(std::abs(pred.real()) < 1e-10 * std::abs(pred));
    CHECK(rel(jump, pred) < 1e-4);
}
