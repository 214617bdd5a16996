#include "doctest.h"

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "mp/arith.hpp"
#include "mp/errors.hpp"
#include "mp/maass.hpp"
#include "mp/merom.hpp"
#include "mp/qf.hpp"

using namespace mp;

namespace {

double rel(cplx a, cplx b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

PrecisionConfig cfg9() {
    PrecisionConfig c;
    c.target_rel_error = 1e-9;
    return c;
}

// Main test configuration: weight 12, level 1, twist -3, index (-1, 1).
cplx f_main(cplx z, const PrecisionConfig& c = cfg9()) {
    return eval_fkD(6, 1, -1, 1, -3, 1, z, c);
}

const cplx kZeta3{-0.5, std::sqrt(3.0) / 2.0};

} // namespace

TEST_CASE("eval_fkD input validation") {
    const cplx z{0.3, 1.1};
    CHECK_THROWS_AS(eval_fkD(1, 1, -1, 1, -3, 1, z), validation_error);
    CHECK_THROWS_AS(eval_fkD(6, 0, -1, 1, -3, 1, z), validation_error);
    CHECK_THROWS_AS(eval_fkD(6, 1, 1, 1, -3, 1, z), validation_error);   // D >= 0
    CHECK_THROWS_AS(eval_fkD(6, 1, -2, 1, -3, 1, z), validation_error);  // congruence
    CHECK_THROWS_AS(eval_fkD(6, 1, -1, 1, 9, 3, z), validation_error);   // not fundamental
    CHECK_THROWS_AS(eval_fkD(6, 1, -1, 1, -3, 0, z), validation_error);  // rho^2 != Delta
    CHECK_THROWS_AS(eval_fkD(6, 1, -1, 1, -3, 1, cplx(0.3, -1.1)), validation_error);
    CHECK_THROWS_AS(eval_fkD(2, 1, -1, 1, -4, 0, cplx(0.3, 0.05)), numerical_error);
}

TEST_CASE("eval_fkD transforms with weight 12 and respects conjugation") {
    const cplx z{0.1, 1.3};
    const cplx fz = f_main(z);
    CHECK(std::abs(fz) > 1.0); // nonzero regime

    const cplx fS = f_main(-1.0 / z);
    CHECK(rel(fS, cpow_int(z, 12) * fz) < 1e-8);

    const cplx fT = f_main(z + 1.0);
    CHECK(rel(fT, fz) < 1e-12);

    // f(-conj(z)) = (-1)^k conj(f(z)); k = 6 even.
    const cplx fc = f_main(-std::conj(z));
    CHECK(rel(fc, std::conj(fz)) < 1e-12);
}

TEST_CASE("eval_fkD blows up like |z - alpha|^{-k} at a divisor point") {
    // Approach the order-6 pole above the first Heegner point vertically.
    std::vector<double> t{1e-2, 5e-3, 2.5e-3};
    std::vector<double> logf;
    for (double tt : t)
        logf.push_back(std::log(std::abs(f_main(kZeta3 + cplx(0.0, tt)))));
    const double slope1 = (logf[1] - logf[0]) / std::log(0.5);
    const double slope2 = (logf[2] - logf[1]) / std::log(0.5);
    CHECK(std::abs(slope1 + 6.0) < 0.15);
    CHECK(std::abs(slope2 + 6.0) < 0.15);
}

TEST_CASE("eval_fkD pole exclusion names the offending form") {
    bool threw = false;
    try {
        f_main(kZeta3 + cplx(1e-5, 0.0));
    } catch (const validation_error& e) {
        threw = true;
        CHECK(std::string(e.what()).find("[1, 1, 1]") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("form sum equals stabilizer-weighted Petersson series") {
    // Orbit count at the test configs folds the +-form pair into a factor 2;
    // each orbit sum unfolds to (chi / w) times the Petersson series.
    const double c3 = std::pow(3.0, 2.5) * 2.0 / 3.0; // w = 3 at zeta3
    for (cplx z : {cplx(0.37, 0.92), cplx(-0.21, 1.37), cplx(0.05, 0.71)}) {
        const cplx direct = f_main(z);
        const cplx route = c3 * eval_petersson_eta(6, 1, kZeta3, z, cfg9());
        CHECK(rel(direct, route) < 1e-8);
    }
    // Twist -4 has its divisor point at i with w = 2.
    const cplx z{0.27, 0.83};
    const cplx d4 = eval_fkD(6, 1, -1, 1, -4, 0, z, cfg9());
    const double c4 = std::pow(4.0, 2.5) * 2.0 / 2.0;
    CHECK(rel(d4, c4 * eval_petersson_eta(6, 1, cplx(0.0, 1.0), z, cfg9())) < 1e-8);
}

TEST_CASE("sign regime: even weight with positive twist cancels identically") {
    for (cplx z : {cplx(0.11, 1.21), cplx(-0.4, 0.95), cplx(0.33, 1.62)}) {
        CHECK(std::abs(eval_fkD(2, 1, -4, 0, 1, 1, z)) == 0.0);
    }
    CHECK(class_pair_stack(2, 1, 1, 0) == 0);
    CHECK(class_pair_stack(6, -3, 1, 1) == 2);
    CHECK(class_pair_stack(3, 5, 1, 1) == 2);
    CHECK(class_pair_stack(2, 5, 1, 1) == 0);
    CHECK(class_pair_stack(2, 1, 5, 1) == 1); // off-center residue: no partner
}

TEST_CASE("petersson series is independent of the representative and covariant") {
    const cplx rho = kZeta3;
    const cplx z{0.31, 0.77};
    const cplx base = eval_petersson_eta(4, 1, rho, z, cfg9());
    CHECK(rel(base, eval_petersson_eta(4, 1, rho + 1.0, z, cfg9())) < 1e-7);
    CHECK(rel(base, eval_petersson_eta(4, 1, -1.0 / rho, z, cfg9())) < 1e-7);

    // weight 2k covariance under S and T
    const cplx atS = eval_petersson_eta(4, 1, rho, -1.0 / z, cfg9());
    CHECK(rel(atS, cpow_int(z, 8) * base) < 1e-7);
    const cplx atT = eval_petersson_eta(4, 1, rho, z + 1.0, cfg9());
    CHECK(rel(atT, base) < 1e-7);

    CHECK_THROWS_AS(eval_petersson_eta(1, 1, rho, z), validation_error);
    CHECK_THROWS_AS(eval_petersson_eta(4, 1, std::conj(rho), z), validation_error);
}

TEST_CASE("residue extraction at generic and elliptic centers") {
    // Generic center: the series has local coefficient exactly 1.
    const cplx rho0{0.13, 1.22};
    auto e5 = [](cplx w) { return eval_petersson_eta(5, 1, cplx(0.13, 1.22), w, cfg9()); };
    ResidueResult r1 = residue_at(e5, rho0, 5, 0.12, 64);
    CHECK(std::abs(r1.value - 1.0) < 1e-6);
    CHECK(r1.imag_residual < 1e-8);

    // Elliptic center of order 3: the stabilizer stacks the local coefficient.
    auto e6 = [](cplx w) { return eval_petersson_eta(6, 1, kZeta3, w, cfg9()); };
    ResidueResult r3 = residue_at(e6, kZeta3, 6, 0.15, 64);
    CHECK(std::abs(r3.value - 3.0) < 1e-6);

    // Holomorphic input has no pole: coefficient 0.
    auto hol = [](cplx w) { return e2pi(w.real()) * std::exp(-2.0 * PI * w.imag()); };
    ResidueResult r0 = residue_at(hol, cplx(0.2, 1.0), 6, 0.2, 64);
    CHECK(std::abs(r0.value) < 1e-10);

    CHECK_THROWS_AS(residue_at(e5, rho0, 5, 0.9, 64), validation_error);
    CHECK_THROWS_AS(residue_at(e5, rho0, 5, 0.12, 4), validation_error);
    CHECK_THROWS_AS(residue_at(e5, std::conj(rho0), 5, 0.12, 64), validation_error);
}

TEST_CASE("residues reproduce divisor weights over full divisors") {
    // Config index (-1, 1), twist -3: one point, w = 3, chi = 1.
    {
        MeromFormSpec spec;
        spec.k = 6;
        spec.Delta = -3;
        spec.rho = 1;
        spec.principal_part[{-1, 1}] = 1.0;
        spec.trunc = cfg9();
        EtaAssembly ass = eta_for_f(spec);
        REQUIRE(ass.divisor.size() == 1);
        const EtaDivisorPoint& pt = ass.divisor[0];
        const int stack = class_pair_stack(6, -3, 1, mod_ll(pt.r * spec.rho, 2));
        ResidueResult rr = residue_at(ass.eval, pt.point, 6, 0.15, 64);
        const double expect = pt.weight * pt.w * stack;
        CHECK(rel(rr.value, expect) < 1e-6);
        CHECK(std::abs(rr.value - 2.0 * std::pow(3.0, 2.5)) < 1e-6);
    }
    // Twist -4, index (-1, 1): point i, w = 2.
    {
        MeromFormSpec spec;
        spec.k = 6;
        spec.Delta = -4;
        spec.rho = 0;
        spec.principal_part[{-1, 1}] = 1.0;
        spec.trunc = cfg9();
        EtaAssembly ass = eta_for_f(spec);
        REQUIRE(ass.divisor.size() == 1);
        const EtaDivisorPoint& pt = ass.divisor[0];
        ResidueResult rr = residue_at(ass.eval, pt.point, 6, 0.15, 64);
        CHECK(rel(rr.value, pt.weight * pt.w * 2) < 1e-6);
        CHECK(std::abs(rr.value - 64.0) < 1e-6);
    }
    // Twist -3, index (-4, 2): discriminant -12, two classes of opposite
    // character, one elliptic.
    {
        MeromFormSpec spec;
        spec.k = 6;
        spec.Delta = -3;
        spec.rho = 1;
        spec.principal_part[{-4, 2}] = 1.0;
        spec.trunc = cfg9();
        EtaAssembly ass = eta_for_f(spec);
        REQUIRE(ass.divisor.size() == 2);
        for (const EtaDivisorPoint& pt : ass.divisor) {
            ResidueResult rr = residue_at(ass.eval, pt.point, 6, 0.15, 64);
            CHECK(rel(rr.value, pt.weight * pt.w * 2) < 1e-6);
            CHECK(std::abs(std::abs(rr.value) - 2.0 * std::pow(12.0, 2.5)) < 1e-5);
        }
    }
}

TEST_CASE("residue contour flags a second enclosed pole") {
    MeromFormSpec spec;
    spec.k = 6;
    spec.Delta = -3;
    spec.rho = 1;
    spec.principal_part[{-4, 2}] = 1.0;
    spec.trunc = cfg9();
    EtaAssembly ass = eta_for_f(spec);
    // A huge contour around one divisor point swallows the other.
    CHECK_THROWS_AS(residue_at(ass.eval, kZeta3, 6, 0.7, 64), numerical_error);
}

TEST_CASE("fourier coefficients of a pure exponential") {
    auto f = [](cplx z) { return e2pi(z.real()) * std::exp(-2.0 * PI * z.imag()); };
    FourierSeries2k fs = fourier_coeffs(f, 6, 1, 0.5, 3, 16);
    CHECK(std::abs(fs.coeffs[1] - 1.0) < 1e-10);
    CHECK(std::abs(fs.coeffs[2]) < 1e-8);
    CHECK(std::abs(fs.coeffs[3]) < 1e-6);
    CHECK(fs.height_used == 0.5);

    CHECK_THROWS_AS(fourier_coeffs(f, 6, 1, 0.5, 3, 11), validation_error);
    CHECK_THROWS_AS(fourier_coeffs(f, 6, 1, 0.5, 3, 16, 0.6), validation_error);
    CHECK_THROWS_AS(fourier_coeffs(f, 6, 1, -0.5, 3, 16), validation_error);

    auto dft = fourier_line_dft(f, 0.5, -1, 1, 16);
    CHECK(std::abs(dft[-1]) < 1e-12);
    CHECK(std::abs(dft[0]) < 1e-12);
    CHECK(std::abs(dft[1] - std::exp(-PI)) < 1e-12);
}

TEST_CASE("fourier series of the canonical form: heights, reality, no constant") {
    auto f = [](cplx z) { return f_main(z); };
    FourierSeries2k a = fourier_coeffs(f, 6, 1, 2.0, 6, 64, 0.95);
    // no constant term
    CHECK(a.error_estimates[0] < 1e-7);
    for (int n = 1; n <= 3; ++n) CHECK(a.error_estimates[n] < 1e-2);
    // reality: the square root of the negative twist makes the prefactor real
    for (int n = 1; n <= 6; ++n)
        CHECK(std::abs(a.coeffs[n].imag()) < 1e-6 * std::abs(a.coeffs[n]));
    // growth sanity: coefficients are nonzero in this regime
    for (int n = 1; n <= 6; ++n) CHECK(std::abs(a.coeffs[n]) > 1.0);

    // Cross-check against a higher line. Coefficients past n = 1 decay below
    // the evaluator's truncation noise there, so n = 2 uses a direct line
    // transform with a tighter evaluation tolerance and n >= 3 is left to the
    // n <= 3 internal estimates above.
    FourierSeries2k b = fourier_coeffs(f, 6, 1, 3.0, 1, 64, 0.95);
    CHECK(rel(a.coeffs[1], b.coeffs[1]) < 1e-5);

    PrecisionConfig tight;
    tight.target_rel_error = 1e-12;
    auto ft = [&tight](cplx z) { return eval_fkD(6, 1, -1, 1, -3, 1, z, tight); };
    auto l3 = fourier_line_dft(ft, 3.0, 1, 2, 32);
    CHECK(rel(a.coeffs[1], l3[1] * std::exp(2.0 * PI * 3.0)) < 1e-6);
    CHECK(rel(a.coeffs[2], l3[2] * std::exp(4.0 * PI * 3.0)) < 1e-4);
}

TEST_CASE("predicted coefficients: exact constants and the divisor-sum formula") {
    CHECK(predicted_constant(6, -3) == Rational(15552, 120));
    CHECK(predicted_constant(2, -3) == Rational(12));
    CHECK(predicted_constant(2, 1) == Rational(4));
    CHECK_THROWS_AS(predicted_constant(1, -3), validation_error);
    CHECK_THROWS_AS(predicted_constant(6, 9), validation_error);

    const cplx pref = predicted_prefactor(6, -3);
    CHECK(pref.imag() == 0.0);
    CHECK(rel(pref, cplx(-(15552.0 / 120.0) * std::pow(PI, 6) * std::sqrt(3.0), 0.0)) <
          1e-14);

    CoeffTable t;
    t.N = 1;
    t.weight_times_2 = -9;
    t.dual = true;
    std::vector<double> tv{0.0, 1.7, -2.3, 0.9, 4.1, -0.4, 2.6}; // t[m], 1-based
    for (int m = 1; m <= 6; ++m) t.holo[{3LL * m * m, m % 2}] = tv[(size_t)m];

    FourierSeries2k p = predicted_coeffs(t, 6, -3, 1, 6);
    for (int n = 1; n <= 6; ++n) {
        cplx hand = 0.0;
        for (long long d : divisors(n))
            hand += double(kronecker(-3, d)) * std::pow(double(d), -6.0) *
                    tv[(size_t)(n / d)];
        hand *= std::pow(double(n), 11.0) * pref;
        CHECK(rel(p.coeffs[n], hand) < 1e-13);
    }

    bool threw = false;
    try {
        predicted_coeffs(t, 6, -3, 1, 7); // needs (147, 1), absent
    } catch (const validation_error& e) {
        threw = true;
        CHECK(std::string(e.what()).find("147") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("eta assembly: linearity, divisor bookkeeping, validation") {
    MeromFormSpec spec;
    spec.k = 6;
    spec.Delta = -3;
    spec.rho = 1;
    spec.trunc = cfg9();

    // empty principal part: zero function, no divisor
    EtaAssembly empty = eta_for_f(spec);
    CHECK(empty.divisor.empty());
    CHECK(empty.max_divisor_height() == 0.0);
    CHECK(std::abs(empty.eval(cplx(0.2, 1.0))) == 0.0);

    spec.principal_part[{-1, 1}] = 2.5;
    spec.principal_part[{-4, 2}] = 0.5;
    EtaAssembly ass = eta_for_f(spec);
    REQUIRE(ass.divisor.size() == 3);
    const cplx z{0.17, 1.05};
    const cplx manual = 2.5 * eval_fkD(6, 1, -1, 1, -3, 1, z, spec.trunc) +
                        0.5 * eval_fkD(6, 1, -4, 2, -3, 1, z, spec.trunc);
    CHECK(rel(ass.eval(z), manual) < 1e-13);
    CHECK(ass.max_divisor_height() == doctest::Approx(std::sqrt(3.0)));

    for (const EtaDivisorPoint& pt : ass.divisor) {
        const double scale = std::pow(std::abs(double(pt.D) * -3.0), 2.5);
        CHECK(pt.scale == doctest::Approx(scale));
        CHECK(pt.weight ==
              doctest::Approx(pt.cplus * scale * double(pt.chi) / double(pt.w)));
    }

    MeromFormSpec bad = spec;
    bad.principal_part[{-2, 1}] = 1.0;
    CHECK_THROWS_AS(eta_for_f(bad), validation_error);
    MeromFormSpec pos = spec;
    pos.principal_part[{4, 0}] = 1.0;
    CHECK_THROWS_AS(eta_for_f(pos), validation_error);
}

TEST_CASE("zeta normalization kills the first coefficient") {
    FourierSeries2k eta;
    eta.k = 2;
    eta.N = 1;
    eta.coeffs[1] = cplx(3.0, 1.0);
    eta.coeffs[2] = cplx(5.0, 0.0);
    eta.coeffs[3] = cplx(0.0, 7.0);
    std::vector<double> G{1.0, -24.0, 252.0};

    const cplx c_top{1.0, 2.0};
    const cplx lam = predicted_prefactor(2, 1) * c_top;
    FourierSeries2k zeta = zeta_normalize(eta, G, 2, 1, c_top);
    CHECK(zeta.coeffs[1] == cplx(0.0));
    CHECK(zeta.error_estimates[1] == doctest::Approx(std::abs(eta.coeffs[1] - lam)));
    CHECK(rel(zeta.coeffs[2], eta.coeffs[2] - lam * (-24.0)) < 1e-14);
    CHECK(rel(zeta.coeffs[3], eta.coeffs[3] - lam * 252.0) < 1e-14);

    // zero top coefficient: nothing subtracted, series returned as-is
    FourierSeries2k same = zeta_normalize(eta, G, 2, 1, cplx(0.0));
    CHECK(same.coeffs.at(1) == eta.coeffs.at(1));
    CHECK(same.coeffs.at(3) == eta.coeffs.at(3));

    std::vector<double> badG{2.0, -24.0};
    CHECK_THROWS_AS(zeta_normalize(eta, badG, 2, 1, c_top), validation_error);
    std::vector<double> shortG{1.0, -24.0};
    CHECK_THROWS_AS(zeta_normalize(eta, shortG, 2, 1, c_top), validation_error);
    FourierSeries2k noFirst;
    noFirst.coeffs[2] = 1.0;
    CHECK_THROWS_AS(zeta_normalize(noFirst, G, 2, 1, c_top), validation_error);
}

TEST_CASE("weight-12 discriminant expansion and scalar Hecke operators") {
    const std::vector<long long> tau = delta_qexp(40);
    const std::vector<long long> expect{1,       -24,     252,    -1472,  4830,
                                        -6048,   -16744,  84480,  -113643, -115920,
                                        534612,  -370944};
    REQUIRE(tau.size() == 40);
    for (int i = 0; i < 12; ++i) CHECK(tau[(size_t)i] == expect[(size_t)i]);
    CHECK(tau[24] == tau[4] * tau[4] - 48828125); // tau(25) = tau(5)^2 - 5^11
    CHECK(tau[35] == tau[3] * tau[8]);            // tau(36) = tau(4) tau(9)
    CHECK_THROWS_AS(delta_qexp(0), validation_error);
    CHECK_THROWS_AS(delta_qexp(100000), validation_error);

    std::vector<cplx> b(tau.begin(), tau.end());
    for (auto [m, lambda] : {std::pair<int, double>{2, -24.0}, {3, 252.0}, {4, -1472.0}}) {
        std::vector<cplx> Tb = hecke_scalar(b, m, 6);
        for (std::size_t n = 1; n <= Tb.size(); ++n)
            CHECK(rel(Tb[n - 1], lambda * b[n - 1]) < 1e-12);
    }
    std::vector<cplx> id = hecke_scalar(b, 1, 6);
    for (std::size_t n = 0; n < id.size(); ++n) CHECK(id[n] == b[n]);
    CHECK_THROWS_AS(hecke_scalar(std::vector<cplx>{}, 2, 6), validation_error);
    CHECK_THROWS_AS(hecke_scalar(std::vector<cplx>(3), 4, 6), validation_error);
}

TEST_CASE("scalar Hecke action matches the table-side action") {
    // Arbitrary coefficients: the identity T_2(series of table) =
    // series of (2^{11} table|T_2) is formal, so it must hold to roundoff.
    CoeffTable t;
    t.N = 1;
    t.weight_times_2 = -9;
    t.dual = true;
    for (int m = 1; m <= 12; ++m)
        t.holo[{3LL * m * m, m % 2}] = cplx(std::sin(double(m)) + 2.0,
                                            0.25 * std::cos(3.0 * m));

    FourierSeries2k series = predicted_coeffs(t, 6, -3, 1, 6);
    std::vector<cplx> vec;
    for (int n = 1; n <= 6; ++n) vec.push_back(series.coeffs[n]);
    std::vector<cplx> lhs = hecke_scalar(vec, 2, 6);

    CoeffTable t2 = hecke_Tp(t, 2, 1 - 6, {{3, 1}, {12, 0}, {27, 1}});
    for (auto& [key, v] : t2.holo) v *= 2048.0; // 2^{2k-1}
    FourierSeries2k rhs = predicted_coeffs(t2, 6, -3, 1, 3);
    for (int n = 1; n <= 3; ++n) CHECK(rel(lhs[(size_t)n - 1], rhs.coeffs[n]) < 1e-10);
}

TEST_CASE("poincare series coefficients predict the fourier expansion") {
    WeilRep rep{1, true};
    const double kappa = -4.5;
    PrecisionConfig pcfg;
    pcfg.target_rel_error = 1e-7;
    PoincareEvaluator P(rep, kappa, -1, 1, 3.25, 0.30, pcfg);
    auto Pf = [&P](cplx tau) { return P(tau); };

    CoeffTable seed = extract_coeffs_two_height(Pf, kappa, 1, true, 0.8, 1.1,
                                                {{-1, 1}}, 64, pcfg);
    // The folded component pair doubles the seed coefficient.
    CHECK(std::abs(seed.cplus(-1, 1) - 2.0) < 1e-6);

    CoeffTable pos = extract_coeffs_two_height(Pf, kappa, 1, true, 0.32, 0.42,
                                               {{3, 1}, {12, 0}}, 64, pcfg);
    CoeffTable tab;
    tab.N = 1;
    tab.weight_times_2 = -9;
    tab.dual = true;
    tab.holo = pos.holo;

    MeromFormSpec spec;
    spec.k = 6;
    spec.Delta = -3;
    spec.rho = 1;
    spec.principal_part[{-1, 1}] = 1.0;
    spec.trunc.target_rel_error = 1e-10;
    EtaAssembly ass = eta_for_f(spec);

    FourierSeries2k left = fourier_coeffs(ass.eval, 6, 1, 2.0, 2, 16,
                                          ass.max_divisor_height() * 1.05);
    FourierSeries2k right = predicted_coeffs(tab, 6, -3, 1, 2);
    for (int n = 1; n <= 2; ++n) {
        CHECK(std::abs(right.coeffs[n].imag()) < 1e-4 * std::abs(right.coeffs[n]));
        CHECK(rel(left.coeffs[n], right.coeffs[n]) < 1e-4);
    }
}
