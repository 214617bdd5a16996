#include "mp/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "mp/algrec.hpp"
#include "mp/arith.hpp"
#include "mp/errors.hpp"

namespace mp {
namespace {

using clk = std::chrono::steady_clock;

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

double rel(cplx a, cplx b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

void logline(const CheckOptions& opt, const std::string& s) {
    if (opt.log) (*opt.log) << s << std::endl;
}

// The primary configuration: weight 12, level 1, twist -3, seed index (-1, 1).
MeromFormSpec primary_spec(double trunc_tol) {
    MeromFormSpec spec;
    spec.k = 6;
    spec.N = 1;
    spec.Delta = -3;
    spec.rho = 1;
    spec.principal_part[{-1, 1}] = 1.0;
    spec.trunc.target_rel_error = trunc_tol;
    return spec;
}

ScalarEvaluator primary_form(double tol) {
    PrecisionConfig cfg;
    cfg.target_rel_error = tol;
    return [cfg](cplx z) { return eval_fkD(6, 1, -1, 1, -3, 1, z, cfg); };
}

// Artifacts shared between criteria: the half-integral-weight coefficient
// table (expensive: four height groups of two-height extraction) and the
// direct Fourier series of the primary form at the designated heights.
struct Shared {
    bool have_table = false;
    CoeffTable table;
    double seed_dev = 0.0;    // |c+(-1,1) - 2|
    double worst_resid = 0.0; // worst positive-index two-height residual

    bool have_direct = false;
    FourierSeries2k direct; // n <= 6 from the line Im z = 2.0
    double cross23 = 0.0;   // agreement with the Im z = 3.0 line on n <= 2

    bool have_predicted = false;
    FourierSeries2k predicted;
};

void ensure_table(Shared& sh, const CheckOptions& opt) {
    if (sh.have_table) return;
    logline(opt, "  building the harmonic-form coefficient table "
                 "(four height groups, direct summation)...");
    WeilRep rep{1, true};
    const double kappa = -4.5, s = 3.25;
    PrecisionConfig pcfg;
    pcfg.target_rel_error = 1e-9;

    struct Group {
        double min_v, y1, y2;
        std::vector<std::pair<long long, long long>> targets;
    };
    // Each pair of indices is extracted from lines low enough that its
    // Fourier modes stay above the double-precision noise floor.
    const std::vector<Group> groups = {
        {0.78, 0.8, 1.1, {{-1, 1}, {3, 1}}},
        {0.31, 0.32, 0.42, {{3, 1}, {12, 0}}},
        {0.155, 0.16, 0.21, {{27, 1}, {48, 0}}},
        {0.10, 0.105, 0.135, {{75, 1}, {108, 0}}},
    };

    sh.table = CoeffTable{};
    sh.table.N = 1;
    sh.table.weight_times_2 = -9;
    sh.table.dual = true;
    for (const auto& g : groups) {
        PoincareEvaluator ev(rep, kappa, -1, 1, s, g.min_v, pcfg);
        VecEvaluator f = [&](cplx t) { return ev(t); };
        CoeffTable tab = extract_coeffs_two_height(f, kappa, 1, true, g.y1, g.y2,
                                                   g.targets, 128, pcfg);
        for (const auto& key : g.targets) {
            if (key.first < 0) {
                sh.seed_dev = std::abs(tab.cplus(key.first, key.second) - 2.0);
                continue;
            }
            sh.table.holo[key] = tab.cplus(key.first, key.second);
            if (tab.residual.count(key))
                sh.worst_resid = std::max(sh.worst_resid, tab.residual.at(key));
        }
    }
    sh.have_table = true;
}

void ensure_direct(Shared& sh, const CheckOptions& opt) {
    if (sh.have_direct) return;
    logline(opt, "  computing the direct fourier series on the lines "
                 "Im z = 2.0 and 3.0...");
    EtaAssembly ass = eta_for_f(primary_spec(1e-14));
    const double min_safe = ass.max_divisor_height() * 1.05;
    sh.direct = fourier_coeffs(ass.eval, 6, 1, 2.0, 6, 128, min_safe);
    // The second designated line carries indices n <= 2 above the noise
    // floor in double precision; they must agree with the primary line.
    auto A3 = fourier_line_dft(ass.eval, 3.0, 1, 2, 64);
    sh.cross23 = 0.0;
    for (int n = 1; n <= 2; ++n) {
        const cplx b3 = A3.at(n) * std::exp(2.0 * PI * n * 3.0);
        sh.cross23 = std::max(sh.cross23, rel(sh.direct.coeffs.at(n), b3));
    }
    sh.have_direct = true;
}

void ensure_predicted(Shared& sh, const CheckOptions& opt) {
    if (sh.have_predicted) return;
    ensure_table(sh, opt);
    sh.predicted = predicted_coeffs(sh.table, 6, -3, 1, 6);
    sh.have_predicted = true;
}

CriterionResult run_c1(Shared& sh, const CheckOptions& opt) {
    CriterionResult r;
    ensure_predicted(sh, opt);
    ensure_direct(sh, opt);
    double worst = 0.0;
    int worst_n = 1;
    for (int n = 1; n <= 6; ++n) {
        const double d = rel(sh.direct.coeffs.at(n), sh.predicted.coeffs.at(n));
        if (d > worst) {
            worst = d;
            worst_n = n;
        }
    }
    r.pass = worst <= 1e-4 && sh.cross23 <= 1e-4 && sh.seed_dev <= 1e-6;
    r.detail = fmt("per-coefficient max rel %.2e at n=%d (bar 1e-4); "
                   "2.0/3.0 line cross-agreement %.2e on n <= 2; "
                   "seed coefficient off by %.1e; "
                   "worst extraction residual %.1e",
                   worst, worst_n, sh.cross23, sh.seed_dev, sh.worst_resid);
    return r;
}

CriterionResult run_c2(Shared&, const CheckOptions& opt) {
    CriterionResult r;
    ScalarEvaluator f = primary_form(1e-7);
    EtaAssembly ass = eta_for_f(primary_spec(1e-9));
    PrecisionConfig quad;
    quad.target_rel_error = 1e-8;

    bool ok = true;
    std::ostringstream d;
    const long long mats[2][4] = {{2, 1, 1, 1}, {5, 2, 2, 1}};
    for (int i = 0; i < 2; ++i) {
        GeodesicCycle cy =
            cycle_from_matrix(mats[i][0], mats[i][1], mats[i][2], mats[i][3]);
        cy.base_point = balanced_base_point(cy);
        logline(opt, fmt("  pairing the weight-12 form with the cycle "
                         "(%lld,%lld;%lld,%lld)...",
                         mats[i][0], mats[i][1], mats[i][2], mats[i][3]));
        PairingResult p = pairing(f, cy, 6, ass, quad);
        const double raw = std::abs(p.raw_integral);
        ok = ok && std::abs(p.value) <= 1e-6 * raw;
        d << fmt("cycle (%lld,%lld;%lld,%lld): |pairing| %.1e vs raw "
                 "magnitude %.1e; ",
                 mats[i][0], mats[i][1], mats[i][2], mats[i][3],
                 std::abs(p.value), raw);
    }

    // Weight-4 positive-twist configuration: the form sum cancels
    // identically, so pairing and raw integral are both exactly zero.
    PrecisionConfig ftol;
    ftol.target_rel_error = 1e-7;
    ScalarEvaluator f2 = [ftol](cplx z) {
        return eval_fkD(2, 1, -4, 0, 1, 1, z, ftol);
    };
    MeromFormSpec s2;
    s2.k = 2;
    s2.N = 1;
    s2.Delta = 1;
    s2.rho = 1;
    s2.principal_part[{-4, 0}] = 1.0;
    EtaAssembly a2 = eta_for_f(s2);
    double worst2 = 0.0;
    for (int i = 0; i < 2; ++i) {
        GeodesicCycle cy =
            cycle_from_matrix(mats[i][0], mats[i][1], mats[i][2], mats[i][3]);
        cy.base_point = balanced_base_point(cy);
        PairingResult p = pairing(f2, cy, 2, a2, quad);
        ok = ok && std::abs(p.value) <= 1e-6 * std::abs(p.raw_integral);
        worst2 = std::max(worst2, std::abs(p.value));
    }
    d << fmt("weight-4 positive-twist config pairs to %.1e on both cycles",
             worst2);
    r.pass = ok;
    r.detail = d.str();
    return r;
}

CriterionResult run_c3(Shared&, const CheckOptions& opt) {
    CriterionResult r;
    logline(opt, "  integrating two homotopy classes around one pole...");
    const int k = 6;
    ScalarEvaluator f = primary_form(1e-9);
    GeodesicCycle cy = cycle_from_matrix(2, 1, 1, 1);
    cy.base_point = balanced_base_point(cy);

    // Loop of hyperbolic radius 0.34 around the pole at rho = zeta_3 + 1,
    // walked as an octagon; both paths meet the loop at its bottom node so
    // their difference is exactly one counterclockwise circuit.
    const cplx rho(0.5, std::sqrt(3.0) / 2);
    const double hr = 0.34;
    const cplx pc(rho.real(), rho.imag() * std::cosh(hr));
    const double re_ = rho.imag() * std::sinh(hr);
    std::vector<cplx> octagon;
    for (int j = 0; j < 8; ++j)
        octagon.push_back(pc + re_ * std::polar(1.0, -PI / 2 + j * PI / 4));
    std::vector<cplx> wp1 = {octagon[0]};
    std::vector<cplx> wp2 = octagon;
    wp2.push_back(octagon[0]);

    std::vector<cplx> poles;
    for (int n = -2; n <= 3; ++n)
        poles.push_back(cplx(-0.5 + n, std::sqrt(3.0) / 2));

    auto [v1, v2] = path_independence_check(f, cy, k, poles, wp1, wp2);
    const cplx jump = v2.projected - v1.projected;
    const double scale =
        std::abs(v1.projected) + std::abs(v2.projected) + std::abs(jump);
    const double real_gap = std::abs(v1.value - v2.value);

    // Predicted jump: the contour picks up (pi / Im rho) times the product
    // of the leading local coefficient of f and the index-(k-1) elliptic
    // coefficient of Q^{k-1}, projected like the pairing.
    ResidueResult rr = residue_at(f, rho, k, 0.2);
    const double res_dev =
        std::abs(rr.value - 2.0 * std::pow(3.0, 2.5)) / (2.0 * std::pow(3.0, 2.5));
    const cplx ell = elliptic_coeff_Q(cy, rho, k);
    const cplx pred = cpow_int(cplx(0, 1) / std::sqrt(5.0), k - 1) *
                      (PI / rho.imag()) * rr.value *
                      cpow_int(cplx(0, 2 * rho.imag()), k) * ell;
    const double jump_rel = rel(jump, pred);

    r.pass = real_gap <= 1e-6 * scale && jump_rel <= 1e-4 && res_dev <= 1e-6;
    r.detail = fmt("real parts differ by %.1e against scale %.1e (bar 1e-6); "
                   "imaginary jump matches the residue prediction to %.2e "
                   "(bar 1e-4); local residue off closed form by %.1e",
                   real_gap, scale, jump_rel, res_dev);
    return r;
}

CriterionResult run_c4(Shared& sh, const CheckOptions& opt) {
    CriterionResult r;
    ensure_predicted(sh, opt);
    ensure_direct(sh, opt);
    std::vector<cplx> vec;
    for (int n = 1; n <= 6; ++n) vec.push_back(sh.direct.coeffs.at(n));
    std::vector<cplx> lhs = hecke_scalar(vec, 2, 6);

    CoeffTable t2 = hecke_Tp(sh.table, 2, 1 - 6, {{3, 1}, {12, 0}, {27, 1}});
    for (auto& [key, v] : t2.holo) v *= 2048.0; // 2^{2k-1}
    FourierSeries2k rhs = predicted_coeffs(t2, 6, -3, 1, 3);

    double worst = 0.0;
    for (int n = 1; n <= 3; ++n)
        worst = std::max(worst, rel(lhs[(size_t)n - 1], rhs.coeffs.at(n)));
    r.pass = worst <= 1e-4;
    r.detail = fmt("scalar vs table-side action: max rel %.2e on n <= 3 "
                   "(bar 1e-4)",
                   worst);
    return r;
}

CriterionResult run_c5(Shared& sh, const CheckOptions& opt) {
    CriterionResult r;
    ensure_direct(sh, opt);

    const auto Gq = delta_qexp(60);
    const std::vector<double> Gd(Gq.begin(), Gq.end());
    const cplx pref = predicted_prefactor(6, -3);
    const double c_top = (sh.direct.coeffs.at(1) / pref).real();
    FourierSeries2k zeta = zeta_normalize(sh.direct, Gd, 6, -3, c_top);
    const bool first_zero = zeta.coeffs.at(1) == cplx(0.0, 0.0);

    // Pairing side.  The cusp form pairs to zero against every cycle whose
    // ideal class is fixed by the mirror symmetry z -> -conj(z); the period
    // quotient only normalizes on a cycle from a class of order > 2.  The
    // smallest trace producing one is 15, with matrix (3,7;5,12).  The
    // designated small cycle (2,1;1,1) must be rejected with advice.
    ScalarEvaluator eta = primary_form(1e-7);
    ScalarEvaluator G = [Gd](cplx z) {
        const cplx q = std::exp(cplx(0, 2.0 * PI) * z);
        cplx acc = 0.0;
        for (size_t n = Gd.size(); n-- > 0;) acc = acc * q + Gd[n];
        return acc * q;
    };
    const cplx scaleG = pref * c_top;
    ScalarEvaluator zeta_eval = [eta, G, scaleG](cplx z) {
        return eta(z) - scaleG * G(z);
    };
    EtaAssembly ass = eta_for_f(primary_spec(1e-9));
    PrecisionConfig quad;
    quad.target_rel_error = 1e-8;

    logline(opt, "  measuring the period quotient on the cycle (3,7;5,12)...");
    GeodesicCycle good = cycle_from_matrix(3, 7, 5, 12);
    good.base_point = balanced_base_point(good);
    PeriodCheckResult out =
        period_formula_check(zeta_eval, G, good, 6, -3, ass, c_top, quad);
    const double period_rel =
        std::abs(out.rhs - out.lhs) / std::max(1e-30, std::abs(out.lhs));
    const bool norm_ok = out.normalization == "i*pi^k";

    bool degenerate_ok = false;
    try {
        GeodesicCycle small = cycle_from_matrix(2, 1, 1, 1);
        small.base_point = balanced_base_point(small);
        period_formula_check(zeta_eval, G, small, 6, -3, ass, c_top, quad);
    } catch (const validation_error& e) {
        degenerate_ok =
            std::string(e.what()).find("different cycle") != std::string::npos;
    }

    // Rational recognition of the normalized coefficients.
    bool rec_ok = true;
    std::ostringstream recs;
    for (int n = 1; n <= 4; ++n) {
        const cplx x = normalize_coefficient(zeta.coeffs.at(n), 6, -3);
        const double mag = std::max(1.0, std::abs(x));
        rec_ok = rec_ok && std::abs(x.imag()) <= 1e-6 * mag;
        RecognitionResult rr = recognize_rational(x.real(), 1000000);
        rec_ok = rec_ok && rr.recognized;
        if (n > 1) recs << ", ";
        if (rr.recognized && rr.candidate.den == 1)
            recs << fmt("%lld", rr.candidate.num);
        else if (rr.recognized)
            recs << fmt("%lld/%lld", rr.candidate.num, rr.candidate.den);
        else
            recs << fmt("unrecognized (%.6g)", x.real());
    }

    r.pass = first_zero && period_rel <= 1e-4 && norm_ok && degenerate_ok &&
             rec_ok;
    r.detail = fmt("first zeta coefficient %s; period residual %.2e on the "
                   "order-3 class cycle (3,7;5,12) under %s (bar 1e-4); the "
                   "designated cycle (2,1;1,1) has an identically vanishing "
                   "cusp-form pairing and %s rejected with advice; normalized "
                   "coefficients n = 1..4 recognized as [%s]",
                   first_zero ? "exactly zero" : "NOT zero", period_rel,
                   out.normalization.c_str(), degenerate_ok ? "is" : "is NOT",
                   recs.str().c_str());
    return r;
}

CriterionResult run_c6(Shared&, const CheckOptions& opt) {
    CriterionResult r;
    logline(opt, "  checking special values, the laplace identity, and the "
                 "raising operators...");
    // Closed-form special values.
    const double w1 = script_W(-4.5, 3.25, 3.0);
    const double d1 = std::abs(w1 - std::exp(-1.5)) / std::exp(-1.5);
    const double ref2 = std::exp(1.0) * inc_gamma(1.5, 2.0);
    const double w2 = script_W(-0.5, 1.25, -2.0);
    const double d2 = std::abs(w2 - ref2) / ref2;

    // Laplace-type integral identity on a 2x2 parameter grid.
    double dint = 0.0;
    for (double s : {1.25, 3.25}) {
        for (auto [al, be] :
             {std::pair{1.0, 1.0}, {4.0 * PI * 3.0, PI * 4.0}}) {
            auto [l, rr_] = check_integral_W(0.5, s, al, be);
            dint = std::max(dint, std::abs(l - rr_) / std::abs(rr_));
        }
    }

    // Raising against the hypergeometric closed form at k = 2 and 3.
    LatticeVector X;
    X.a = Rational(1);
    X.b = Rational(1);
    X.c = Rational(1, 2);
    X.N = 1;
    const Rational m(-1, 4);
    const cplx zX(0.2, 1.1);
    RaisingCheck r2 = raising_hypergeometric_check(2, 1, m, X, zX);
    RaisingCheck r3 = raising_hypergeometric_check(3, 1, m, X, zX);
    const double dh = std::max(rel(r2.lhs, r2.rhs), rel(r3.lhs, r3.rhs));

    // Raising the seed series in weight matches the shifted series.
    WeilRep rep{1, true};
    PrecisionConfig cfg;
    cfg.target_rel_error = 1e-7;
    PoincareEvaluator low(rep, -4.5, -1, 1, 3.25, 1.05, cfg);
    PoincareEvaluator high(rep, -2.5, -1, 1, 3.25, 1.05, cfg);
    VecEvaluator lowf = [&](cplx t) { return low(t); };
    const cplx tau(0.3, 1.1);
    RaisingResult rr = raising_numeric(lowf, -4.5, 1, tau, 0.01);
    cvec rhs = high(tau);
    const double factor = PI * 1.0 / 1.0; // pi |D| / N
    double scale = 0.0, dn = 0.0;
    for (auto& z : rhs) {
        z *= factor;
        scale = std::max(scale, std::abs(z));
    }
    for (size_t i = 0; i < rhs.size(); ++i)
        dn += std::norm(rr.value[i] - rhs[i]);
    dn = std::sqrt(dn);

    r.pass = d1 <= 1e-10 && d2 <= 1e-10 && dint <= 1e-6 && dh <= 1e-4 &&
             dn <= 1e-4 * scale;
    r.detail = fmt("special values off by %.1e / %.1e (bar 1e-10); laplace "
                   "identity max rel %.1e on the 2x2 grid (bar 1e-6); "
                   "hypergeometric raising max rel %.1e at k = 2, 3 "
                   "(bar 1e-4); series raising defect %.1e against scale "
                   "%.1e (bar 1e-4)",
                   d1, d2, dint, dh, dn, scale);
    return r;
}

MetaplecticElement elT() { return {1, 1, 0, 1, 1}; }
MetaplecticElement elTinv() { return {1, -1, 0, 1, 1}; }
MetaplecticElement elS() { return {0, -1, 1, 0, 1}; }

MetaplecticElement random_word(std::uint64_t& state, int len) {
    MetaplecticElement g; // identity
    for (int i = 0; i < len; ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        switch ((state >> 33) % 3) {
            case 0: g = mp_mul(g, elT()); break;
            case 1: g = mp_mul(g, elTinv()); break;
            default: g = mp_mul(g, elS()); break;
        }
    }
    return g;
}

CriterionResult run_c7(Shared&, const CheckOptions& opt) {
    CriterionResult r;
    logline(opt, "  checking modularity, residues, inversion, unitarity...");
    PrecisionConfig cfg9;
    cfg9.target_rel_error = 1e-9;

    // Modularity under the group generators.
    ScalarEvaluator f = primary_form(1e-9);
    const cplx z{0.1, 1.3};
    const cplx fz = f(z);
    double mod_dev = rel(f(-1.0 / z), cpow_int(z, 12) * fz);
    mod_dev = std::max(mod_dev, rel(f(z + 1.0), fz));
    mod_dev = std::max(mod_dev, rel(f(-std::conj(z)), std::conj(fz)));

    // Residues against divisor weights on three configurations.
    double res_dev = 0.0;
    {
        EtaAssembly ass = eta_for_f(primary_spec(1e-9));
        const EtaDivisorPoint& pt = ass.divisor.at(0);
        const int stack = class_pair_stack(6, -3, 1, mod_ll(pt.r * 1, 2));
        ResidueResult rr = residue_at(ass.eval, pt.point, 6, 0.15, 64);
        res_dev = std::max(res_dev, rel(rr.value, pt.weight * pt.w * stack));
    }
    {
        MeromFormSpec spec;
        spec.k = 6;
        spec.Delta = -4;
        spec.rho = 0;
        spec.principal_part[{-1, 1}] = 1.0;
        spec.trunc = cfg9;
        EtaAssembly ass = eta_for_f(spec);
        const EtaDivisorPoint& pt = ass.divisor.at(0);
        ResidueResult rr = residue_at(ass.eval, pt.point, 6, 0.15, 64);
        res_dev = std::max(res_dev, rel(rr.value, pt.weight * pt.w * 2));
    }
    {
        MeromFormSpec spec;
        spec.k = 6;
        spec.Delta = -3;
        spec.rho = 1;
        spec.principal_part[{-4, 2}] = 1.0;
        spec.trunc = cfg9;
        EtaAssembly ass = eta_for_f(spec);
        for (const EtaDivisorPoint& pt : ass.divisor) {
            ResidueResult rr = residue_at(ass.eval, pt.point, 6, 0.15, 64);
            res_dev = std::max(res_dev, rel(rr.value, pt.weight * pt.w * 2));
        }
    }

    // Divisor-sum round trip on integer inputs: the inversion must recover
    // them exactly on the integer lattice; the float deviation before
    // rounding reflects the rational kernel applied in floating point.
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> u(-9, 9);
    bool inv_exact = true;
    double inv_dev = 0.0;
    for (long long Delta : {-3LL, 5LL}) {
        for (int k : {2, 6}) {
            std::vector<std::complex<double>> a(10);
            for (auto& w : a) w = {double(u(rng)), double(u(rng))};
            auto b = forward_divisor_sum(a, k, Delta);
            auto a2 = invert_divisor_sum(b, k, Delta);
            for (size_t i = 0; i < a.size(); ++i) {
                inv_exact = inv_exact &&
                            std::llround(a2[i].real()) ==
                                (long long)a[i].real() &&
                            std::llround(a2[i].imag()) == (long long)a[i].imag();
                inv_dev = std::max(inv_dev, std::abs(a2[i] - a[i]));
            }
        }
    }

    // Unitarity of the metaplectic-group matrices on random words.
    std::uint64_t state = opt.seed;
    double uni_dev = 0.0;
    for (long long N : {1LL, 5LL}) {
        WeilRep rep{N, N == 5};
        for (int trial = 0; trial < 25; ++trial) {
            MetaplecticElement g = random_word(state, 3 + trial % 8);
            uni_dev = std::max(uni_dev, unitarity_defect(weil_matrix(rep, g)));
        }
    }

    r.pass = mod_dev <= 1e-8 && res_dev <= 1e-6 && inv_exact &&
             inv_dev <= 1e-12 && uni_dev <= 1e-12;
    r.detail = fmt("modularity defect %.1e (bar 1e-8); residues vs divisor "
                   "weights %.1e (bar 1e-6); inversion %s integer inputs "
                   "(float deviation %.1e); unitarity defect %.1e "
                   "(bar 1e-12)",
                   mod_dev, res_dev,
                   inv_exact ? "exactly recovers" : "FAILS to recover",
                   inv_dev, uni_dev);
    return r;
}

const char* const kLabels[7] = {
    "fourier coefficients match the poincare prediction",
    "canonical pairings vanish on the designated cycles",
    "pairings are path independent up to residue jumps",
    "scalar and table-side hecke actions agree",
    "normalization, period quotient, and rational recognition",
    "special function identities",
    "structural invariants",
};

} // namespace

int criterion_count() { return 7; }

std::string criterion_label(int index) {
    if (index < 1 || index > 7)
        throw validation_error("criterion index must be between 1 and 7");
    return kLabels[index - 1];
}

std::vector<CriterionResult> run_acceptance_suite(const CheckOptions& opt) {
    if (opt.only < 0 || opt.only > 7)
        throw validation_error("criterion index must be between 1 and 7");
    using Runner = CriterionResult (*)(Shared&, const CheckOptions&);
    const Runner runners[7] = {run_c1, run_c2, run_c3, run_c4,
                               run_c5, run_c6, run_c7};
    Shared sh;
    std::vector<CriterionResult> out;
    for (int i = 1; i <= 7; ++i) {
        if (opt.only != 0 && opt.only != i) continue;
        logline(opt, fmt("[%d/7] %s", i, kLabels[i - 1]));
        const auto t0 = clk::now();
        CriterionResult r;
        try {
            r = runners[i - 1](sh, opt);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = fmt("unexpected error: %s", e.what());
        }
        r.index = i;
        r.label = kLabels[i - 1];
        r.seconds = std::chrono::duration<double>(clk::now() - t0).count();
        logline(opt, fmt("      %s in %.1fs", r.pass ? "PASS" : "FAIL",
                         r.seconds));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace mp
