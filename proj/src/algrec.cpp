#include "mp/algrec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "mp/arith.hpp"
#include "mp/errors.hpp"

namespace mp {

namespace {

struct Convergent {
    long long p, q;
    double residual;
};

// Continued-fraction convergents of x, stopped when the denominator leaves
// the representable range or the remainder is exhausted.
std::vector<Convergent> convergents_of(double x) {
    std::vector<Convergent> out;
    long long pm1 = 1, pm2 = 0; // p_{j-1}, p_{j-2}
    long long qm1 = 0, qm2 = 1;
    double t = x;
    for (int j = 0; j < 64; ++j) {
        const double fl = std::floor(t);
        if (std::abs(fl) > 9.0e14) break;
        const long long a = (long long)fl;
        const long long p = a * pm1 + pm2;
        const long long q = a * qm1 + qm2;
        if (q > (long long)9e14 || std::abs((double)p) > 9.0e17) break;
        out.push_back({p, q, std::abs(x - (double)p / (double)q)});
        pm2 = pm1;
        pm1 = p;
        qm2 = qm1;
        qm1 = q;
        const double frac = t - fl;
        if (frac < 1e-18) break; // terminated: x is this convergent exactly
        t = 1.0 / frac;
    }
    return out;
}

} // namespace

RecognitionResult recognize_rational(double x, long long max_den) {
    if (max_den < 1) throw validation_error("recognize_rational: max_den must be >= 1");
    RecognitionResult res;
    res.value = cplx(x, 0.0);
    res.denominator_bound = max_den;
    if (!std::isfinite(x)) {
        res.residual = std::abs(x);
        return res;
    }
    const std::vector<Convergent> conv = convergents_of(x);
    int best = -1;
    for (int j = 0; j < (int)conv.size(); ++j)
        if (conv[j].q <= max_den) best = j;
    if (best < 0) {
        res.residual = std::abs(x);
        return res;
    }
    const Convergent& c = conv[best];
    res.residual = c.residual;
    const double close_enough = 1e-6 * std::max(1.0, std::abs(x));
    if (c.residual > close_enough) return res;
    // Plateau signature: the candidate is exact, or the next convergent
    // improves on it by orders of magnitude (the huge partial quotient that
    // only a rational-plus-noise value produces).
    bool plateau = false;
    if (c.residual == 0.0 || best + 1 >= (int)conv.size()) {
        plateau = true;
    } else {
        const double next = conv[best + 1].residual;
        plateau = next < c.residual / 1e3;
    }
    if (!plateau) return res;
    res.recognized = true;
    res.candidate = Rational(c.p, c.q);
    return res;
}

cplx normalize_coefficient(cplx b, int k, long long Delta) {
    return b / predicted_prefactor(k, Delta);
}

PeriodCheckResult period_formula_check(const ScalarEvaluator& zeta,
                                       const ScalarEvaluator& G,
                                       const GeodesicCycle& cycle, int k,
                                       long long Delta,
                                       const EtaAssembly& assembly, double c_top,
                                       const PrecisionConfig& cfg) {
    PairingResult pg = pairing(G, cycle, k, std::vector<cplx>{}, cfg);
    const double proj = std::pow(double(cycle.d_gamma), -0.5 * (k - 1));
    const double scale = pg.l1_magnitude * proj;
    if (std::abs(pg.value) <= 1e-8 * scale)
        throw validation_error(
            "period_formula_check: the cycle pairs to zero with the "
            "holomorphic form; choose a different cycle");
    PairingResult pz = pairing(zeta, cycle, k, assembly, cfg);

    const cplx quotient = -cplx(pz.value / pg.value, 0.0);
    const cplx pref_main = predicted_prefactor(k, Delta); // C i pi^k sqrt(Delta)
    const cplx sqrt_delta = Delta >= 0
                                ? cplx(std::sqrt((double)Delta), 0.0)
                                : cplx(0.0, std::sqrt((double)-Delta));
    const cplx pref_alt = predicted_constant(k, Delta).to_double() * PI *
                          cpow_int(cplx(0.0, 1.0), k) * sqrt_delta;

    PeriodCheckResult out;
    out.lhs = c_top;
    out.zeta_pairing = pz.value;
    out.G_pairing = pg.value;
    out.pairing_scale = scale;
    const double rhs_main = (quotient / pref_main).real();
    const double rhs_alt = (quotient / pref_alt).real();
    if (std::abs(c_top - rhs_main) <= std::abs(c_top - rhs_alt)) {
        out.rhs = rhs_main;
        out.rhs_alt = rhs_alt;
        out.normalization = "i*pi^k";
    } else {
        out.rhs = rhs_alt;
        out.rhs_alt = rhs_main;
        out.normalization = "pi*i^k";
    }
    return out;
}

HeckeRecursionReport hecke_recursion_check(
    const CoeffTable& table, bool remainder_rational_expected,
    const std::map<long long, Rational>& eigenvalues, int k, long long Delta,
    long long rho, int n_max, long long max_den) {
    if (k < 1) throw validation_error("hecke_recursion_check: k must be >= 1");
    if (n_max < 1) throw validation_error("hecke_recursion_check: n_max must be >= 1");
    const long long base_D = std::llabs(Delta);
    if (!table.has(base_D, rho))
        throw validation_error("hecke_recursion_check: table lacks the base index (" +
                               std::to_string(base_D) + ", " + std::to_string(rho) +
                               ")");

    HeckeRecursionReport report;
    report.rows.push_back({1, cplx(0.0), recognize_rational(0.0, max_den), true});

    for (long long p = 2; p <= n_max; ++p) {
        bool prime = p >= 2;
        for (long long d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        if (table.N % p == 0)
            throw validation_error("hecke_recursion_check: prime " +
                                   std::to_string(p) + " divides the level");
        auto lam_it = eigenvalues.find(p);
        if (lam_it == eigenvalues.end())
            throw validation_error("hecke_recursion_check: missing eigenvalue for n = " +
                                   std::to_string(p));
        CoeffTable acted = hecke_Tp(table, p, 1 - k, {{base_D, rho}});
        const double pk = std::pow((double)p, 2 * k - 1);
        const cplx remainder = pk * acted.cplus(base_D, rho) -
                               lam_it->second.to_double() * table.cplus(base_D, rho);

        HeckeRecursionRow row;
        row.n = p;
        row.remainder = remainder;
        row.recognition = recognize_rational(remainder.real(), max_den);
        const bool imag_small =
            std::abs(remainder.imag()) <= 1e-6 * std::max(1.0, std::abs(remainder));
        row.pass = !remainder_rational_expected ||
                   (row.recognition.recognized && imag_small);
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace mp
