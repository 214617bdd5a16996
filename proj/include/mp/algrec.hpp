#pragma once

#include <map>
#include <string>
#include <vector>

#include "mp/cycles.hpp"
#include "mp/maass.hpp"
#include "mp/merom.hpp"
#include "mp/rational.hpp"
#include "mp/specfun.hpp"
#include "mp/util.hpp"

namespace mp {

// Result of trying to read a floating-point number as a rational with
// bounded denominator.  `residual` is |value - candidate| when a candidate
// was accepted, otherwise the best residual seen within the bound.
struct RecognitionResult {
    cplx value;
    bool recognized = false;
    Rational candidate;
    long long denominator_bound = 0;
    double residual = 0.0;
};

// Best continued-fraction convergent of x with denominator <= max_den.  The
// candidate is accepted only when it is close (residual <= 1e-6 max(1,|x|))
// and the continued fraction shows the plateau signature of a true rational:
// either it terminates at the candidate, or the next convergent improves the
// residual by more than a factor of 1e3 (a jump that generic irrationals do
// not produce).
RecognitionResult recognize_rational(double x, long long max_den);

// Divides a Fourier coefficient by the predicted transcendental factor
// (rational constant times i pi^k sqrt(Delta)); on rational-eigenform
// configurations the result is real and rational.
cplx normalize_coefficient(cplx b, int k, long long Delta);

struct PeriodCheckResult {
    double lhs = 0.0;       // the coefficient the quotient should reproduce
    double rhs = 0.0;       // period quotient under the matching normalization
    double rhs_alt = 0.0;   // the same quotient under the other normalization
    std::string normalization; // "i*pi^k" or "pi*i^k", whichever rhs uses
    double zeta_pairing = 0.0;
    double G_pairing = 0.0;
    double pairing_scale = 0.0; // projected magnitude scale of the G pairing
};

// Checks the period identity c = -(zeta, C) / (normalizer * (G, C)) on one
// cycle: lhs is the supplied coefficient c_top, rhs the measured quotient.
// Two candidate normalizers differing by i^(k-1)/pi^(k-1) are evaluated and
// the closer one is reported.  A cycle on which (G, C) is numerically zero
// is rejected with advice to pick a different cycle.
PeriodCheckResult period_formula_check(const ScalarEvaluator& zeta,
                                       const ScalarEvaluator& G,
                                       const GeodesicCycle& cycle, int k,
                                       long long Delta,
                                       const EtaAssembly& assembly, double c_top,
                                       const PrecisionConfig& cfg = {});

struct HeckeRecursionRow {
    long long n = 1;
    cplx remainder;          // n^{2k-1} (f|T_n) - lambda_n f at the base index
    RecognitionResult recognition;
    bool pass = true;
};

struct HeckeRecursionReport {
    std::vector<HeckeRecursionRow> rows;
    bool all_pass = true;
};

// For each prime n <= n_max forms the remainder
//   n^{2k-1} c_{f|T_n}(|Delta|, rho) - lambda_n c_f(|Delta|, rho)
// from the coefficient table and tries to recognize it as a rational: the
// combination cancels the transcendental parts, so on rational-eigenform
// configurations it must be rational even though the individual coefficients
// are not.  This expresses c(n^2|Delta|, n rho) through smaller indices plus
// a rational remainder; prime steps generate the full recursion.  n = 1 is
// recorded as a vacuous pass.  Missing table entries or eigenvalues are
// validation errors naming the gap.
HeckeRecursionReport hecke_recursion_check(
    const CoeffTable& table, bool remainder_rational_expected,
    const std::map<long long, Rational>& eigenvalues, int k, long long Delta,
    long long rho, int n_max, long long max_den = 1000000);

} // namespace mp
