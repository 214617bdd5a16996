#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mp/maass.hpp"
#include "mp/qf.hpp"
#include "mp/rational.hpp"
#include "mp/specfun.hpp"
#include "mp/util.hpp"

namespace mp {

// Spec for a weight-2k meromorphic modular form on Gamma_0(N) assembled from
// a twist datum (Delta, rho) and a principal part: the map (D, r) -> c^+(D, r)
// with D < 0 selects which building blocks f_{k,D,r,Delta,rho} enter and with
// which real weights.  Indices must satisfy D = sign(Delta) r^2 mod 4N and
// rho^2 = Delta mod 4N.
struct MeromFormSpec {
    int k = 2;
    long long N = 1;
    long long Delta = 1; // fundamental discriminant
    long long rho = 0;   // residue mod 2N
    std::map<std::pair<long long, long long>, double> principal_part;
    PrecisionConfig trunc{};
};

// Fourier series of a weight-2k form on the line Im z = height_used:
// f(z) = sum_{n >= 1} b_n e(n z).  There is never a constant term for the
// forms produced here; error_estimates carries per-index diagnostics
// (index 0: magnitude of the measured constant term, small indices: relative
// two-height disagreement).
struct FourierSeries2k {
    int k = 2;
    long long N = 1;
    std::map<int, cplx> coeffs;
    double height_used = 0.0;
    std::map<int, double> error_estimates;
};

using ScalarEvaluator = std::function<cplx(cplx)>;

// f_{k,D,r,Delta,rho}(z) = i^k |D Delta|^{k-1/2} sum_Q sgn(Q) chi_Delta(Q)
// / Q(z,1)^k over the integral forms [aN, b, c] of discriminant D|Delta| with
// b = r rho mod 2N and both signs of a.  Truncation: |a| <= A_max chosen so
// the crude tail bound |Q(z,1)| >= N|a| Im(z)^2 meets cfg.target_rel_error
// (treated as an absolute tolerance on the form sum), with a per-|a| window
// on the root's real part.  Throws validation_error when z sits inside the
// exclusion radius of a pole (the offending form is named) and
// numerical_error when the truncation bound is unreachable.
cplx eval_fkD(int k, long long N, long long D, long long r, long long Delta,
              long long rho, cplx z, const PrecisionConfig& cfg = {});

// Petersson Poincare series eta_{k,rho}(z): one half times the sum over
// gamma in Gamma_0(N) of [((w - rho)(w - rho~)/(rho - rho~))^{-k}]|_{2k}
// gamma, the unique-up-to-cusp-forms weight-2k form with a single order-k
// pole on the orbit of rho_point, normalized so the leading local
// coefficient at rho_point is 1.  cfg.target_rel_error is an absolute
// tolerance on the sum; feasible radii limit small k to loose tolerances.
cplx eval_petersson_eta(int k, long long N, cplx rho_point, cplx z,
                        const PrecisionConfig& cfg = {});

// Raw discrete Fourier transform on the horizontal line at height y:
// A_n = (1/samples) sum_j f(x_j + i y) e(-n x_j), for n in [n_lo, n_hi].
// No exponential rescaling is applied; useful for constant-term diagnostics.
std::map<int, cplx> fourier_line_dft(const ScalarEvaluator& f, double y,
                                     int n_lo, int n_hi, int samples);

// Fourier coefficients b_n = e^{2 pi n y} A_n for n = 1..n_max from the line
// at height y, with an internal re-extraction at 1.25*y on the lowest
// indices: their relative disagreement lands in error_estimates, and a
// disagreement above one percent raises numerical_error quoting both
// values.  y must exceed min_safe_height (pass the top divisor height so
// poles stay strictly below the sampling line); samples must be at least
// 4*n_max.
FourierSeries2k fourier_coeffs(const ScalarEvaluator& f, int k, long long N,
                               double y, int n_max, int samples,
                               double min_safe_height = 0.0);

// C_{k,Delta} = (-2 sign(Delta))^k |Delta|^{k-1} / (k-1)! as an exact
// rational.
Rational predicted_constant(int k, long long Delta);

// C_{k,Delta} i pi^k sqrt(Delta), with sqrt(Delta) = i sqrt(|Delta|) for
// Delta < 0 (principal branch).  The scalar multiplying the divisor sum in
// predicted_coeffs and the multiple of G removed by zeta_normalize.
cplx predicted_prefactor(int k, long long Delta);

// The coefficient formula driven by a table of half-integral-weight
// coefficients: b_n = C_{k,Delta} i pi^k sqrt(Delta) n^{2k-1} sum_{d | n}
// (Delta/d) d^{-k} c^+(|Delta| n^2/d^2, rho n/d).  Throws validation_error
// naming the first missing table index.
FourierSeries2k predicted_coeffs(const CoeffTable& table, int k,
                                 long long Delta, long long rho, int n_max);

// Local multiplicity of the form stack at a Heegner point: a positive
// definite class [A, b, c] with b = bres mod 2N contributes together with
// its negative [-A, -b, -c] exactly when -bres = bres mod 2N, and the pair
// combines with the factor 1 - sign(Delta) (-1)^k.  Zero in the cancelling
// sign regime (then the whole form sum vanishes identically).
int class_pair_stack(int k, long long Delta, long long N, long long bres);

// One point of the residue divisor of an assembled eta, with the
// bookkeeping needed to compare contour residues against divisor weights:
// weight = cplus * scale * chi / w with scale = |D Delta|^{(k-1)/2}.
struct EtaDivisorPoint {
    cplx point;
    double weight = 0.0;
    int chi = 0;
    int w = 1;
    long long D = 0, r = 0;
    double scale = 1.0;
    double cplus = 0.0;
    QuadForm form;
};

struct EtaAssembly {
    MeromFormSpec spec;
    ScalarEvaluator eval;
    std::vector<EtaDivisorPoint> divisor;
    double max_divisor_height() const;
};

// eta(f) = sum_{(D,r)} c^+(D, r) f_{k,D,r,Delta,rho}: the weight-2k form
// whose residue divisor is the correspondingly weighted union of Heegner
// divisors scaled by |D Delta|^{(k-1)/2}.  An empty principal part gives the
// zero function and an empty divisor.
EtaAssembly eta_for_f(const MeromFormSpec& spec);

// Leading local coefficient a at rho_point of an at-worst-order-k pole:
// f(z) = a ((z - rho)(z - rho~)/(rho - rho~))^{-k} + lower-order terms.  The
// value is the average of f(z) ((z - rho)(z - rho~)/(rho - rho~))^k over the
// circle |X| = contour_radius in the local coordinate X = (z - rho)/(z -
// rho~), which kills every other term of the local expansion exactly.  The
// result is validated against the half-radius contour; a disagreement (for
// instance another pole inside the contour) raises numerical_error.  Returns
// the real part; the imaginary part is reported as a diagnostic.
struct ResidueResult {
    double value = 0.0;
    double imag_residual = 0.0;
};
ResidueResult residue_at(const ScalarEvaluator& f, cplx rho_point, int k,
                         double contour_radius, int samples = 64);

// zeta = eta - predicted_prefactor(k, Delta) * c_top * G, the unique shift
// by a multiple of the normalized eigenform G that kills the first Fourier
// coefficient.  The output's first coefficient is exactly zero by
// construction; the numerical residual |eta_1 - prefactor * c_top * G_1| is
// recorded in error_estimates[1].  G_coeffs is the q-expansion a_1, a_2, ...
// and must start with a_1 = 1.
FourierSeries2k zeta_normalize(const FourierSeries2k& eta_series,
                               const std::vector<double>& G_coeffs, int k,
                               long long Delta, cplx c_top);

// q-expansion of the normalized level-one weight-12 cusp form, computed by
// expanding q prod_{m >= 1} (1 - q^m)^24 with exact integer arithmetic.
// Returns coefficients of q^1..q^{n_max}.
std::vector<long long> delta_qexp(int n_max);

// Classical scalar Hecke operator T_m in weight 2k on a q-expansion packed
// b[0] = b_1, ...: (T_m b)_n = sum_{d | gcd(m,n)} d^{2k-1} b_{m n / d^2}.
// The output covers n <= floor(b.size() / m).
std::vector<cplx> hecke_scalar(const std::vector<cplx>& b, int m, int k);

} // namespace mp
