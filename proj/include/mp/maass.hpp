#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mp/specfun.hpp"
#include "mp/util.hpp"

namespace mp {

using cvec = std::vector<cplx>;
using cmat = std::vector<cvec>; // dense row-major

// Discriminant module of the lattice of level N: components e_r, r mod 2N.
// dual = false acts through e(r^2/4N) on T; dual = true conjugates everything
// (sigma = -1).
struct WeilRep {
    long long N = 1;
    bool dual = false;
    int sigma() const { return dual ? -1 : 1; }
    long long dim() const { return 2 * N; }
};

// Element of the metaplectic double cover: integral matrix with a choice of
// square root phi(tau) = branch_sign * principal sqrt(c tau + d).
struct MetaplecticElement {
    long long a = 1, b = 0, c = 0, d = 1;
    int branch_sign = 1;
    cplx phi(cplx tau) const {
        return double(branch_sign) *
               std::sqrt(double(c) * tau + cplx(double(d), 0.0));
    }
    cplx moebius(cplx tau) const {
        return (double(a) * tau + double(b)) / (double(c) * tau + double(d));
    }
};

// Group law on the double cover; the branch of the product is fixed by the
// square-root cocycle evaluated at an interior test point.
MetaplecticElement mp_mul(const MetaplecticElement& g1, const MetaplecticElement& g2);

// rho(g) as a dim x dim unitary matrix, by word decomposition in T and S with
// explicit branch tracking.
cmat weil_matrix(const WeilRep& rep, const MetaplecticElement& g);

cmat mat_mul(const cmat& A, const cmat& B);
cvec mat_vec(const cmat& A, const cvec& x);
double unitarity_defect(const cmat& A); // max-norm of A A^* - I

// Fourier coefficient store for a vector-valued form of half-integral weight.
// Indices (D, r) satisfy D = sigma r^2 mod 4N; r is kept reduced mod 2N.
struct CoeffTable {
    long long N = 1;
    int weight_times_2 = 0; // 2*kappa (odd)
    bool dual = false;
    std::map<std::pair<long long, long long>, cplx> holo;    // c^+(D, r)
    std::map<std::pair<long long, long long>, cplx> nonholo; // c^-(D, r)
    std::map<std::pair<long long, long long>, double> residual; // D > 0 overdetermination

    cplx cplus(long long D, long long r) const;
    cplx cminus(long long D, long long r) const;
    bool has(long long D, long long r) const;
    // Principal part: the D <= 0 slice of the holomorphic coefficients.
    std::map<std::pair<long long, long long>, cplx> principal_part() const;
};

using VecEvaluator = std::function<cvec(cplx)>;

// Vector-valued Maass Poincare series of weight kappa < 0 at spectral
// parameter s, seeded by index (D, r), D < 0.  The coset data is cached at
// construction for all tau with Im(tau) >= min_v, so one instance serves many
// evaluation points (it is immutable and safe to share across threads).
class PoincareEvaluator {
public:
    PoincareEvaluator(const WeilRep& rep, double kappa, long long D, long long r,
                      double s, double min_v, const PrecisionConfig& cfg = {});
    cvec operator()(cplx tau) const;
    double tail_radius() const { return R_; }

private:
    struct Coset {
        long long a, b, c, d;
        cvec row; // conj of row r of rho(g): rho(g)^{-1} e_r
    };
    WeilRep rep_;
    double kappa_, s_, min_v_, inv_gamma_2s_;
    long long D_, r_;
    int pow_phi_; // -2*kappa as an integer
    double R_;
    std::vector<Coset> cosets_;
    PrecisionConfig cfg_;
};

// One-shot evaluation (builds the coset cache for this height only).
cvec poincare_eval(const WeilRep& rep, double kappa, long long D, long long r,
                   cplx tau, double s, const PrecisionConfig& cfg = {});

// All indices (D, r mod 2N) with D = sigma r^2 mod 4N and Dmin <= D <= Dmax.
std::vector<std::pair<long long, long long>> coeff_indices(long long N, int sigma,
                                                           long long Dmin, long long Dmax);

// Recover holomorphic/non-holomorphic coefficients of a harmonic form from
// values on two horizontal lines: componentwise u-Fourier integrals followed
// by a 2x2 solve in the (c^+, c^-) basis appropriate to the sign of D.  For
// D > 0 the non-holomorphic part is constrained to zero, the y1 row is taken
// as primary and the relative mismatch against y2 is recorded in residual.
CoeffTable extract_coeffs_two_height(const VecEvaluator& f, double kappa, long long N,
                                     bool dual, double y1, double y2,
                                     const std::vector<std::pair<long long, long long>>& targets,
                                     int samples = 128, const PrecisionConfig& cfg = {});

// Hecke operator T_p on coefficient tables, gcd(p, N) = 1:
//   c'(D, r) = c(p^2 D, p r) + p^{lam-1} (sigma D / p) c(D, r)
//            + p^{2 lam - 1} c(D/p^2, r/p),
// the last term only when the division is solvable.  Output indices are
// `targets` if given (missing sources are an error naming the index), else
// all indices whose sources are fully present in the input.
CoeffTable hecke_Tp(const CoeffTable& table, long long p, int lam,
                    const std::vector<std::pair<long long, long long>>& targets = {});

struct RaisingResult {
    cvec value;
    double err;
};

// Iterated raising operator R_{kappa+2(n-1)} ... R_kappa applied numerically:
// R_kappa F = i F_u + F_v + kappa F / v, with Richardson-extrapolated central
// differences of step h.
RaisingResult raising_numeric(const VecEvaluator& f, double kappa, int n, cplx tau,
                              double h);

} // namespace mp
