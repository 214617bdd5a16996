#pragma once

#include <utility>
#include <vector>

#include "mp/merom.hpp"
#include "mp/qf.hpp"
#include "mp/rational.hpp"
#include "mp/specfun.hpp"
#include "mp/util.hpp"

namespace mp {

// A primitive hyperbolic matrix together with its quadratic form and the
// data of the closed geodesic it generates.  The associated form is
// Q(x, y) = c x^2 + (d - a) x y - b y^2 with discriminant trace^2 - 4; its
// real roots are the fixed points of the matrix, and the semicircle over
// them is the geodesic's axis.
struct GeodesicCycle {
    long long a = 1, b = 0, c = 0, d = 1;
    long long QA = 0, QB = 0, QC = 0;
    long long d_gamma = 0;
    cplx base_point;          // default: apex of the axis semicircle
    std::vector<cplx> waypoints; // empty: straight segment from base to image

    cplx apply(cplx z) const; // Moebius action (a z + b) / (c z + d)
    cplx Q(cplx z) const;     // QA z^2 + QB z + QC
};

// Validates det = 1, |trace| > 2, and primitivity (the input must not be a
// power of a smaller hyperbolic element).
GeodesicCycle cycle_from_matrix(long long a, long long b, long long c, long long d);

// Point on the axis chosen so that it and its image under the matrix sit at
// equal height; integrating between them keeps the path high above the real
// line, which conditions the integrand much better than the default apex
// when the geodesic is long.
cplx balanced_base_point(const GeodesicCycle& cycle);

struct PairingResult {
    double value = 0.0;      // Re of the projected integral: the pairing
    cplx projected;          // (i/sqrt(d_gamma))^{k-1} * line integral
    cplx raw_integral;       // unprojected integral of f * Q^{k-1} dz
    double l1_magnitude = 0; // integral of |f * Q^{k-1}| |dz|, the scale
    int pieces = 0;          // path pieces after pole detours
};

// Line integral of f(z) Q(z)^{k-1} from the base point through the waypoints
// to the image of the base point, with Re of the (i/sqrt(d))^{k-1} multiple
// as the pairing value.  Poles in the given list trigger circular-arc
// detours when the path would pass within the exclusion distance; a pole too
// close to a path node, overlapping exclusion zones, or both detour sides
// blocked raise validation errors.
PairingResult pairing(const ScalarEvaluator& f, const GeodesicCycle& cycle, int k,
                      const std::vector<cplx>& poles = {},
                      const PrecisionConfig& cfg = {});

// Convenience overloads taking the pole locations from a divisor; horizontal
// translates covering the path's x-range are added automatically.
PairingResult pairing(const ScalarEvaluator& f, const GeodesicCycle& cycle, int k,
                      const EtaAssembly& assembly, const PrecisionConfig& cfg = {});
PairingResult pairing(const ScalarEvaluator& f, const GeodesicCycle& cycle, int k,
                      const HeegnerDivisor& divisor, const PrecisionConfig& cfg = {});

// Runs the pairing along two waypoint policies and returns both results.
// Real parts agree for any two homotopy classes; imaginary parts differ by
// residue contributions of enclosed poles.
std::pair<PairingResult, PairingResult> path_independence_check(
    const ScalarEvaluator& f, const GeodesicCycle& cycle, int k,
    const std::vector<cplx>& poles, const std::vector<cplx>& waypoints1,
    const std::vector<cplx>& waypoints2, const PrecisionConfig& cfg = {});

// Elliptic expansion coefficient of index k-1, in weight 2-2k at rho, of
// Q(z)^{k-1} for the cycle's form:
//   (-4 Im rho)^{1-k} (2i sqrt(d))^{k-1} P_{k-1}(i(A|rho|^2 + B Re rho + C)
//                                               / (Im rho sqrt(d))).
// The value is real; the imaginary part of the returned complex number is
// the numerical residual.
cplx elliptic_coeff_Q(const GeodesicCycle& cycle, cplx rho, int k);

// Evaluations attached to a lattice vector X = (a, b, c), identified with
// the quadratic form [a N, b, c] (the LatticeVector type lives in qf.hpp).
cplx lattice_Q(const LatticeVector& X, cplx z); // a N z^2 + b z + c
// (a N |z|^2 + b Re z + c) / (sqrt(2N) Im z)
double lattice_p(const LatticeVector& X, cplx z);

struct RaisingCheck {
    cplx lhs, rhs;
};

// Checks the closed form for the k-fold raising of
//   w^{k/2} 2F1(k/2, (k+1)/2; k+1/2; w),  w = 2|m| / p_z(X)^2,
// namely Gamma(2k)/Gamma(k) * (sqrt(4N|m|) sgn(p_z(X)) / Q_X(z))^k.
// Requires q(X) = m < 0.  The left side is computed by
// Richardson-extrapolated nested central differences of the raising
// operator; both sides are returned.
RaisingCheck raising_hypergeometric_check(int k, long long N, const Rational& m,
                                          const LatticeVector& X, cplx z,
                                          double fd_step = 5e-3);

} // namespace mp
