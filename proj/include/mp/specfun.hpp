#pragma once

#include <cmath>
#include <utility>

#include "mp/errors.hpp"
#include "mp/util.hpp"

namespace mp {

// Knobs for series truncation and quadrature refinement shared by the
// special-function evaluators.
struct PrecisionConfig {
    double target_rel_error = 1e-12;
    int max_terms = 200000;
    int quadrature_points = 16; // nodes per adaptive panel (fixed 16-pt rule)
};

namespace detail {
// 16-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
inline constexpr double gl16_x[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr double gl16_w[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

template <class T, class F>
T gl16_panel(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    T acc{};
    for (int i = 0; i < 8; ++i) {
        double dx = half * gl16_x[i];
        acc += gl16_w[i] * (f(mid + dx) + f(mid - dx));
    }
    return half * acc;
}

template <class T, class F>
T adaptive_rec(F&& f, double a, double b, T whole, double tol_abs, int depth) {
    double mid = 0.5 * (a + b);
    T left = gl16_panel<T>(f, a, mid);
    T right = gl16_panel<T>(f, mid, b);
    using std::abs;
    double diff = abs(whole - (left + right));
    // Accept on the requested tolerance or on the roundoff floor of the
    // local panel values; refining past either only accumulates noise.
    double floor_ = 5e-15 * (abs(left) + abs(right) + abs(whole));
    if (diff <= tol_abs || diff <= floor_ || depth <= 0) {
        if (depth <= 0 && diff > 64 * tol_abs && diff > floor_)
            throw numerical_error("adaptive quadrature: refinement depth exhausted");
        return left + right;
    }
    return adaptive_rec(f, a, mid, left, 0.5 * tol_abs, depth - 1) +
           adaptive_rec(f, mid, b, right, 0.5 * tol_abs, depth - 1);
}
} // namespace detail

// Adaptive Gauss-Legendre integration of f over [a, b], targeting rel_tol
// relative to the overall integral scale.  T may be double or cplx.
template <class T = double, class F>
T adaptive_integrate(F&& f, double a, double b, double rel_tol = 1e-12,
                     int max_depth = 24) {
    using std::abs;
    T whole = detail::gl16_panel<T>(f, a, b);
    double scale = abs(whole);
    // Probe halves once to get a sturdier scale for near-cancelling integrals.
    double mid = 0.5 * (a + b);
    T l = detail::gl16_panel<T>(f, a, mid), r = detail::gl16_panel<T>(f, mid, b);
    scale = std::max({scale, abs(l) + abs(r), 1e-300});
    double tol_abs = rel_tol * scale;
    if (abs(whole - (l + r)) <= tol_abs) return l + r;
    return detail::adaptive_rec(f, a, mid, l, 0.5 * tol_abs, max_depth) +
           detail::adaptive_rec(f, mid, b, r, 0.5 * tol_abs, max_depth);
}

double gammafn(double s); // Gamma(s); throws validation_error at poles

// Upper and lower incomplete Gamma for real s (x >= 0; s > 0 required at x = 0).
double inc_gamma(double s, double x, const PrecisionConfig& cfg = {});
double inc_gamma_lower(double s, double x, const PrecisionConfig& cfg = {});

// Modified Bessel K_nu(z), z > 0, via the cosh integral representation.
double bessel_K(double nu, double z, const PrecisionConfig& cfg = {});

// Kummer 1F1(a; c; v) by direct series (parameters in ranges where terms are
// eventually decreasing; c must avoid nonpositive integers).
double hyp1f1(double a, double c, double v, const PrecisionConfig& cfg = {});

// Gauss 2F1(a, b; c; z) for 0 <= z < 1 by series with tail control.
double hyp2f1(double a, double b, double c, double z, const PrecisionConfig& cfg = {});

double legendre_P(int l, double x);
cplx legendre_P(int l, cplx z);

// Whittaker functions.  whittaker_W uses closed forms at the exponential
// special parameters and an integral representation otherwise; whittaker_M is
// the exponentially-weighted Kummer series.
double whittaker_W(double kappa, double mu, double y, const PrecisionConfig& cfg = {});
double whittaker_M(double kappa, double mu, double v, const PrecisionConfig& cfg = {});

// Weight-kappa variants: script_W(kappa, s, y) = |y|^{-kappa/2}
// W_{(kappa/2)sgn y, s-1/2}(|y|) and script_M(kappa, s, v) =
// v^{-kappa/2} M_{-kappa/2, s-1/2}(v) for v > 0.
double script_W(double kappa, double s, double y, const PrecisionConfig& cfg = {});
double script_M(double kappa, double s, double v, const PrecisionConfig& cfg = {});

// Both sides of the Laplace-type evaluation
//   int_0^inf v^{kappa-2} script_W(kappa, s, alpha v) exp(-alpha v/2 - beta/v) dv
//     = alpha^{1/4-kappa/2} beta^{kappa/2-3/4} sqrt(pi) script_W(0, 3/2-2s, 4 sqrt(alpha beta)),
// returned as (quadrature value, closed form).
std::pair<double, double> check_integral_W(double kappa, double s, double alpha,
                                           double beta, const PrecisionConfig& cfg = {});

} // namespace mp
