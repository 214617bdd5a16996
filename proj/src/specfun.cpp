#include "mp/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace mp {

double gammafn(double s) {
    if (s <= 0 && std::abs(s - std::round(s)) < 1e-12)
        throw validation_error("gammafn: pole at nonpositive integer");
    return std::tgamma(s);
}

namespace {

// Lower incomplete gamma by its power series, valid and fast for x < s + 1.
double lower_series(double s, double x, const PrecisionConfig& cfg) {
    double sum = 1.0 / s, del = sum;
    for (int n = 1; n <= cfg.max_terms; ++n) {
        del *= x / (s + n);
        sum += del;
        if (std::abs(del) < std::abs(sum) * cfg.target_rel_error)
            return sum * std::exp(-x + s * std::log(x));
    }
    throw numerical_error("inc_gamma: series did not converge");
}

// Upper incomplete gamma by the Lentz continued fraction, for x >= s + 1.
double upper_cf(double s, double x, const PrecisionConfig& cfg) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= cfg.max_terms; ++i) {
        double an = -double(i) * (double(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < cfg.target_rel_error)
            return h * std::exp(-x + s * std::log(x));
    }
    throw numerical_error("inc_gamma: continued fraction did not converge");
}

} // namespace

double inc_gamma(double s, double x, const PrecisionConfig& cfg) {
    if (x < 0) throw validation_error("inc_gamma: x must be nonnegative");
    if (x == 0) {
        if (s <= 0) throw validation_error("inc_gamma: need s > 0 at x = 0");
        return gammafn(s);
    }
    if (s <= 0) {
        // Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s, applied upward until
        // the shifted parameter is positive.
        double up = inc_gamma(s + 1.0, x, cfg);
        return (up - std::pow(x, s) * std::exp(-x)) / s;
    }
    if (x < s + 1.0) return gammafn(s) - lower_series(s, x, cfg);
    return upper_cf(s, x, cfg);
}

double inc_gamma_lower(double s, double x, const PrecisionConfig& cfg) {
    if (x < 0 || s <= 0) throw validation_error("inc_gamma_lower: need s > 0, x >= 0");
    if (x == 0) return 0.0;
    if (x < s + 1.0) return lower_series(s, x, cfg);
    return gammafn(s) - upper_cf(s, x, cfg);
}

double bessel_K(double nu, double z, const PrecisionConfig& cfg) {
    if (z <= 0) throw validation_error("bessel_K: need z > 0");
    nu = std::abs(nu);
    double T = 1.0;
    while (z * std::cosh(T) - nu * T < 46.0 && T < 500.0) T += 0.5;
    auto f = [&](double t) { return std::exp(-z * std::cosh(t)) * std::cosh(nu * t); };
    return adaptive_integrate<double>(f, 0.0, T, cfg.target_rel_error * 0.1, 24);
}

double hyp1f1(double a, double c, double v, const PrecisionConfig& cfg) {
    if (c <= 0 && std::abs(c - std::round(c)) < 1e-12)
        throw validation_error("hyp1f1: parameter pole at nonpositive integer c");
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        term *= (a + n) * v / ((c + n) * (n + 1));
        sum += term;
        double ratio = std::abs((a + n + 1) * v / ((c + n + 1) * (n + 2)));
        if (ratio < 0.5 && std::abs(term) < std::abs(sum) * cfg.target_rel_error)
            return sum;
    }
    throw numerical_error("hyp1f1: series did not converge");
}

double hyp2f1(double a, double b, double c, double z, const PrecisionConfig& cfg) {
    if (c <= 0 && std::abs(c - std::round(c)) < 1e-12)
        throw validation_error("hyp2f1: parameter pole at nonpositive integer c");
    if (z < 0 || z >= 1) throw validation_error("hyp2f1: need 0 <= z < 1");
    if (z == 0) return 1.0;
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        term *= (a + n) * (b + n) * z / ((c + n) * (n + 1));
        sum += term;
        // Eventually the term ratio is below (1+z)/2 < 1; bound the tail by
        // the geometric series with that ratio.
        double q = 0.5 * (1.0 + z);
        if (n > 4 && std::abs((a + n + 1) * (b + n + 1) * z / ((c + n + 1) * (n + 2))) < q &&
            std::abs(term) * q / (1.0 - q) < std::abs(sum) * cfg.target_rel_error)
            return sum;
    }
    throw numerical_error("hyp2f1: series did not converge (z too close to 1)");
}

namespace {
template <class T>
T legendre_rec(int l, T x) {
    if (l == 0) return T(1);
    T pm1 = T(1), p = x;
    for (int n = 1; n < l; ++n) {
        T pn = ((2.0 * n + 1.0) * x * p - double(n) * pm1) / double(n + 1);
        pm1 = p;
        p = pn;
    }
    return p;
}
} // namespace

double legendre_P(int l, double x) {
    if (l < 0) throw validation_error("legendre_P: need l >= 0");
    return legendre_rec<double>(l, x);
}

cplx legendre_P(int l, cplx z) {
    if (l < 0) throw validation_error("legendre_P: need l >= 0");
    return legendre_rec<cplx>(l, z);
}

double whittaker_W(double kappa, double mu, double y, const PrecisionConfig& cfg) {
    if (y <= 0) throw validation_error("whittaker_W: need y > 0");
    mu = std::abs(mu); // W is even in mu
    double A = mu - kappa + 0.5; // first parameter of the t-integral
    double B = mu + kappa - 0.5;
    if (std::abs(A) < 1e-12) // W_{kappa, kappa - 1/2}(y) = y^kappa e^{-y/2}
        return std::pow(y, kappa) * std::exp(-0.5 * y);
    if (A < 0)
        throw numerical_error("whittaker_W: parameters outside supported range");
    // W = e^{-y/2} y^kappa / Gamma(A) * int_0^inf t^{A-1} (1+t/y)^B e^{-t} dt,
    // with t = u^p chosen so the substituted integrand is C^1 at the origin.
    int p = (A >= 2.0) ? 1 : int(std::ceil(2.0 / A));
    if (p > 12) throw numerical_error("whittaker_W: parameter too close to zero");
    double T = 120.0 + 10.0 * std::abs(B) + 4.0 * A;
    double umax = std::pow(T, 1.0 / p);
    double pw = p * A - 1.0;
    auto f = [&](double u) {
        double t = std::pow(u, p);
        if (t == 0) return (pw == 0.0) ? double(p) : 0.0;
        double lg = B * std::log1p(t / y) - t;
        if (pw != 0.0) lg += pw * std::log(u);
        return p * std::exp(lg);
    };
    double I = adaptive_integrate<double>(f, 0.0, umax, cfg.target_rel_error * 0.1, 24);
    return std::exp(-0.5 * y + kappa * std::log(y)) / gammafn(A) * I;
}

double whittaker_M(double kappa, double mu, double v, const PrecisionConfig& cfg) {
    if (v <= 0) throw validation_error("whittaker_M: need v > 0");
    double c = 2.0 * mu + 1.0;
    if (c <= 0 && std::abs(c - std::round(c)) < 1e-12)
        throw validation_error("whittaker_M: 2mu+1 at a nonpositive integer");
    return std::exp(-0.5 * v + (mu + 0.5) * std::log(v)) *
           hyp1f1(mu - kappa + 0.5, c, v, cfg);
}

double script_W(double kappa, double s, double y, const PrecisionConfig& cfg) {
    if (y == 0) throw validation_error("script_W: need y != 0");
    if (std::abs(s - (1.0 - 0.5 * kappa)) < 1e-12) {
        // Exponential special values at the harmonic point.
        if (y > 0) return std::exp(-0.5 * y);
        return std::exp(-0.5 * y) * inc_gamma(1.0 - kappa, -y, cfg);
    }
    double ay = std::abs(y);
    double sign = (y > 0) ? 1.0 : -1.0;
    return std::pow(ay, -0.5 * kappa) * whittaker_W(0.5 * kappa * sign, s - 0.5, ay, cfg);
}

double script_M(double kappa, double s, double v, const PrecisionConfig& cfg) {
    if (v <= 0) throw validation_error("script_M: need v > 0");
    return std::pow(v, -0.5 * kappa) * whittaker_M(-0.5 * kappa, s - 0.5, v, cfg);
}

std::pair<double, double> check_integral_W(double kappa, double s, double alpha,
                                           double beta, const PrecisionConfig& cfg) {
    if (alpha <= 0 || beta <= 0)
        throw validation_error("check_integral_W: need alpha, beta > 0");
    // Integrate in w = log v; the integrand decays like exp(-alpha v) for
    // large v and exp(-beta/v) for small v.
    double wlo = std::log(beta / 80.0), whi = std::log(160.0 / alpha);
    if (whi <= wlo + 0.5) { wlo -= 1.0; whi += 1.0; }
    auto f = [&](double w) {
        double v = std::exp(w);
        return std::pow(v, kappa - 1.0) * script_W(kappa, s, alpha * v, cfg) *
               std::exp(-0.5 * alpha * v - beta / v);
    };
    double lhs = adaptive_integrate<double>(f, wlo, whi, 1e-9, 20);
    double rhs = std::pow(alpha, 0.25 - 0.5 * kappa) * std::pow(beta, 0.5 * kappa - 0.75) *
                 std::sqrt(PI) * script_W(0.0, 1.5 - 2.0 * s, 4.0 * std::sqrt(alpha * beta), cfg);
    return {lhs, rhs};
}

} // namespace mp
