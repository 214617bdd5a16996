#include "mp/merom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "mp/arith.hpp"
#include "mp/errors.hpp"

namespace mp {

namespace {

// Hyperbolic proximity in the squashed metric: cosh(dist) - 1.  Evaluations
// closer than dist = 5e-4 to a pole (one thousandth of a conservative 0.5
// injectivity-radius estimate) raise instead of returning huge values.
constexpr double kPoleCosh = 1.25e-7; // (5e-4)^2 / 2

std::string form_str(long long A, long long b, long long c) {
    return "[" + std::to_string(A) + ", " + std::to_string(b) + ", " +
           std::to_string(c) + "]";
}

void egcd_ll(long long a, long long b, long long& g, long long& x, long long& y) {
    if (b == 0) {
        g = a < 0 ? -a : a;
        x = a < 0 ? -1 : 1;
        y = 0;
        return;
    }
    long long g1, x1, y1;
    egcd_ll(b, a % b, g1, x1, y1);
    g = g1;
    x = y1;
    y = x1 - (a / b) * y1;
}

void check_twist_pair(const char* who, long long N, long long Delta, long long rho) {
    if (N < 1) throw validation_error(std::string(who) + ": N must be positive");
    if (!is_fundamental_discriminant(Delta))
        throw validation_error(std::string(who) +
                               ": Delta must be a fundamental discriminant");
    if (mod_ll(rho * rho - Delta, 4 * N) != 0)
        throw validation_error(std::string(who) + ": rho^2 = Delta mod 4N fails for rho=" +
                               std::to_string(rho));
}

void check_index_pair(const char* who, long long N, long long Delta, long long D,
                      long long r) {
    if (D >= 0)
        throw validation_error(std::string(who) + ": D must be negative, got D=" +
                               std::to_string(D));
    long long sigma = Delta > 0 ? 1 : -1;
    if (mod_ll(D - sigma * r * r, 4 * N) != 0)
        throw validation_error(std::string(who) + ": index (D=" + std::to_string(D) +
                               ", r=" + std::to_string(r) +
                               ") violates D = sign(Delta) r^2 mod 4N");
}

} // namespace

cplx eval_fkD(int k, long long N, long long D, long long r, long long Delta,
              long long rho, cplx z, const PrecisionConfig& cfg) {
    if (k < 2) throw validation_error("eval_fkD: k must be >= 2");
    check_twist_pair("eval_fkD", N, Delta, rho);
    check_index_pair("eval_fkD", N, Delta, D, r);
    if (!(z.imag() > 0)) throw validation_error("eval_fkD: z must lie in the upper half-plane");

    const long long d = D * std::llabs(Delta); // discriminant of the forms, < 0
    const long long bres = mod_ll(r * rho, 2 * N);

    // At a central residue class every form is paired with its negative; when
    // the sign character makes the pair cancel, the whole sum vanishes
    // identically, so return an exact zero instead of accumulated roundoff.
    if (class_pair_stack(k, Delta, N, bres) == 0) return cplx(0.0, 0.0);

    const double x = z.real(), y = z.imag();
    const double tol = std::max(cfg.target_rel_error, 1e-14);
    const double sqd = std::sqrt(double(-d));

    // Outer cutoff in a (first coefficient A = a N, both signs): beyond A0
    // every root height is below y/2 and |Q(z,1)| >= N a y^2 holds on the
    // line, so the dropped mass is bounded by a multiple of
    // sum_{a > A0} (N a y^2)^{-k}.
    const double Ny2 = double(N) * y * y;
    double A0f = std::pow(16.0 / (double(k - 1) * tol * std::pow(Ny2, k)),
                          1.0 / double(k - 1));
    A0f = std::max({A0f, sqd / (double(N) * y) + 2.0, 3.0});
    const long long A0cap = 30000 / N + 4;
    if (!(A0f < double(A0cap)))
        throw numerical_error(
            "eval_fkD: truncation bound unreachable at tolerance " +
            std::to_string(tol) + " (need a-range ~" + std::to_string(A0f) + ")");
    const long long A0 = (long long)std::ceil(A0f);

    const cplx ik = cpow_int(cplx(0.0, 1.0), k);
    const double scale = std::pow(double(-d), double(k) - 0.5);

    cplx acc = 0.0;
    for (int side = 0; side < 2; ++side) {
        for (long long a = 1; a <= A0; ++a) {
            const long long A = (side ? -a : a) * N;
            const double absA = double(a) * double(N);
            // Window on the root's real part u = -b/(2A) around x; outside it
            // the per-a mass decays like W^{1-2k}.
            double W = std::pow(32.0 * double(A0) /
                                    (double(2 * k - 1) * tol * std::pow(absA, k)),
                                1.0 / double(2 * k - 1));
            W = std::max(W, 0.75);
            const double ulo = x - W, uhi = x + W;
            // b with u(b) in the window: u = -b/(2A).
            double b1 = -2.0 * double(A) * ulo, b2 = -2.0 * double(A) * uhi;
            if (b1 > b2) std::swap(b1, b2);
            long long blo = (long long)std::ceil(b1);
            long long bhi = (long long)std::floor(b2);
            long long b = blo + mod_ll(bres - blo, 2 * N);
            const long long fourA = 4 * A;
            const double v = sqd / (2.0 * absA);
            const bool near_line = v > 0.2 * y && v < 5.0 * y;
            for (; b <= bhi; b += 2 * N) {
                const long long num = b * b - d; // > 0
                if (num % fourA != 0) continue;
                const long long c = num / fourA;
                int chi = 1;
                if (Delta != 1) chi = genus_char(Delta, QuadForm{A, b, c, N});
                if (chi == 0) continue;
                if (near_line) {
                    const double u = -double(b) / (2.0 * double(A));
                    const double dx = x - u, dy = y - v;
                    if ((dx * dx + dy * dy) / (2.0 * y * v) < kPoleCosh)
                        throw validation_error(
                            "eval_fkD: z lies inside the pole exclusion radius of "
                            "the form " + form_str(A, b, c));
                }
                const double wgt = double((A > 0 ? 1 : -1) * chi);
                acc += wgt / cpow_int(z * (double(A) * z + double(b)) + double(c), k);
            }
        }
    }
    return ik * scale * acc;
}

namespace {

// One full period sum S(w) = sum_n h(w + n) for h(w) = ((w - p)(w - p~)
// / (p - p~))^{-k}, with pole detection.  p has its real part reduced to
// [0, 1) by the caller; n ranges a fixed span around the nearest integer.
cplx petersson_inner(cplx w, cplx p, int k, long long n_span) {
    const cplx den = p - std::conj(p);
    const double vw = w.imag(), vp = p.imag();
    const long long n0 = std::llround(p.real() - w.real());
    cplx s = 0.0;
    for (long long n = n0 - n_span; n <= n0 + n_span; ++n) {
        const cplx t = w + double(n);
        const cplx d1 = t - p;
        if (vw > 0 && std::norm(d1) / (2.0 * vw * vp) < kPoleCosh)
            throw validation_error(
                "eval_petersson_eta: z is within the pole exclusion radius of "
                "the orbit of the series center");
        s += 1.0 / cpow_int(d1 * (t - std::conj(p)) / den, k);
    }
    return s;
}

} // namespace

cplx eval_petersson_eta(int k, long long N, cplx rho_point, cplx z,
                        const PrecisionConfig& cfg) {
    if (k < 2) throw validation_error("eval_petersson_eta: k must be >= 2");
    if (N < 1) throw validation_error("eval_petersson_eta: N must be positive");
    if (!(rho_point.imag() > 0))
        throw validation_error("eval_petersson_eta: center must lie in the upper half-plane");
    if (!(z.imag() > 0))
        throw validation_error("eval_petersson_eta: z must lie in the upper half-plane");

    // The value only depends on the orbit of the center; reduce its real
    // part so the inner-sum envelope below is uniform.
    const cplx p = rho_point - std::floor(rho_point.real());
    const double vp = p.imag();
    const double tol = std::max(cfg.target_rel_error, 1e-14);
    const double y = z.imag();

    // Envelope for sum_n |h(w + n)| over w at low height (where the tail
    // cosets live): distances to the pole and its mirror are at least
    // max(|n| - 2.5, 0.45 vp) and max(|n| - 2.5, 0.9 vp).
    double CS = 0.0;
    for (long long n = -80; n <= 80; ++n) {
        const double t1 = std::max(std::abs(double(n)) - 2.5, 0.45 * vp);
        const double t2 = std::max(std::abs(double(n)) - 2.5, 0.90 * vp);
        CS += 1.0 / std::pow(t1 * t2, k);
    }
    CS *= std::pow(2.0 * vp, k);
    CS = std::max(CS, 1.0);

    // Outer radius: the mass beyond |cz+d| = R is ~ CS * 2 pi / (N y (2k-2))
    // * R^{2-2k}.
    double R = std::pow(CS * 2.0 * PI / (double(N) * y * double(2 * k - 2) * 0.5 * tol),
                        1.0 / double(2 * k - 2));
    R = std::max(R, 3.0);
    if (R > 2500.0)
        throw numerical_error(
            "eval_petersson_eta: truncation radius " + std::to_string(R) +
            " unreachable at tolerance " + std::to_string(tol) +
            "; loosen the tolerance for small weights");

    // Inner span: the tail of the n-sum past m decays like m^{1-2k}.
    double mreq = std::pow(8.0 * std::pow(2.0 * vp, k) / (double(2 * k - 1) * tol),
                           1.0 / double(2 * k - 1));
    const long long n_span = std::min<long long>(500, (long long)std::ceil(mreq) + 4);

    cplx acc = petersson_inner(z, p, k, n_span); // the two c = 0 rows
    const long long cmax = (long long)std::floor(R / (double(N) * y));
    for (long long cj = 1; cj <= cmax; ++cj) {
        for (int side = 0; side < 2; ++side) {
            const long long c = (side ? -cj : cj) * N;
            const double cy = double(c) * y;
            const double rx2 = R * R - cy * cy;
            if (rx2 <= 0) continue;
            const double rx = std::sqrt(rx2);
            const double dc = -double(c) * z.real();
            const long long dlo = (long long)std::ceil(dc - rx);
            const long long dhi = (long long)std::floor(dc + rx);
            for (long long dd = dlo; dd <= dhi; ++dd) {
                if (std::gcd(std::llabs(c), std::llabs(dd)) != 1) continue;
                long long g, u, w;
                egcd_ll(c, dd, g, u, w); // u c + w dd = 1
                const long long aa = w, bb = -u; // aa*dd - bb*c = 1
                const cplx czd = double(c) * z + double(dd);
                const cplx gz = (double(aa) * z + double(bb)) / czd;
                acc += 0.5 * cpow_int(czd, -2 * k) * petersson_inner(gz, p, k, n_span);
            }
        }
    }
    return acc;
}

namespace {

struct LineDft {
    std::map<int, cplx> A;
    double max_abs = 0.0;
};

LineDft line_dft(const ScalarEvaluator& f, double y, int n_lo, int n_hi,
                 int samples) {
    std::vector<cplx> vals(samples);
    parallel_for((std::size_t)samples, [&](std::size_t j) {
        vals[j] = f(cplx(double(j) / samples, y));
    });
    LineDft out;
    for (const cplx& v : vals) out.max_abs = std::max(out.max_abs, std::abs(v));
    for (int n = n_lo; n <= n_hi; ++n) {
        cplx s = 0.0;
        for (int j = 0; j < samples; ++j)
            s += vals[j] * e2pi(-double(n) * double(j) / samples);
        out.A[n] = s / double(samples);
    }
    return out;
}

} // namespace

std::map<int, cplx> fourier_line_dft(const ScalarEvaluator& f, double y,
                                     int n_lo, int n_hi, int samples) {
    if (samples < 1) throw validation_error("fourier_line_dft: samples must be positive");
    if (n_lo > n_hi) throw validation_error("fourier_line_dft: empty index range");
    if (!(y > 0)) throw validation_error("fourier_line_dft: height must be positive");
    return line_dft(f, y, n_lo, n_hi, samples).A;
}

FourierSeries2k fourier_coeffs(const ScalarEvaluator& f, int k, long long N,
                               double y, int n_max, int samples,
                               double min_safe_height) {
    if (n_max < 1) throw validation_error("fourier_coeffs: n_max must be positive");
    if (samples < 4 * n_max)
        throw validation_error("fourier_coeffs: need samples >= 4 * n_max");
    if (!(y > 0)) throw validation_error("fourier_coeffs: height must be positive");
    if (min_safe_height > 0 && y <= min_safe_height)
        throw validation_error(
            "fourier_coeffs: height too low: a pole at height " +
            std::to_string(min_safe_height) + " lies on or above the sampling line");

    const double y2 = 1.25 * y;
    const int ncheck = std::min(3, n_max);
    LineDft d1 = line_dft(f, y, 0, n_max, samples);
    LineDft d2 = line_dft(f, y2, 1, ncheck, samples);

    FourierSeries2k out;
    out.k = k;
    out.N = N;
    out.height_used = y;
    out.error_estimates[0] = std::abs(d1.A[0]);
    for (int n = 1; n <= n_max; ++n)
        out.coeffs[n] = d1.A[n] * std::exp(2.0 * PI * n * y);
    for (int n = 1; n <= ncheck; ++n) {
        const cplx b1 = out.coeffs[n];
        const cplx b2 = d2.A[n] * std::exp(2.0 * PI * n * y2);
        const double denom = std::max(std::abs(b1), std::abs(b2));
        const double floor_n = 1e-12 * (d1.max_abs * std::exp(2.0 * PI * n * y) +
                                        d2.max_abs * std::exp(2.0 * PI * n * y2)) +
                               1e-300;
        out.error_estimates[n] = std::abs(b1 - b2) / std::max(denom, floor_n);
        if (denom > 8.0 * floor_n && std::abs(b1 - b2) > 1e-2 * denom)
            throw numerical_error(
                "fourier_coeffs: two-height disagreement at n=" + std::to_string(n) +
                ": b_n(" + std::to_string(y) + ") = (" + std::to_string(b1.real()) +
                ", " + std::to_string(b1.imag()) + "), b_n(" + std::to_string(y2) +
                ") = (" + std::to_string(b2.real()) + ", " +
                std::to_string(b2.imag()) + ")");
    }
    return out;
}

Rational predicted_constant(int k, long long Delta) {
    if (k < 2 || k > 18)
        throw validation_error("predicted_constant: k out of the supported range [2, 18]");
    if (!is_fundamental_discriminant(Delta))
        throw validation_error("predicted_constant: Delta must be a fundamental discriminant");
    const long long sg = Delta > 0 ? 1 : -1;
    const long long aD = std::llabs(Delta);
    __int128 num = 1;
    for (int i = 0; i < k; ++i) num *= -2 * sg;
    for (int i = 0; i < k - 1; ++i) num *= aD;
    __int128 den = 1;
    for (int i = 2; i <= k - 1; ++i) den *= i;
    return Rational::from128(num, den);
}

cplx predicted_prefactor(int k, long long Delta) {
    const Rational C = predicted_constant(k, Delta);
    const double sq = std::sqrt(std::abs(double(Delta)));
    const cplx sqrtD = Delta > 0 ? cplx(sq, 0.0) : cplx(0.0, sq);
    return C.to_double() * cplx(0.0, 1.0) * std::pow(PI, k) * sqrtD;
}

FourierSeries2k predicted_coeffs(const CoeffTable& table, int k, long long Delta,
                                 long long rho, int n_max) {
    if (k < 2) throw validation_error("predicted_coeffs: k must be >= 2");
    if (n_max < 1) throw validation_error("predicted_coeffs: n_max must be positive");
    check_twist_pair("predicted_coeffs", table.N, Delta, rho);
    const long long aD = std::llabs(Delta);
    std::vector<cplx> t((std::size_t)n_max);
    for (int m = 1; m <= n_max; ++m) {
        const long long Dm = aD * (long long)m * m, rm = rho * m;
        if (!table.has(Dm, rm))
            throw validation_error("predicted_coeffs: missing table index (D=" +
                                   std::to_string(Dm) + ", r=" +
                                   std::to_string(mod_ll(rm, 2 * table.N)) + ")");
        t[(std::size_t)m - 1] = table.cplus(Dm, rm);
    }
    const std::vector<cplx> b = forward_divisor_sum(t, k, Delta);
    const cplx pref = predicted_prefactor(k, Delta);
    FourierSeries2k out;
    out.k = k;
    out.N = table.N;
    for (int n = 1; n <= n_max; ++n) out.coeffs[n] = pref * b[(std::size_t)n - 1];
    return out;
}

int class_pair_stack(int k, long long Delta, long long N, long long bres) {
    const int sg = Delta > 0 ? 1 : -1;
    int stack = 1;
    if (mod_ll(2 * bres, 2 * N) == 0) stack += -sg * (k % 2 == 0 ? 1 : -1);
    return stack;
}

double EtaAssembly::max_divisor_height() const {
    double h = 0.0;
    for (const auto& p : divisor) h = std::max(h, p.point.imag());
    return h;
}

EtaAssembly eta_for_f(const MeromFormSpec& spec) {
    if (spec.k < 2) throw validation_error("eta_for_f: k must be >= 2");
    check_twist_pair("eta_for_f", spec.N, spec.Delta, spec.rho);
    for (const auto& [idx, c] : spec.principal_part) {
        (void)c;
        check_index_pair("eta_for_f", spec.N, spec.Delta, idx.first, idx.second);
    }

    EtaAssembly out;
    out.spec = spec;
    for (const auto& [idx, c] : spec.principal_part) {
        if (c == 0.0) continue;
        const HeegnerDivisor hd =
            heegner_divisor(spec.N, spec.Delta, spec.rho, idx.first, idx.second, spec.k);
        const double sc = hd.scale();
        for (const DivisorPoint& pt : hd.points)
            out.divisor.push_back(EtaDivisorPoint{pt.point, c * sc * pt.weight, pt.chi,
                                                  pt.w, idx.first, idx.second, sc, c,
                                                  pt.form});
    }
    const MeromFormSpec s = spec;
    out.eval = [s](cplx z) {
        cplx acc = 0.0;
        for (const auto& [idx, c] : s.principal_part) {
            if (c == 0.0) continue;
            acc += c * eval_fkD(s.k, s.N, idx.first, idx.second, s.Delta, s.rho, z,
                                s.trunc);
        }
        return acc;
    };
    return out;
}

ResidueResult residue_at(const ScalarEvaluator& f, cplx rho_point, int k,
                         double contour_radius, int samples) {
    if (k < 1) throw validation_error("residue_at: k must be positive");
    if (!(rho_point.imag() > 0))
        throw validation_error("residue_at: center must lie in the upper half-plane");
    if (!(contour_radius > 0) || contour_radius > 0.8)
        throw validation_error("residue_at: contour radius must lie in (0, 0.8]");
    if (samples < 8) throw validation_error("residue_at: need at least 8 samples");

    const cplx pb = std::conj(rho_point);
    const cplx den = rho_point - pb;
    auto contour_avg = [&](double t) {
        cplx s = 0.0;
        for (int j = 0; j < samples; ++j) {
            const cplx X = std::polar(t, 2.0 * PI * j / samples);
            const cplx z = (rho_point - pb * X) / (1.0 - X);
            const cplx P = (z - rho_point) * (z - pb) / den;
            s += f(z) * cpow_int(P, k);
        }
        return s / double(samples);
    };
    const cplx a1 = contour_avg(contour_radius);
    const cplx a2 = contour_avg(0.5 * contour_radius);
    const double sc = std::abs(a1) + std::abs(a2);
    if (std::abs(a1 - a2) > std::max(1e-4 * sc, 1e-12))
        throw numerical_error(
            "residue_at: contour averages at radii " + std::to_string(contour_radius) +
            " and " + std::to_string(0.5 * contour_radius) + " disagree (" +
            std::to_string(std::abs(a1 - a2)) +
            "): another pole inside the contour or insufficient sampling");
    return ResidueResult{a2.real(), std::abs(a2.imag())};
}

FourierSeries2k zeta_normalize(const FourierSeries2k& eta_series,
                               const std::vector<double>& G_coeffs, int k,
                               long long Delta, cplx c_top) {
    if (G_coeffs.empty() || G_coeffs[0] != 1.0)
        throw validation_error(
            "zeta_normalize: G must be a normalized eigenform with first coefficient 1");
    if (eta_series.coeffs.find(1) == eta_series.coeffs.end())
        throw validation_error("zeta_normalize: input series lacks the first coefficient");

    const cplx lam = predicted_prefactor(k, Delta) * c_top;
    if (c_top == cplx(0.0)) return eta_series; // nothing to subtract
    FourierSeries2k out;
    out.k = eta_series.k;
    out.N = eta_series.N;
    out.height_used = eta_series.height_used;
    out.error_estimates = eta_series.error_estimates;
    for (const auto& [n, bn] : eta_series.coeffs) {
        if ((std::size_t)n > G_coeffs.size())
            throw validation_error("zeta_normalize: G q-expansion too short (need n=" +
                                   std::to_string(n) + ")");
        out.coeffs[n] = bn - lam * G_coeffs[(std::size_t)n - 1];
    }
    // The first coefficient vanishes by construction; record the numerical
    // residual and pin the exact zero.
    const double resid = std::abs(out.coeffs[1]);
    auto it = out.error_estimates.find(1);
    out.error_estimates[1] = it == out.error_estimates.end() ? resid
                                                             : std::max(resid, it->second);
    out.coeffs[1] = 0.0;
    return out;
}

std::vector<long long> delta_qexp(int n_max) {
    if (n_max < 1 || n_max > 4000)
        throw validation_error("delta_qexp: n_max out of the supported range [1, 4000]");
    const int L = n_max;
    std::vector<long long> E((std::size_t)L, 0);
    // prod (1 - q^m) = sum_g (-1)^g q^{g(3g-1)/2} over all integers g.
    E[0] = 1;
    for (long long g = 1;; ++g) {
        const long long p1 = g * (3 * g - 1) / 2, p2 = g * (3 * g + 1) / 2;
        if (p1 >= L && p2 >= L) break;
        const long long s = (g % 2 != 0) ? -1 : 1;
        if (p1 < L) E[(std::size_t)p1] += s;
        if (p2 < L) E[(std::size_t)p2] += s;
    }
    auto mul = [L](const std::vector<long long>& X, const std::vector<long long>& Y) {
        std::vector<__int128> acc((std::size_t)L, 0);
        for (int i = 0; i < L; ++i) {
            if (X[(std::size_t)i] == 0) continue;
            for (int j = 0; i + j < L; ++j) {
                if (Y[(std::size_t)j] == 0) continue;
                acc[(std::size_t)(i + j)] +=
                    (__int128)X[(std::size_t)i] * Y[(std::size_t)j];
            }
        }
        std::vector<long long> Z((std::size_t)L, 0);
        for (int i = 0; i < L; ++i) {
            if (acc[(std::size_t)i] > INT64_MAX || acc[(std::size_t)i] < INT64_MIN)
                throw numerical_error("delta_qexp: coefficient overflow past 64 bits");
            Z[(std::size_t)i] = (long long)acc[(std::size_t)i];
        }
        return Z;
    };
    const auto E2 = mul(E, E);
    const auto E4 = mul(E2, E2);
    const auto E8 = mul(E4, E4);
    const auto E16 = mul(E8, E8);
    // Coefficient of q^j in prod^24 is the coefficient of q^{j+1} in the
    // weight-12 form, so the array is already the list tau(1..n_max).
    return mul(E16, E8);
}

std::vector<cplx> hecke_scalar(const std::vector<cplx>& b, int m, int k) {
    if (m < 1) throw validation_error("hecke_scalar: m must be positive");
    if (k < 1) throw validation_error("hecke_scalar: k must be positive");
    const int n_out = (int)b.size() / m;
    if (n_out < 1)
        throw validation_error("hecke_scalar: series too short for T_" + std::to_string(m));
    std::vector<cplx> out((std::size_t)n_out);
    for (int n = 1; n <= n_out; ++n) {
        cplx s = 0.0;
        for (long long d : divisors(std::gcd((long long)m, (long long)n))) {
            const long long idx = (long long)m * n / (d * d);
            s += std::pow(double(d), double(2 * k - 1)) * b[(std::size_t)idx - 1];
        }
        out[(std::size_t)n - 1] = s;
    }
    return out;
}

} // namespace mp
