#include "mp/maass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mp/arith.hpp"
#include "mp/errors.hpp"

namespace mp {

namespace {

const cplx TEST_TAU(0.1234, 1.377); // interior point for branch bookkeeping

long long det(const MetaplecticElement& g) { return g.a * g.d - g.b * g.c; }

// Snap a numerical ratio to +-1.
int snap_sign(cplx ratio) {
    if (std::abs(ratio - 1.0) < 1e-6) return 1;
    if (std::abs(ratio + 1.0) < 1e-6) return -1;
    throw numerical_error("metaplectic cocycle did not snap to a sign");
}

cmat identity(long long n) {
    cmat I(n, cvec(n, 0.0));
    for (long long i = 0; i < n; ++i) I[i][i] = 1.0;
    return I;
}

// rho(T)^m: diagonal with entries e(sigma m r^2 / 4N).
void left_mul_Tpow(const WeilRep& rep, long long m, cmat& M) {
    long long n = rep.dim();
    for (long long r = 0; r < n; ++r) {
        cplx ph = e2pi(rep.sigma() * double(mod_ll(m * r * r, 4 * rep.N)) / (4.0 * rep.N));
        for (long long j = 0; j < n; ++j) M[r][j] *= ph;
    }
}

cmat weil_S(const WeilRep& rep) {
    long long n = rep.dim();
    int sg = rep.sigma();
    double norm = 1.0 / std::sqrt(2.0 * rep.N);
    cplx eighth = e2pi(-sg / 8.0);
    cmat S(n, cvec(n));
    for (long long r = 0; r < n; ++r)
        for (long long rp = 0; rp < n; ++rp)
            S[r][rp] = norm * eighth * e2pi(-sg * double(mod_ll(r * rp, 2 * rep.N)) / (2.0 * rep.N));
    return S;
}

struct WordOp {
    bool is_S = false;
    long long m = 0; // T-power when not S
};

// g = T^{m1} S T^{m2} S ... (ops in left-to-right order), possibly times -I
// realized as S S inserted in place.
std::vector<WordOp> decompose(const MetaplecticElement& g) {
    std::vector<WordOp> ops;
    long long a = g.a, b = g.b, c = g.c, d = g.d;
    while (c != 0) {
        // m = nearest integer to a/c, then S^{-1} T^{-m} reduces |c|.
        long long m = std::llround(double(a) / double(c));
        long long a1 = a - m * c, b1 = b - m * d;
        ops.push_back({false, m});
        ops.push_back({true, 0});
        // S^{-1} (a1 b1; c d) = (c, d; -a1, -b1)
        long long na = c, nb = d, nc = -a1, nd = -b1;
        a = na; b = nb; c = nc; d = nd;
    }
    if (a == 1) {
        ops.push_back({false, b});
    } else {
        // (-1, b; 0, -1) = S S T^{-b}
        ops.push_back({true, 0});
        ops.push_back({true, 0});
        ops.push_back({false, -b});
    }
    return ops;
}

} // namespace

MetaplecticElement mp_mul(const MetaplecticElement& g1, const MetaplecticElement& g2) {
    if (det(g1) != 1 || det(g2) != 1)
        throw validation_error("mp_mul: determinant must be 1");
    MetaplecticElement p;
    p.a = g1.a * g2.a + g1.b * g2.c;
    p.b = g1.a * g2.b + g1.b * g2.d;
    p.c = g1.c * g2.a + g1.d * g2.c;
    p.d = g1.c * g2.b + g1.d * g2.d;
    p.branch_sign = 1;
    cplx lhs = g1.phi(g2.moebius(TEST_TAU)) * g2.phi(TEST_TAU);
    p.branch_sign = snap_sign(lhs / p.phi(TEST_TAU));
    return p;
}

cmat mat_mul(const cmat& A, const cmat& B) {
    size_t n = A.size(), m = B[0].size(), k = B.size();
    cmat C(n, cvec(m, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            cplx a = A[i][l];
            if (a == 0.0) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += a * B[l][j];
        }
    return C;
}

cvec mat_vec(const cmat& A, const cvec& x) {
    cvec y(A.size(), 0.0);
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    return y;
}

double unitarity_defect(const cmat& A) {
    size_t n = A.size();
    double worst = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            cplx s = 0;
            for (size_t l = 0; l < n; ++l) s += A[i][l] * std::conj(A[j][l]);
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    return worst;
}

cmat weil_matrix(const WeilRep& rep, const MetaplecticElement& g) {
    if (det(g) != 1) throw validation_error("weil_matrix: determinant must be 1");
    auto ops = decompose(g);
    // Multiply generator matrices left to right; the word reproduces the
    // matrix of g with the principal branch product, whose sign against the
    // requested branch is read off from the square-root cocycle.
    cmat M = identity(rep.dim());
    bool started = false;
    cmat S;
    for (auto it = ops.begin(); it != ops.end(); ++it) {
        if (it->is_S) {
            if (S.empty()) S = weil_S(rep);
            M = started ? mat_mul(M, S) : S;
            started = true;
        } else if (it->m != 0 || !started) {
            cmat T = identity(rep.dim());
            left_mul_Tpow(rep, it->m, T);
            M = started ? mat_mul(M, T) : T;
            started = true;
        }
    }
    // Branch of the word: evaluate the cocycle right-to-left at the test point.
    cplx tau = TEST_TAU, phi_acc = 1.0;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        MetaplecticElement op;
        if (it->is_S) op = MetaplecticElement{0, -1, 1, 0, 1};
        else op = MetaplecticElement{1, it->m, 0, 1, 1};
        phi_acc *= op.phi(tau);
        tau = op.moebius(tau);
    }
    int word_sign = snap_sign(phi_acc / g.phi(TEST_TAU));
    if (word_sign < 0)
        for (auto& row : M)
            for (auto& z : row) z = -z;
    return M;
}

cplx CoeffTable::cplus(long long D, long long r) const {
    auto it = holo.find({D, mod_ll(r, 2 * N)});
    return it == holo.end() ? cplx(0.0) : it->second;
}

cplx CoeffTable::cminus(long long D, long long r) const {
    auto it = nonholo.find({D, mod_ll(r, 2 * N)});
    return it == nonholo.end() ? cplx(0.0) : it->second;
}

bool CoeffTable::has(long long D, long long r) const {
    return holo.count({D, mod_ll(r, 2 * N)}) > 0;
}

std::map<std::pair<long long, long long>, cplx> CoeffTable::principal_part() const {
    std::map<std::pair<long long, long long>, cplx> out;
    for (const auto& [k, v] : holo)
        if (k.first <= 0) out[k] = v;
    return out;
}

PoincareEvaluator::PoincareEvaluator(const WeilRep& rep, double kappa, long long D,
                                     long long r, double s, double min_v,
                                     const PrecisionConfig& cfg)
    : rep_(rep), kappa_(kappa), s_(s), min_v_(min_v), D_(D), r_(mod_ll(r, 2 * rep.N)),
      cfg_(cfg) {
    if (kappa >= 0) throw validation_error("poincare: weight must be negative");
    if (D >= 0) throw validation_error("poincare: seed D must be negative");
    if (min_v <= 0) throw validation_error("poincare: need positive minimum height");
    if (mod_ll(D - rep.sigma() * r * r, 4 * rep.N) != 0)
        throw validation_error("poincare: seed congruence D = sigma r^2 mod 4N violated");
    double m2 = -2.0 * kappa;
    if (std::abs(m2 - std::round(m2)) > 1e-9)
        throw validation_error("poincare: 2*kappa must be an integer");
    pow_phi_ = int(std::llround(m2));
    if (2.0 * s <= 2.0)
        throw numerical_error("poincare: spectral parameter outside absolute convergence");
    inv_gamma_2s_ = 1.0 / gammafn(2.0 * s);
    if (2.0 * s - 2.0 < 0.75)
        std::fprintf(stderr,
                     "poincare: warning: slow convergence at 2s-2 = %.3f; "
                     "higher weight is recommended for tight tolerances\n",
                     2.0 * s - 2.0);

    // Truncation radius from the small-argument tail estimate
    //   tail(R) ~ 4 e X^{s-kappa/2} (2 pi / v Gamma(2s)) R^{2-2s}/(2s-2).
    double X = PI * std::abs(double(D)) * min_v / double(rep.N);
    double lead = std::abs(script_M(kappa, s, X, cfg) * inv_gamma_2s_);
    double tol_abs = cfg.target_rel_error * std::max(lead, 0.01);
    double C0 = 4.0 * std::exp(1.0) * std::pow(X, s - 0.5 * kappa) * 2.0 * PI /
                (min_v * gammafn(2.0 * s) * (2.0 * s - 2.0));
    double R = std::pow(C0 / tol_abs, 1.0 / (2.0 * s - 2.0));
    R = std::max(R, 2.5);
    if (R > 2500.0)
        throw numerical_error("poincare: truncation radius too large for the requested height/tolerance");
    R_ = R;

    long long cmax = static_cast<long long>(std::ceil(R / min_v));
    long long n = rep_.dim();
    for (long long c = -cmax; c <= cmax; ++c) {
        long long dspan = static_cast<long long>(std::ceil(R)) + std::llabs(c) + 1;
        for (long long d = -dspan; d <= dspan; ++d) {
            if (std::gcd(std::llabs(c), std::llabs(d)) != 1) continue;
            // complete (c, d) to a determinant-1 matrix: a d - b c = 1
            long long x0 = 1, x1 = 0, y0 = 0, y1 = 1, aa = d, bb = c;
            while (bb != 0) {
                long long q = aa / bb;
                aa -= q * bb; std::swap(aa, bb);
                x0 -= q * x1; std::swap(x0, x1);
                y0 -= q * y1; std::swap(y0, y1);
            }
            if (aa == -1) { x0 = -x0; y0 = -y0; }
            long long A = x0, B = -y0; // A d - B c = 1
            MetaplecticElement g{A, B, c, d, 1};
            cmat M = weil_matrix(rep_, g);
            Coset cs;
            cs.a = A; cs.b = B; cs.c = c; cs.d = d;
            cs.row.resize(n);
            for (long long j = 0; j < n; ++j) cs.row[j] = std::conj(M[r_][j]);
            cosets_.push_back(std::move(cs));
        }
    }
}

cvec PoincareEvaluator::operator()(cplx tau) const {
    if (tau.imag() < 0.98 * min_v_)
        throw validation_error("poincare: evaluation below the cached height");
    long long n = rep_.dim();
    cvec acc(n, 0.0);
    double v = tau.imag();
    for (const auto& cs : cosets_) {
        cplx zc = double(cs.c) * tau + double(cs.d);
        double t2 = std::norm(zc);
        cplx gt = (double(cs.a) * tau + double(cs.b)) / zc;
        double vg = v / t2;
        double x = PI * std::abs(double(D_)) * vg / double(rep_.N);
        double mval = script_M(kappa_, s_, x, cfg_);
        cplx phi = std::sqrt(zc);
        cplx scal = cpow_int(phi, pow_phi_) * mval *
                    e2pi(double(D_) * gt.real() / (4.0 * rep_.N));
        for (long long j = 0; j < n; ++j) acc[j] += scal * cs.row[j];
    }
    for (auto& z : acc) z *= inv_gamma_2s_;
    return acc;
}

cvec poincare_eval(const WeilRep& rep, double kappa, long long D, long long r,
                   cplx tau, double s, const PrecisionConfig& cfg) {
    PoincareEvaluator ev(rep, kappa, D, r, s, tau.imag(), cfg);
    return ev(tau);
}

std::vector<std::pair<long long, long long>> coeff_indices(long long N, int sigma,
                                                           long long Dmin, long long Dmax) {
    std::vector<std::pair<long long, long long>> out;
    for (long long D = Dmin; D <= Dmax; ++D)
        for (long long r = 0; r < 2 * N; ++r)
            if (mod_ll(D - sigma * r * r, 4 * N) == 0) out.push_back({D, r});
    return out;
}

CoeffTable extract_coeffs_two_height(const VecEvaluator& f, double kappa, long long N,
                                     bool dual, double y1, double y2,
                                     const std::vector<std::pair<long long, long long>>& targets,
                                     int samples, const PrecisionConfig& cfg) {
    if (y1 <= 0 || y2 <= 0 || std::abs(y1 - y2) < 1e-12)
        throw validation_error("extract: need two distinct positive heights");
    int sigma = dual ? -1 : 1;
    long long n = 2 * N;
    // One pass of evaluator samples per height.
    int M = samples;
    std::vector<cvec> rows1(M), rows2(M);
    parallel_for(2 * M, [&](size_t idx) {
        int j = int(idx % M);
        double u = double(j) / M;
        if (idx < size_t(M)) rows1[j] = f(cplx(u, y1));
        else rows2[j] = f(cplx(u, y2));
    });

    CoeffTable out;
    out.N = N;
    out.dual = dual;
    out.weight_times_2 = int(std::llround(2.0 * kappa));
    for (auto [D, r] : targets) {
        long long rr = mod_ll(r, n);
        if (mod_ll(D - sigma * rr * rr, 4 * N) != 0)
            throw validation_error("extract: target index violates D = sigma r^2 mod 4N");
        // Componentwise twisted u-integral at both heights.
        cplx A1 = 0, A2 = 0;
        for (int j = 0; j < M; ++j) {
            double u = double(j) / M;
            cplx tw = e2pi(-double(D) * u / (4.0 * N));
            A1 += rows1[j][rr] * tw;
            A2 += rows2[j][rr] * tw;
        }
        A1 /= double(M);
        A2 /= double(M);
        if (D < 0) {
            double E1 = std::exp(PI * std::abs(double(D)) * y1 / (2.0 * N));
            double E2 = std::exp(PI * std::abs(double(D)) * y2 / (2.0 * N));
            double G1 = inc_gamma(1.0 - kappa, PI * std::abs(double(D)) * y1 / N, cfg);
            double G2 = inc_gamma(1.0 - kappa, PI * std::abs(double(D)) * y2 / N, cfg);
            double denom = G1 - G2;
            double cond = (std::abs(G1) + std::abs(G2) + 2.0) / std::max(std::abs(denom), 1e-300);
            if (cond > 1e10)
                throw numerical_error("extract: ill-conditioned two-height system");
            cplx B1 = A1 / E1, B2 = A2 / E2;
            cplx cm = (B1 - B2) / denom;
            cplx cp = B1 - cm * G1;
            out.holo[{D, rr}] = cp;
            out.nonholo[{D, rr}] = cm;
        } else if (D == 0) {
            double G1 = std::pow(y1, 1.0 - kappa), G2 = std::pow(y2, 1.0 - kappa);
            cplx cm = (A1 - A2) / (G1 - G2);
            cplx cp = A1 - cm * G1;
            out.holo[{D, rr}] = cp;
            out.nonholo[{D, rr}] = cm;
        } else {
            double E1 = std::exp(-PI * double(D) * y1 / (2.0 * N));
            double E2 = std::exp(-PI * double(D) * y2 / (2.0 * N));
            cplx cp1 = A1 / E1, cp2 = A2 / E2;
            out.holo[{D, rr}] = cp1;
            out.nonholo[{D, rr}] = 0.0;
            out.residual[{D, rr}] = std::abs(cp1 - cp2) / std::max(std::abs(cp1), 1e-300);
        }
    }
    return out;
}

CoeffTable hecke_Tp(const CoeffTable& table, long long p, int lam,
                    const std::vector<std::pair<long long, long long>>& targets) {
    if (p < 2) throw validation_error("hecke: p must be a prime");
    if (std::gcd(p, table.N) != 1) throw validation_error("hecke: need gcd(p, N) = 1");
    long long N = table.N;
    long long n2 = 2 * N;
    int sigma = table.dual ? -1 : 1;

    auto third_index = [&](long long D, long long r, long long& Dq, long long& rq) -> bool {
        if (D % (p * p) != 0) return false;
        Dq = D / (p * p);
        for (long long rp = 0; rp < n2; ++rp) {
            if (mod_ll(p * rp - r, n2) != 0) continue;
            if (mod_ll(Dq - sigma * rp * rp, 4 * N) != 0) continue;
            rq = rp;
            return true;
        }
        return false;
    };

    auto act = [&](const std::map<std::pair<long long, long long>, cplx>& src,
                   long long D, long long r, bool demand, cplx& out) -> bool {
        long long rr = mod_ll(r, n2);
        auto need = [&](long long DD, long long rrr, cplx& val) -> bool {
            auto it = src.find({DD, mod_ll(rrr, n2)});
            if (it == src.end()) {
                if (demand)
                    throw validation_error("hecke: missing source index (D=" +
                                           std::to_string(DD) + ", r=" +
                                           std::to_string(mod_ll(rrr, n2)) + ")");
                return false;
            }
            val = it->second;
            return true;
        };
        cplx c1;
        if (!need(p * p * D, p * rr, c1)) return false;
        cplx c2;
        if (!need(D, rr, c2)) return false;
        cplx acc = c1 + std::pow(double(p), lam - 1.0) *
                            double(kronecker(sigma * D, p)) * c2;
        long long Dq, rq;
        if (third_index(D, rr, Dq, rq)) {
            cplx c3;
            if (!need(Dq, rq, c3)) return false;
            acc += std::pow(double(p), 2.0 * lam - 1.0) * c3;
        }
        out = acc;
        return true;
    };

    CoeffTable res;
    res.N = table.N;
    res.weight_times_2 = table.weight_times_2;
    res.dual = table.dual;
    if (!targets.empty()) {
        for (auto [D, r] : targets) {
            cplx v;
            act(table.holo, D, r, true, v);
            res.holo[{D, mod_ll(r, n2)}] = v;
            if (!table.nonholo.empty()) {
                cplx w;
                if (act(table.nonholo, D, r, false, w)) res.nonholo[{D, mod_ll(r, n2)}] = w;
            }
        }
    } else {
        for (const auto& [key, unused] : table.holo) {
            (void)unused;
            cplx v;
            if (act(table.holo, key.first, key.second, false, v)) res.holo[key] = v;
        }
        for (const auto& [key, unused] : table.nonholo) {
            (void)unused;
            cplx v;
            if (act(table.nonholo, key.first, key.second, false, v)) res.nonholo[key] = v;
        }
    }
    return res;
}

RaisingResult raising_numeric(const VecEvaluator& f, double kappa, int n, cplx tau,
                              double h) {
    if (n < 0) throw validation_error("raising: need n >= 0");
    if (h <= 0 || h < 1e-7 * std::abs(tau.imag()))
        throw validation_error("raising: step underflow");
    if (n == 0) return {f(tau), 0.0};
    // Evaluate R^{n-1} as a function, then apply one raising step of weight
    // kappa + 2(n-1) by Richardson-extrapolated central differences.
    double kap_top = kappa + 2.0 * (n - 1);
    double err_inner = 0.0;
    auto inner = [&](cplx t) -> cvec {
        if (n == 1) return f(t);
        RaisingResult r = raising_numeric(f, kappa, n - 1, t, h);
        err_inner = std::max(err_inner, r.err);
        return r.value;
    };
    auto diff = [&](cplx dir, double step) -> cvec {
        cvec p = inner(tau + step * dir), m = inner(tau - step * dir);
        cvec out(p.size());
        for (size_t i = 0; i < p.size(); ++i) out[i] = (p[i] - m[i]) / (2.0 * step);
        return out;
    };
    cvec du1 = diff(cplx(1, 0), h), du2 = diff(cplx(1, 0), 0.5 * h);
    cvec dv1 = diff(cplx(0, 1), h), dv2 = diff(cplx(0, 1), 0.5 * h);
    cvec center = inner(tau);
    double v = tau.imag();
    cvec out(center.size());
    double err = 0.0;
    for (size_t i = 0; i < out.size(); ++i) {
        cplx fu = (4.0 * du2[i] - du1[i]) / 3.0;
        cplx fv = (4.0 * dv2[i] - dv1[i]) / 3.0;
        out[i] = cplx(0, 1) * fu + fv + kap_top * center[i] / v;
        err = std::max(err, std::abs(fu - du2[i]) + std::abs(fv - dv2[i]));
    }
    return {out, err + err_inner};
}

} // namespace mp
