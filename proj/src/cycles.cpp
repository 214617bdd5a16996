#include "mp/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include "mp/errors.hpp"

namespace mp {

namespace {

// Hyperbolic distance between two upper half-plane points.
double hyp_dist(cplx z, cplx p) {
    const double yz = z.imag(), yp = p.imag();
    if (!(yz > 0.0) || !(yp > 0.0))
        throw validation_error("hyperbolic distance requires points above the real line");
    return std::acosh(1.0 + std::norm(z - p) / (2.0 * yz * yp));
}

// Pole avoidance: a segment passing within kDetourTrigger of a pole is
// rerouted along a circular arc at hyperbolic radius kDetourRadius around it.
constexpr double kDetourTrigger = 1e-2;
constexpr double kDetourRadius = 2e-2;

struct PathPiece {
    bool is_arc = false;
    cplx za, zb;      // segment endpoints (also stored for arcs, as a record)
    cplx center;      // arc: Euclidean center
    double radius = 0; // arc: Euclidean radius
    double ang0 = 0, ang1 = 0; // arc: parameter range, ang0 -> ang1
};

struct DetourEvent {
    double t_in, t_out;
    cplx pole;
};

// Minimum of the hyperbolic distance from a pole to the segment za + t(zb-za),
// by coarse scan plus golden-section refinement.
std::pair<double, double> segment_min_dist(cplx za, cplx zb, cplx p) {
    const int coarse = 256;
    double best_t = 0.0, best_d = hyp_dist(za, p);
    for (int j = 1; j <= coarse; ++j) {
        const double t = double(j) / coarse;
        const double dd = hyp_dist(za + t * (zb - za), p);
        if (dd < best_d) {
            best_d = dd;
            best_t = t;
        }
    }
    double lo = std::max(0.0, best_t - 1.5 / coarse);
    double hi = std::min(1.0, best_t + 1.5 / coarse);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = hyp_dist(za + x1 * (zb - za), p);
    double f2 = hyp_dist(za + x2 * (zb - za), p);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = hyp_dist(za + x1 * (zb - za), p);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = hyp_dist(za + x2 * (zb - za), p);
        }
    }
    const double t = 0.5 * (lo + hi);
    return {t, hyp_dist(za + t * (zb - za), p)};
}

// Root of hyp_dist(z(t), p) = kDetourRadius on [ta, tb] with the distance
// below the radius at exactly one end.
double crossing_t(cplx za, cplx zb, cplx p, double ta, double tb) {
    double fa = hyp_dist(za + ta * (zb - za), p) - kDetourRadius;
    for (int it = 0; it < 80; ++it) {
        const double tm = 0.5 * (ta + tb);
        const double fm = hyp_dist(za + tm * (zb - za), p) - kDetourRadius;
        if ((fa > 0) == (fm > 0)) {
            ta = tm;
            fa = fm;
        } else {
            tb = tm;
        }
    }
    return 0.5 * (ta + tb);
}

void plan_segment(cplx za, cplx zb, const std::vector<cplx>& poles,
                  std::vector<PathPiece>& out) {
    std::vector<DetourEvent> events;
    for (const cplx& p : poles) {
        auto [t_star, dmin] = segment_min_dist(za, zb, p);
        if (dmin >= kDetourTrigger) continue;
        if (hyp_dist(za, p) < kDetourRadius || hyp_dist(zb, p) < kDetourRadius)
            throw validation_error("pairing: a path node lies inside the pole "
                                   "exclusion zone; move the waypoint");
        events.push_back({crossing_t(za, zb, p, 0.0, t_star),
                          crossing_t(za, zb, p, t_star, 1.0), p});
    }
    std::sort(events.begin(), events.end(),
              [](const DetourEvent& u, const DetourEvent& v) { return u.t_in < v.t_in; });
    for (std::size_t j = 1; j < events.size(); ++j)
        if (events[j].t_in < events[j - 1].t_out)
            throw validation_error("pairing: pole exclusion zones overlap on the path; "
                                   "add a waypoint between the poles");

    double cursor = 0.0;
    for (const DetourEvent& ev : events) {
        const cplx zin = za + ev.t_in * (zb - za);
        const cplx zout = za + ev.t_out * (zb - za);
        if (ev.t_in > cursor + 1e-14) {
            PathPiece seg;
            seg.za = za + cursor * (zb - za);
            seg.zb = zin;
            out.push_back(seg);
        }
        // Hyperbolic circle around the pole in Euclidean terms.
        const double yp = ev.pole.imag();
        const cplx center(ev.pole.real(), yp * std::cosh(kDetourRadius));
        const double radius = yp * std::sinh(kDetourRadius);
        const double phi_in = std::arg(zin - center);
        double dphi = std::arg((zout - center) / (zin - center));
        const double alt = dphi - (dphi > 0 ? 2.0 : -2.0) * PI;
        // Pick the side whose midpoint stays farthest from the other poles;
        // with no other pole nearby, prefer the upper side.
        auto side_score = [&](double dp) {
            const cplx mid = center + radius * std::polar(1.0, phi_in + 0.5 * dp);
            double score = 1e9 + mid.imag();
            for (const cplx& q : poles) {
                if (std::norm(q - ev.pole) < 1e-24) continue;
                score = std::min(score, hyp_dist(mid, q));
            }
            return score;
        };
        const double s_main = side_score(dphi), s_alt = side_score(alt);
        double chosen = s_main >= s_alt ? dphi : alt;
        if (std::max(s_main, s_alt) < kDetourTrigger)
            throw validation_error("pairing: cannot route around a pole, both "
                                   "detour arcs are blocked by other poles");
        PathPiece arc;
        arc.is_arc = true;
        arc.za = zin;
        arc.zb = zout;
        arc.center = center;
        arc.radius = radius;
        arc.ang0 = phi_in;
        arc.ang1 = phi_in + chosen;
        out.push_back(arc);
        cursor = ev.t_out;
    }
    if (cursor < 1.0 - 1e-14) {
        PathPiece seg;
        seg.za = za + cursor * (zb - za);
        seg.zb = zb;
        out.push_back(seg);
    }
}

std::vector<PathPiece> plan_path(const std::vector<cplx>& nodes,
                                 const std::vector<cplx>& poles) {
    for (const cplx& n : nodes)
        if (!(n.imag() > 0))
            throw validation_error("pairing: path nodes must lie in the upper half-plane");
    std::vector<PathPiece> pieces;
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j)
        plan_segment(nodes[j], nodes[j + 1], poles, pieces);
    return pieces;
}

// p_n(s) with p_1 = 1, p_2 = s, p_{n+1} = s p_n - p_{n-1}; the n-th power of
// a determinant-1 matrix P with trace s is p_n(s) P - p_{n-1}(s) I.
__int128 trace_poly(long long s, int n) {
    __int128 pm1 = 0, pc = 1; // p_0, p_1
    for (int j = 1; j < n; ++j) {
        const __int128 nx = (__int128)s * pc - pm1;
        pm1 = pc;
        pc = nx;
    }
    return pc;
}

struct Mat2 {
    __int128 a, b, c, d;
};

Mat2 mat_mul(const Mat2& u, const Mat2& v) {
    return {u.a * v.a + u.b * v.c, u.a * v.b + u.b * v.d, u.c * v.a + u.d * v.c,
            u.c * v.b + u.d * v.d};
}

bool is_power_of_smaller(long long a, long long b, long long c, long long d) {
    const long long t = a + d;
    const double tt = std::abs((double)t);
    const double lam = 0.5 * (tt + std::sqrt(tt * tt - 4.0));
    for (int n = 2; n <= 64; ++n) {
        const double x = std::pow(lam, 1.0 / n);
        const double s_abs = x + 1.0 / x;
        if (s_abs < 2.9999) break;
        for (int sg = 0; sg < 2; ++sg) {
            const long long s = (sg == 0 ? 1 : -1) * (long long)std::llround(s_abs);
            if (std::llabs(s) < 3) continue;
            const __int128 pn = trace_poly(s, n);
            const __int128 pn1 = trace_poly(s, n - 1);
            if (pn == 0) continue;
            const __int128 na = (__int128)a + pn1, nb = b, nc = c, nd = (__int128)d + pn1;
            if (na % pn || nb % pn || nc % pn || nd % pn) continue;
            Mat2 P{na / pn, nb / pn, nc / pn, nd / pn};
            if (P.a * P.d - P.b * P.c != 1) continue;
            Mat2 acc{1, 0, 0, 1};
            for (int j = 0; j < n; ++j) acc = mat_mul(acc, P);
            if (acc.a == a && acc.b == b && acc.c == c && acc.d == d) return true;
        }
    }
    return false;
}

// Iterated raising operator by nested central differences:
// R_kappa = i d/dx + d/dy + kappa / y applied with weights kappa0,
// kappa0 + 2, ..., kappa0 + 2(n-1), innermost first.
template <class F>
cplx nested_raise(const F& f, double kappa0, int n, cplx z, double h) {
    if (n == 0) return f(z);
    const double kappa_top = kappa0 + 2.0 * (n - 1);
    auto inner = [&](cplx w) { return nested_raise(f, kappa0, n - 1, w, h); };
    const cplx dx = (inner(z + h) - inner(z - h)) / (2.0 * h);
    const cplx dy = (inner(z + cplx(0, h)) - inner(z - cplx(0, h))) / (2.0 * h);
    return cplx(0, 1) * dx + dy + kappa_top / z.imag() * inner(z);
}

} // namespace

cplx GeodesicCycle::apply(cplx z) const {
    return (double(a) * z + double(b)) / (double(c) * z + double(d));
}

cplx GeodesicCycle::Q(cplx z) const {
    return (double(QA) * z + double(QB)) * z + double(QC);
}

GeodesicCycle cycle_from_matrix(long long a, long long b, long long c, long long d) {
    if (a * d - b * c != 1)
        throw validation_error("cycle_from_matrix: determinant must be 1, got " +
                               std::to_string(a * d - b * c));
    const long long t = a + d;
    if (std::llabs(t) <= 2)
        throw validation_error("cycle_from_matrix: hyperbolic matrix required "
                               "(|trace| > 2), got trace " + std::to_string(t));
    if (c == 0)
        throw validation_error("cycle_from_matrix: geodesic axis degenerates (c = 0)");
    if (is_power_of_smaller(a, b, c, d))
        throw validation_error("cycle_from_matrix: primitive matrix required; the "
                               "input is a power of a smaller hyperbolic element");
    GeodesicCycle cy;
    cy.a = a;
    cy.b = b;
    cy.c = c;
    cy.d = d;
    cy.QA = c;
    cy.QB = d - a;
    cy.QC = -b;
    cy.d_gamma = t * t - 4;
    const double mid = double(a - d) / (2.0 * double(c));
    const double half_gap = std::sqrt(double(cy.d_gamma)) / (2.0 * std::abs(double(c)));
    cy.base_point = cplx(mid, half_gap);
    return cy;
}

cplx balanced_base_point(const GeodesicCycle& cycle) {
    const double t = std::abs(double(cycle.a + cycle.d));
    const double sq = std::sqrt(double(cycle.d_gamma));
    const double len = 2.0 * std::log(0.5 * (t + sq)); // geodesic length
    const double mid = double(cycle.a - cycle.d) / (2.0 * double(cycle.c));
    const double R = sq / (2.0 * std::abs(double(cycle.c)));
    cplx best;
    double best_mismatch = 1e300;
    for (int sg : {-1, 1}) {
        const double theta = 2.0 * std::atan(std::exp(sg * 0.5 * len));
        const cplx cand(mid + R * std::cos(theta), R * std::sin(theta));
        const double mismatch = std::abs(cycle.apply(cand).imag() - cand.imag());
        if (mismatch < best_mismatch) {
            best_mismatch = mismatch;
            best = cand;
        }
    }
    return best;
}

PairingResult pairing(const ScalarEvaluator& f, const GeodesicCycle& cycle, int k,
                      const std::vector<cplx>& poles, const PrecisionConfig& cfg) {
    if (k < 1) throw validation_error("pairing: k must be >= 1");
    if (cycle.d_gamma <= 0)
        throw validation_error("pairing: cycle is not hyperbolic");
    std::vector<cplx> nodes;
    nodes.push_back(cycle.base_point);
    for (const cplx& w : cycle.waypoints) nodes.push_back(w);
    nodes.push_back(cycle.apply(cycle.base_point));
    const std::vector<PathPiece> pieces = plan_path(nodes, poles);

    auto g = [&](cplx z) { return f(z) * cpow_int(cycle.Q(z), k - 1); };
    const double quad_tol = std::max(cfg.target_rel_error, 1e-10);

    cplx total = 0.0;
    double l1 = 0.0;
    for (const PathPiece& pc : pieces) {
        if (!pc.is_arc) {
            const cplx dir = pc.zb - pc.za;
            auto h = [&](double t) { return g(pc.za + t * dir) * dir; };
            total += adaptive_integrate<cplx>(h, 0.0, 1.0, quad_tol);
            l1 += detail::gl16_panel<double>(
                [&](double t) { return std::abs(g(pc.za + t * dir)) * std::abs(dir); },
                0.0, 1.0);
        } else {
            auto h = [&](double th) {
                const cplx e = std::polar(pc.radius, th);
                return g(pc.center + e) * cplx(0, 1) * e;
            };
            total += adaptive_integrate<cplx>(h, pc.ang0, pc.ang1, quad_tol);
            l1 += std::abs(detail::gl16_panel<double>(
                [&](double th) {
                    return std::abs(g(pc.center + std::polar(pc.radius, th))) * pc.radius;
                },
                pc.ang0, pc.ang1));
        }
    }

    PairingResult res;
    res.raw_integral = total;
    res.projected =
        cpow_int(cplx(0, 1) / std::sqrt(double(cycle.d_gamma)), k - 1) * total;
    res.value = res.projected.real();
    res.l1_magnitude = l1;
    res.pieces = (int)pieces.size();
    return res;
}

namespace {

std::vector<cplx> translated_poles(const std::vector<cplx>& base_points,
                                   const GeodesicCycle& cycle) {
    double xmin = cycle.base_point.real(), xmax = xmin;
    auto widen = [&](cplx z) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
    };
    widen(cycle.apply(cycle.base_point));
    for (const cplx& w : cycle.waypoints) widen(w);
    std::vector<cplx> poles;
    for (const cplx& p : base_points) {
        const long long lo = (long long)std::floor(xmin - p.real()) - 1;
        const long long hi = (long long)std::ceil(xmax - p.real()) + 1;
        for (long long n = lo; n <= hi; ++n) poles.push_back(p + double(n));
    }
    return poles;
}

} // namespace

PairingResult pairing(const ScalarEvaluator& f, const GeodesicCycle& cycle, int k,
                      const EtaAssembly& assembly, const PrecisionConfig& cfg) {
    std::vector<cplx> pts;
    for (const EtaDivisorPoint& p : assembly.divisor) pts.push_back(p.point);
    return pairing(f, cycle, k, translated_poles(pts, cycle), cfg);
}

PairingResult pairing(const ScalarEvaluator& f, const GeodesicCycle& cycle, int k,
                      const HeegnerDivisor& divisor, const PrecisionConfig& cfg) {
    std::vector<cplx> pts;
    for (const DivisorPoint& p : divisor.points) pts.push_back(p.point);
    return pairing(f, cycle, k, translated_poles(pts, cycle), cfg);
}

std::pair<PairingResult, PairingResult> path_independence_check(
    const ScalarEvaluator& f, const GeodesicCycle& cycle, int k,
    const std::vector<cplx>& poles, const std::vector<cplx>& waypoints1,
    const std::vector<cplx>& waypoints2, const PrecisionConfig& cfg) {
    GeodesicCycle c1 = cycle, c2 = cycle;
    c1.waypoints = waypoints1;
    c2.waypoints = waypoints2;
    return {pairing(f, c1, k, poles, cfg), pairing(f, c2, k, poles, cfg)};
}

cplx elliptic_coeff_Q(const GeodesicCycle& cycle, cplx rho, int k) {
    if (k < 1) throw validation_error("elliptic_coeff_Q: k must be >= 1");
    if (!(rho.imag() > 0))
        throw validation_error("elliptic_coeff_Q: rho must lie in the upper half-plane");
    const double y = rho.imag();
    const double sq = std::sqrt(double(cycle.d_gamma));
    const double qval = double(cycle.QA) * std::norm(rho) +
                        double(cycle.QB) * rho.real() + double(cycle.QC);
    const cplx arg = cplx(0, 1) * qval / (y * sq);
    return cpow_int(cplx(-4.0 * y, 0), 1 - k) * cpow_int(cplx(0, 2.0 * sq), k - 1) *
           legendre_P(k - 1, arg);
}

cplx lattice_Q(const LatticeVector& X, cplx z) {
    return (X.a.to_double() * double(X.N) * z + X.b.to_double()) * z + X.c.to_double();
}

double lattice_p(const LatticeVector& X, cplx z) {
    return (X.a.to_double() * double(X.N) * std::norm(z) + X.b.to_double() * z.real() +
            X.c.to_double()) /
           (std::sqrt(2.0 * double(X.N)) * z.imag());
}

RaisingCheck raising_hypergeometric_check(int k, long long N, const Rational& m,
                                          const LatticeVector& X, cplx z,
                                          double fd_step) {
    if (k < 1) throw validation_error("raising_hypergeometric_check: k must be >= 1");
    if (N < 1) throw validation_error("raising_hypergeometric_check: N must be >= 1");
    if (m.num >= 0)
        throw validation_error("raising_hypergeometric_check: m must be negative");
    if (X.N != N)
        throw validation_error("raising_hypergeometric_check: X carries level " +
                               std::to_string(X.N) + ", expected " + std::to_string(N));
    const Rational qX = X.qX();
    if (qX.num != m.num || qX.den != m.den)
        throw validation_error("raising_hypergeometric_check: q(X) = " + qX.str() +
                               " does not equal m = " + m.str());
    if (!(z.imag() > 0))
        throw validation_error("raising_hypergeometric_check: z must lie in the "
                               "upper half-plane");
    if (!(fd_step > 0) || fd_step > 0.1)
        throw validation_error("raising_hypergeometric_check: fd_step out of range");

    const double md = m.to_double();
    auto w_of = [&](cplx zz) {
        const double p = lattice_p(X, zz);
        return 2.0 * std::abs(md) / (p * p);
    };
    const double w0 = w_of(z);
    if (w0 >= 1.0 - 1e-9)
        throw validation_error("raising_hypergeometric_check: hypergeometric argument "
                               "w = " + std::to_string(w0) + " must lie in (0, 1)");

    auto F = [&](cplx zz) -> cplx {
        const double w = w_of(zz);
        if (w >= 1.0 - 1e-12)
            throw numerical_error("raising_hypergeometric_check: finite-difference "
                                  "stencil crossed the w = 1 boundary");
        return std::pow(w, 0.5 * k) *
               hyp2f1(0.5 * k, 0.5 * (k + 1), k + 0.5, w);
    };

    const cplx lh = nested_raise(F, 0.0, k, z, fd_step);
    const cplx lh2 = nested_raise(F, 0.0, k, z, 0.5 * fd_step);
    const cplx lhs = (4.0 * lh2 - lh) / 3.0;
    if (std::abs(lh2 - lh) > 0.3 * std::abs(lhs) + 1e-12)
        throw numerical_error("raising_hypergeometric_check: finite differences "
                              "unstable; adjust fd_step");

    const double p0 = lattice_p(X, z);
    const double sgn_p = p0 > 0 ? 1.0 : -1.0;
    const cplx base = std::sqrt(4.0 * double(N) * std::abs(md)) * sgn_p /
                      lattice_Q(X, z);
    const cplx rhs = gammafn(2.0 * k) / gammafn(double(k)) * cpow_int(base, k);
    return {lhs, rhs};
}

} // namespace mp
