#include "mp/qf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mp/errors.hpp"

namespace mp {

QuadForm form_apply(const QuadForm& Q, long long p, long long q, long long r, long long s) {
    QuadForm R;
    R.N = Q.N;
    R.a = Q.a * p * p + Q.b * p * r + Q.c * r * r;
    R.b = 2 * Q.a * p * q + Q.b * (p * s + q * r) + 2 * Q.c * r * s;
    R.c = Q.a * q * q + Q.b * q * s + Q.c * s * s;
    return R;
}

namespace {

// Solve p s - q r = 1 for (q, s) given a primitive column (p, r).
bool complete_column(long long p, long long r, long long& q, long long& s) {
    if (std::gcd(std::abs(p), std::abs(r)) != 1) return false;
    // extended gcd on (p, r): find x, y with p x + r y = 1
    long long a = p, b = r, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (b != 0) {
        long long t = a / b;
        a -= t * b; std::swap(a, b);
        x0 -= t * x1; std::swap(x0, x1);
        y0 -= t * y1; std::swap(y0, y1);
    }
    if (a == -1) { x0 = -x0; y0 = -y0; }
    s = x0;
    q = -y0;
    return p * s - q * r == 1;
}

} // namespace

bool gamma0_equivalent(const QuadForm& Q1, const QuadForm& Q2) {
    if (Q1.N != Q2.N) return false;
    long long d = Q1.disc();
    if (d != Q2.disc() || d >= 0) return false;
    if (Q1.sign() != Q2.sign()) return false;
    // Work with positive definite copies (automorphs/equivalence unchanged).
    QuadForm A = Q1, B = Q2;
    if (A.sign() < 0) {
        A.a = -A.a; A.b = -A.b; A.c = -A.c;
        B.a = -B.a; B.b = -B.b; B.c = -B.c;
    }
    const long long N = A.N;
    // First column (p, r) of gamma must satisfy A(p, r) = B.a with r = 0 mod N.
    // The definite quadratic A(p,r) = B.a confines (p, r) to an ellipse:
    // r^2 <= 4 A.a B.a / |d| and |2 A.a p + A.b r| <= 2 sqrt(A.a B.a).
    double ad = double(std::llabs(d));
    long long rmax = static_cast<long long>(std::floor(std::sqrt(4.0 * A.a * B.a / ad))) + 1;
    double pw = 2.0 * std::sqrt(double(A.a) * double(B.a));
    for (long long rr = -rmax; rr <= rmax; ++rr) {
        if (rr % N != 0) continue;
        double center = -double(A.b) * rr / (2.0 * A.a);
        long long plo = static_cast<long long>(std::floor(center - pw / (2.0 * A.a))) - 1;
        long long phi = static_cast<long long>(std::ceil(center + pw / (2.0 * A.a))) + 1;
        for (long long p = plo; p <= phi; ++p) {
            if (A.a * p * p + A.b * p * rr + A.c * rr * rr != B.a) continue;
            long long q0, s0;
            if (!complete_column(p, rr, q0, s0)) continue;
            // General completion (q0 + t p, s0 + t rr); the middle coefficient
            // of A o gamma is linear in t with slope 2 B.a.
            long long b0 = 2 * A.a * p * q0 + A.b * (p * s0 + q0 * rr) + 2 * A.c * rr * s0;
            long long delta = B.b - b0;
            if (delta % (2 * B.a) != 0) continue;
            long long t = delta / (2 * B.a);
            QuadForm C = form_apply(A, p, q0 + t * p, rr, s0 + t * rr);
            if (C.a == B.a && C.b == B.b && C.c == B.c) return true;
        }
    }
    return false;
}

std::vector<QuadForm> class_reps(long long N, long long d, long long r) {
    if (d >= 0) throw validation_error("class_reps: discriminant must be negative");
    if (mod_ll(d - r * r, 4 * N) != 0)
        throw validation_error("class_reps: need d = r^2 mod 4N (inconsistent Heegner parameters)");
    // Enumerate candidates [aN, b, c] generously past the reduced region, then
    // deduplicate by Gamma_0(N)-equivalence.  a <= 2 ceil(sqrt(|d|/3)) + 2
    // doubles the classical reduction bound as a safety margin.
    long long amax = 2 * (static_cast<long long>(std::ceil(std::sqrt(std::llabs(d) / 3.0))) + 1);
    std::vector<QuadForm> cands;
    for (long long a = 1; a * N <= amax * N && a <= amax; ++a) {
        long long A = a * N;
        // b = r mod 2N, |b| <= A (pad by 2N to be safe at the boundary)
        long long blo = -(A + 2 * N), bhi = A + 2 * N;
        long long b = r - 2 * N * ((r - blo) / (2 * N) + 1);
        while (b < blo) b += 2 * N;
        for (; b <= bhi; b += 2 * N) {
            long long num = b * b - d;
            if (num % (4 * A) != 0) continue;
            long long c = num / (4 * A);
            QuadForm Q{A, b, c, N};
            if (Q.disc() != d) continue;
            cands.push_back(Q);
        }
    }
    // Canonical representative per class: smallest (a, |b|, sign, c), so the
    // familiar reduced forms are the ones reported.
    std::sort(cands.begin(), cands.end(), [](const QuadForm& x, const QuadForm& y) {
        if (x.a != y.a) return x.a < y.a;
        long long xb = std::llabs(x.b), yb = std::llabs(y.b);
        if (xb != yb) return xb < yb;
        if (x.b != y.b) return x.b > y.b; // positive b preferred
        return x.c < y.c;
    });
    std::vector<QuadForm> reps;
    for (const auto& Q : cands) {
        bool dup = false;
        for (const auto& R : reps)
            if (gamma0_equivalent(Q, R)) { dup = true; break; }
        if (!dup) reps.push_back(Q);
    }
    std::sort(reps.begin(), reps.end(), [](const QuadForm& x, const QuadForm& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    });
    return reps;
}

cplx heegner_point(const QuadForm& Q) {
    long long d = Q.disc();
    if (d >= 0 || Q.a <= 0)
        throw validation_error("heegner_point: form must be positive definite");
    return cplx(-double(Q.b), std::sqrt(double(-d))) / (2.0 * double(Q.a));
}

int stabilizer_order(const QuadForm& Q) {
    long long d = Q.disc();
    if (d >= 0) throw validation_error("stabilizer_order: form must be definite");
    // Automorphs of Q agree with those of its primitive part Q0 = Q / content:
    // solutions of t^2 - d0 u^2 = 4 give gamma = [[(t-B0 u)/2, -C0 u],
    // [A0 u, (t+B0 u)/2]] (integrality of the diagonal is automatic from the
    // parity of d0).  Membership in Gamma_0(N) additionally needs N | A0 u.
    long long g = std::gcd(std::gcd(std::abs(Q.a), std::abs(Q.b)), std::abs(Q.c));
    long long A0 = Q.a / g;
    long long d0 = d / (g * g);
    int count = 0;
    for (long long u = -2; u <= 2; ++u) {
        long long rhs = 4 + d0 * u * u;
        if (rhs < 0) continue;
        long long t = static_cast<long long>(std::llround(std::sqrt(double(rhs))));
        while (t * t < rhs) ++t;
        if (t * t != rhs) continue;
        if ((A0 * u) % Q.N != 0) continue;
        if (t == 0) ++count;
        else count += 2; // +-t
    }
    return count / 2;
}

int genus_char(long long Delta, const QuadForm& Q, long long search_bound) {
    if (Delta == 1) return 1;
    if (!is_fundamental_discriminant(Delta))
        throw validation_error("genus_char: Delta must be a fundamental discriminant");
    if (Q.a % Q.N != 0) throw validation_error("genus_char: level does not divide leading coefficient");
    long long a_small = Q.a / Q.N;
    long long g = std::gcd(std::gcd(std::abs(a_small), std::abs(Q.b)), std::abs(Q.c));
    if (std::gcd(g, std::abs(Delta)) > 1) return 0;
    // chi = (Delta/n) for any represented n coprime to Delta; search an
    // expanding box and cross-check independence on a second representative.
    int found = 0, value = 0;
    for (long long x = -search_bound; x <= search_bound && found < 2; ++x) {
        for (long long y = -search_bound; y <= search_bound && found < 2; ++y) {
            if (x == 0 && y == 0) continue;
            long long n = Q.a * x * x + Q.b * x * y + Q.c * y * y;
            if (n == 0 || std::gcd(std::abs(n), std::abs(Delta)) != 1) continue;
            int v = kronecker(Delta, n);
            if (found == 0) value = v;
            else if (v != value)
                throw numerical_error("genus_char: represented values give inconsistent character");
            ++found;
        }
    }
    if (found == 0)
        throw numerical_error("genus_char: no represented value coprime to Delta within search bound");
    return value;
}

HeegnerDivisor heegner_divisor(long long N, long long Delta, long long rho,
                               long long D, long long r, int k) {
    if (!is_fundamental_discriminant(Delta))
        throw validation_error("heegner_divisor: Delta must be a fundamental discriminant");
    if (mod_ll(Delta - rho * rho, 4 * N) != 0)
        throw validation_error("heegner_divisor: need Delta = rho^2 mod 4N");
    if (D >= 0) throw validation_error("heegner_divisor: D must be negative");
    long long dd = D * std::llabs(Delta);
    long long rr = mod_ll(r * rho, 2 * N);
    if (mod_ll(dd - rr * rr, 4 * N) != 0)
        throw validation_error("heegner_divisor: need D|Delta| = (r rho)^2 mod 4N");
    HeegnerDivisor div;
    div.N = N; div.Delta = Delta; div.rho = rho; div.D = D; div.r = r; div.k = k;
    for (const auto& Q : class_reps(N, dd, rr)) {
        DivisorPoint pt;
        pt.form = Q;
        pt.point = heegner_point(Q);
        pt.chi = genus_char(Delta, Q);
        pt.w = stabilizer_order(Q);
        pt.weight = double(pt.chi) / double(pt.w);
        div.points.push_back(pt);
    }
    return div;
}

} // namespace mp
