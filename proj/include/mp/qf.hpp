#pragma once

#include <complex>
#include <vector>

#include "mp/arith.hpp"
#include "mp/util.hpp"

namespace mp {

// Integral binary quadratic form [a, b, c] of level N, i.e. a = 0 mod N.
// The form is Q(x,y) = a x^2 + b x y + c y^2; its discriminant b^2 - 4ac
// satisfies d = b^2 mod 4N.  sign(Q) = sign(a) for d < 0.
struct QuadForm {
    long long a = 0, b = 0, c = 0;
    long long N = 1;

    long long disc() const { return b * b - 4 * a * c; }
    int sign() const { return a > 0 ? 1 : (a < 0 ? -1 : 0); }
    // Q(z, 1) as a complex number.
    cplx eval(cplx z) const { return (double(a) * z + double(b)) * z + double(c); }

    friend bool operator==(const QuadForm& x, const QuadForm& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.N == y.N;
    }
};

// Matrix action: (Q o g)(x, y) = Q(px + qy, rx + sy) for g = [[p, q], [r, s]].
QuadForm form_apply(const QuadForm& Q, long long p, long long q, long long r, long long s);

// One positive definite representative per Gamma_0(N)-class of forms [a,b,c]
// with a = 0 mod N, disc = d < 0, b = r mod 2N.  Sorted by (a, b, c).
std::vector<QuadForm> class_reps(long long N, long long d, long long r);

// True if Q1 = Q2 o gamma for some gamma in Gamma_0(N) (both definite, equal
// discriminants).  Complete bounded search via first-column representation.
bool gamma0_equivalent(const QuadForm& Q1, const QuadForm& Q2);

// Root of Q(z,1) in the upper half-plane: (-b + i sqrt(|d|)) / (2a), for
// positive definite Q.
cplx heegner_point(const QuadForm& Q);

// w_Q = |Gamma_0(N)_Q| / 2: half the order of the stabilizer (1, 2 or 3 at
// N = 1).  Enumerates the finitely many automorphs of a definite form.
int stabilizer_order(const QuadForm& Q);

// Generalized genus character chi_Delta(Q) for Q = [aN, b, c] of discriminant
// divisible appropriately: 0 if gcd(a/N-part...) shares a factor with Delta,
// otherwise (Delta/n) for any represented n coprime to Delta.  search_bound
// limits the (x, y) search box.
int genus_char(long long Delta, const QuadForm& Q, long long search_bound = 50);

struct DivisorPoint {
    cplx point;      // Heegner point in the upper half-plane
    double weight;   // chi_Delta(Q) / w_Q
    QuadForm form;   // class representative
    int chi;         // chi_Delta(Q)
    int w;           // stabilizer order w_Q
};

// Twisted Heegner divisor: points alpha_Q with weights chi_Delta(Q)/w_Q over
// classes of discriminant D|Delta| in the residue class r*rho, plus the
// recorded scale |D Delta|^{(k-1)/2} used by weight-2k residue statements.
struct HeegnerDivisor {
    long long N = 1, Delta = 1, rho = 0, D = 0, r = 0;
    int k = 2;
    std::vector<DivisorPoint> points;
    double scale() const {
        return std::pow(std::abs(double(D) * double(Delta)), (k - 1) / 2.0);
    }
};

HeegnerDivisor heegner_divisor(long long N, long long Delta, long long rho,
                               long long D, long long r, int k);

// Lattice dictionary of the quadratic space: X = [[b/2N, c/N], [-a, -b/2N]]
// encoded by rationals (a, b, c); q(X) = -N det X = (b^2 - 4Nac)/4N.
struct LatticeVector {
    Rational a, b, c;
    long long N = 1;
    Rational qX() const {
        return (b * b - Rational(4) * Rational(N) * a * c) / (Rational(4) * Rational(N));
    }
};

} // namespace mp
