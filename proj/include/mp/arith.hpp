#pragma once

#include <complex>
#include <vector>

#include "mp/rational.hpp"
#include "mp/util.hpp"

namespace mp {

// Kronecker symbol (a/n), full convention: (a/0) = [|a|=1], (a/-1) = sgn-rule,
// (a/2) by a mod 8, completely multiplicative in n.
int kronecker(long long a, long long n);

// True if d is a fundamental discriminant: 1, squarefree d = 1 mod 4, or 4m
// with m squarefree and m = 2,3 mod 4.
bool is_fundamental_discriminant(long long d);

// All residues rho in [0, 2N) with rho^2 = Delta mod 4N.  (Well defined:
// (rho + 2N)^2 = rho^2 mod 4N.)
std::vector<long long> sqrt_mod_4N(long long Delta, long long N);

// Moebius function via trial division (desk-scale n).
int moebius(long long n);

// All divisors of n > 0, ascending.
std::vector<long long> divisors(long long n);

// Forward divisor sum: b_n = n^{2k-1} sum_{d|n} (Delta/d) d^{-k} a_{n/d}.
// a is 1-based packed in a[0..n_max-1]; returns b the same way.
std::vector<std::complex<double>> forward_divisor_sum(
    const std::vector<std::complex<double>>& a, int k, long long Delta);

// Inverse of the forward sum: a_n = sum_{d|n} mu(d) (Delta/d) d^{-k} b_{n/d} / (n/d)^{2k-1}.
// Round-trips exactly with forward_divisor_sum (the combinatorial kernel is
// handled in exact rationals, b-values stay complex floats).
std::vector<std::complex<double>> invert_divisor_sum(
    const std::vector<std::complex<double>>& b, int k, long long Delta);

} // namespace mp
