#include "mp/arith.hpp"

#include <cstdlib>

namespace mp {

int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        // (a/2) = +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
        int a8 = static_cast<int>(mod_ll(a, 8));
        int k2 = (a8 == 1 || a8 == 7) ? 1 : -1;
        int e = 0;
        while (n % 2 == 0) { n /= 2; ++e; }
        if (e % 2 == 1) sign *= k2;
    }
    // Now n odd positive; Jacobi symbol by reciprocity.
    a = mod_ll(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long n8 = n % 8;
            if (n8 == 3 || n8 == 5) sign = -sign;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) sign = -sign;
        a %= n;
    }
    return n == 1 ? sign : 0;
}

bool is_fundamental_discriminant(long long d) {
    auto squarefree = [](long long m) {
        if (m < 0) m = -m;
        if (m == 0) return false;
        for (long long p = 2; p * p <= m; ++p)
            if (m % (p * p) == 0) return false;
        return true;
    };
    if (d == 1) return true;
    long long r = mod_ll(d, 4);
    if (r == 1) return squarefree(d);
    if (r == 0) {
        long long m = d / 4;
        long long mr = mod_ll(m, 4);
        return (mr == 2 || mr == 3) && squarefree(m);
    }
    return false;
}

std::vector<long long> sqrt_mod_4N(long long Delta, long long N) {
    std::vector<long long> out;
    for (long long rho = 0; rho < 2 * N; ++rho)
        if (mod_ll(rho * rho - Delta, 4 * N) == 0) out.push_back(rho);
    return out;
}

int moebius(long long n) {
    if (n <= 0) throw validation_error("moebius: n must be positive");
    int m = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

std::vector<long long> divisors(long long n) {
    std::vector<long long> small, large;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

std::vector<std::complex<double>> forward_divisor_sum(
    const std::vector<std::complex<double>>& a, int k, long long Delta) {
    const std::size_t n_max = a.size();
    std::vector<std::complex<double>> b(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::complex<double> acc = 0.0;
        for (long long d : divisors(static_cast<long long>(n))) {
            // kernel (Delta/d) d^{-k} exactly, then times n^{2k-1}
            Rational ker = Rational(kronecker(Delta, d)) / rat_pow(Rational(d), k);
            if (ker.num == 0) continue;
            Rational scale = ker * rat_pow(Rational(static_cast<long long>(n)), 2 * k - 1);
            acc += scale.to_double() * a[n / d - 1];
        }
        b[n - 1] = acc;
    }
    return b;
}

std::vector<std::complex<double>> invert_divisor_sum(
    const std::vector<std::complex<double>>& b, int k, long long Delta) {
    const std::size_t n_max = b.size();
    std::vector<std::complex<double>> a(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::complex<double> acc = 0.0;
        for (long long d : divisors(static_cast<long long>(n))) {
            int mu = moebius(d);
            if (mu == 0) continue;
            Rational ker = Rational(mu * kronecker(Delta, d)) / rat_pow(Rational(d), k);
            if (ker.num == 0) continue;
            long long m = static_cast<long long>(n) / d;
            Rational scale = ker / rat_pow(Rational(m), 2 * k - 1);
            acc += scale.to_double() * b[m - 1];
        }
        a[n - 1] = acc;
    }
    return a;
}

} // namespace mp
