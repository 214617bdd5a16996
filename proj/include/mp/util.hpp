#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <thread>
#include <vector>

namespace mp {

using cplx = std::complex<double>;

inline constexpr double PI = std::numbers::pi_v<double>;

// e(x) = exp(2 pi i x).
inline cplx e2pi(double x) {
    return std::polar(1.0, 2.0 * PI * x);
}

// Integer power of a complex number (n may be negative).
inline cplx cpow_int(cplx z, int n) {
    if (n < 0) return 1.0 / cpow_int(z, -n);
    cplx r = 1.0, b = z;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

inline long long mod_ll(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

// Worker count used by the heavy loops.  0 = hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n).  Falls back to a serial loop for small n or a
// single worker.  body must be safe to run concurrently on distinct i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace mp
