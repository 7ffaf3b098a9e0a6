#include "rittlab/reconstruct.hpp"

#include <cmath>

namespace rittlab {

std::optional<BigRat> reconstruct_rational(long double x, std::int64_t den_bound,
                                           long double tol) {
    if (!std::isfinite(static_cast<double>(x)) || den_bound < 1) return std::nullopt;

    // Convergents h_n/k_n of the continued fraction of x.
    BigInt h2 = 0, k2 = 1; // h_{-2}, k_{-2}
    BigInt h1 = 1, k1 = 0; // h_{-1}, k_{-1}
    BigInt best_h = 0, best_k = 0;
    long double rem = x;
    for (int step = 0; step < 64; ++step) {
        long double fl = std::floor(rem);
        if (fl > 9e17L || fl < -9e17L) break;
        BigInt a(static_cast<long long>(fl));
        BigInt h = a * h1 + h2;
        BigInt k = a * k1 + k2;
        if (k > den_bound) break;
        best_h = h;
        best_k = k;
        h2 = h1; k2 = k1;
        h1 = h; k1 = k;
        long double frac = rem - fl;
        if (frac < 1e-18L) break;
        rem = 1.0L / frac;
    }
    if (best_k == 0) return std::nullopt;
    BigRat r(best_h, best_k);
    long double approx = r.convert_to<long double>();
    if (std::abs(approx - x) > tol * (1.0L + std::abs(x))) return std::nullopt;
    return r;
}

std::optional<GQ> reconstruct_gq(const std::complex<long double>& z, std::int64_t den_bound,
                                 long double tol) {
    auto re = reconstruct_rational(z.real(), den_bound, tol);
    if (!re) return std::nullopt;
    auto im = reconstruct_rational(z.imag(), den_bound, tol);
    if (!im) return std::nullopt;
    return GQ(*re, *im);
}

} // namespace rittlab
