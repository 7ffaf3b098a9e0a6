#include "rittlab/roots.hpp"

#include <algorithm>
#include <cmath>

namespace rittlab {

namespace {

using CLD = std::complex<long double>;

// p(z) and p'(z) in one Horner pass.
std::pair<CLD, CLD> eval_with_derivative(const std::vector<CLD>& c, const CLD& z) {
    CLD p = 0, dp = 0;
    for (size_t k = c.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
    return {p, dp};
}

} // namespace

std::complex<long double> polish_root(const std::vector<CLD>& c, CLD z, int steps) {
    for (int s = 0; s < steps; ++s) {
        auto [p, dp] = eval_with_derivative(c, z);
        if (dp == CLD(0)) break;
        z -= p / dp;
    }
    return z;
}

std::vector<CLD> aberth_roots(std::vector<CLD> c, const RootOptions& opts) {
    while (!c.empty() && std::abs(c.back()) == 0.0L) c.pop_back();
    int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return {};
    if (n == 1) return {-c[0] / c[1]};

    long double radius = 0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k] / c[n]));
    radius = 1.0L + radius;

    std::vector<CLD> z(n);
    for (int k = 0; k < n; ++k) {
        long double t = 2.0L * 3.141592653589793238462643L * k / n + 0.4L;
        z[k] = radius * CLD(std::cos(t), std::sin(t));
    }

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        long double worst = 0;
        for (int i = 0; i < n; ++i) {
            auto [p, dp] = eval_with_derivative(c, z[i]);
            if (p == CLD(0)) continue;
            if (dp == CLD(0)) {
                z[i] *= CLD(1.0L + 1e-6L, 1e-7L);
                worst = 1;
                continue;
            }
            CLD newton = p / dp;
            CLD s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i && z[i] != z[j]) s += CLD(1) / (z[i] - z[j]);
            CLD denom = CLD(1) - newton * s;
            CLD w = (denom == CLD(0)) ? newton : newton / denom;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / (1.0L + std::abs(z[i])));
        }
        if (worst < static_cast<long double>(opts.tol)) break;
    }
    for (int i = 0; i < n; ++i) z[i] = polish_root(c, z[i], 2);
    return z;
}

std::vector<NumRoot> certified_roots(const Poly& p, const RootOptions& opts) {
    std::vector<NumRoot> out;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        Poly f = factor;
        if (f.constant_term().is_zero()) {
            out.push_back({CLD(0), mult, 0.0});
            f = f.shifted_down(1);
        }
        if (f.degree() == 1) {
            GQ root = -(f[0] / f[1]);
            auto v = root.to_complex();
            out.push_back({CLD(v.real(), v.imag()), mult, 0.0});
            continue;
        }
        if (f.degree() < 1) continue;
        auto c = f.to_complex_ld();
        for (const CLD& z : aberth_roots(c, opts)) {
            auto [pv, dpv] = eval_with_derivative(c, z);
            double err = (dpv == CLD(0)) ? 0.0 : static_cast<double>(std::abs(pv / dpv));
            out.push_back({z, mult, err});
        }
    }
    std::sort(out.begin(), out.end(), [](const NumRoot& a, const NumRoot& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

std::vector<std::vector<int>> cluster_points(const std::vector<CLD>& pts, double radius) {
    std::vector<std::vector<int>> groups;
    std::vector<bool> used(pts.size(), false);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        groups.push_back({static_cast<int>(i)});
        used[i] = true;
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (!used[j] && std::abs(pts[j] - pts[i]) <= radius) {
                groups.back().push_back(static_cast<int>(j));
                used[j] = true;
            }
        }
    }
    return groups;
}

} // namespace rittlab
