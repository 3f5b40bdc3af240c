#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace su2opt::detail {

/// Bisection on a bracketed sign change; ~1 ulp of the interval scale.
template <typename F>
double bisect_root(F&& f, double lo, double hi, double flo, double fhi) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section minimization; returns (argmin, min).
template <typename F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, int iters = 160) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters && (b - a) > 0.0; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        if (x2 - x1 <= 0.0) break;
    }
    return (f1 <= f2) ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

struct ContactOptions {
    int grid{2000};
    double zero_tol{1e-9};    // accept a touch if |f| refines below this
    double probe_tol{1e-5};   // examine local |f| minima below this
    double dedupe{1e-9};
};

/// All parameter values in [lo, hi] where f vanishes: transversal sign
/// changes plus tangential touches (local minima of |f| that refine to
/// ~zero). Sorted ascending, deduplicated.
inline std::vector<double> find_contacts(const std::function<double(double)>& f, double lo,
                                         double hi, const ContactOptions& opt) {
    std::vector<double> roots;
    if (!(hi > lo)) return roots;
    const int n = opt.grid;
    std::vector<double> xs(n + 1), fs(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = lo + (hi - lo) * i / n;
        fs[i] = f(xs[i]);
    }
    for (int i = 0; i < n; ++i) {
        if ((fs[i] < 0.0) != (fs[i + 1] < 0.0) || fs[i] == 0.0) {
            roots.push_back(bisect_root(f, xs[i], xs[i + 1], fs[i], fs[i + 1]));
        }
    }
    if (fs[n] == 0.0) roots.push_back(xs[n]);
    // Tangential touches: |f| dips to ~0 without changing sign.
    auto absf = [&f](double x) { return std::abs(f(x)); };
    for (int i = 1; i < n; ++i) {
        const bool local_min = std::abs(fs[i]) <= std::abs(fs[i - 1]) &&
                               std::abs(fs[i]) <= std::abs(fs[i + 1]);
        const bool same_sign = (fs[i - 1] < 0.0) == (fs[i] < 0.0) &&
                               (fs[i] < 0.0) == (fs[i + 1] < 0.0);
        if (local_min && same_sign && std::abs(fs[i]) < opt.probe_tol) {
            const auto [x, fx] = golden_min(absf, xs[i - 1], xs[i + 1]);
            if (fx <= opt.zero_tol) roots.push_back(x);
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (out.empty() || r - out.back() > opt.dedupe) out.push_back(r);
    }
    return out;
}

}  // namespace su2opt::detail
