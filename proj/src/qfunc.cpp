#include "cacsim/qfunc.hpp"

#include <cmath>
#include <stdexcept>

namespace cacsim {

namespace {
constexpr double inv_sqrt2 = 0.70710678118654752440;
} // namespace

double q_function(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("q_function: argument must be finite");
    }
    // erfc is monotone and accurate to ~1 ulp, which beats the 1e-12
    // absolute-error contract by several orders of magnitude.
    return 0.5 * std::erfc(x * inv_sqrt2);
}

double q_inverse(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("q_inverse: probability must lie in (0, 1)");
    }
    if (p == 0.5) return 0.0;
    double lo = -45.0;
    double hi = 45.0;
    // 200 halvings take |hi - lo| far below double resolution around the root.
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (q_function(mid) > p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * (1.0 + std::fabs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace cacsim
