#include "blockspin/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace blockspin {

namespace {
inline double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }
} // namespace

double rel_entropy(double x, double p) {
    if (!(x >= 0.0) || x > 1.0) throw std::invalid_argument("x must lie in [0,1]");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("p must lie in (0,1)");
    return xlogy(x, x / p) + xlogy(1.0 - x, (1.0 - x) / (1.0 - p));
}

double spin_entropy(double x) {
    if (!(std::abs(x) <= 1.0))
        throw std::invalid_argument("x must lie in [-1,1]");
    return 0.5 * (xlogy(1.0 + x, 1.0 + x) + xlogy(1.0 - x, 1.0 - x));
}

double log_binomial(long long n, long long k) {
    if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

} // namespace blockspin
