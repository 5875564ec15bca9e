#ifndef BLOCKSPIN_ENTROPY_HPP
#define BLOCKSPIN_ENTROPY_HPP

namespace blockspin {

/// Bernoulli relative entropy I_p(x) = x log(x/p) + (1-x) log((1-x)/(1-p))
/// for x in [0,1], with the 0 log 0 = 0 convention at the endpoints.
/// Zero exactly at x = p, positive elsewhere; this is the exponential rate
/// that controls the edge-count deviations.
double rel_entropy(double x, double p);

/// Spin entropy I(x) = (1+x)/2 log(1+x) + (1-x)/2 log(1-x) on [-1,1]
/// (I(+-1) = log 2). The LDP rate function is built from I(2 x_i).
double spin_entropy(double x);

/// log C(n, k) via lgamma.
double log_binomial(long long n, long long k);

} // namespace blockspin

#endif
