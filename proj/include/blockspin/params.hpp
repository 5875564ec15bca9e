#ifndef BLOCKSPIN_PARAMS_HPP
#define BLOCKSPIN_PARAMS_HPP

#include <cmath>
#include <optional>
#include <stdexcept>

namespace blockspin {

/// Interaction parameters of the two-group model.
///
/// beta  — within-group coupling, > 0
/// alpha — between-group coupling (sign sets aligned vs contrarian groups)
/// p, q  — edge probabilities; p also normalizes both Hamiltonian terms
/// a     — the ratio q/p used by the mean-field predictions; defaults to q/p
///         and can be overridden for experiments where the finite-size ratio
///         should differ from the limiting one.
struct ModelParams {
    double beta = 1.0;
    double alpha = 0.0;
    double p = 1.0;
    double q = 1.0;
    std::optional<double> a_override;

    double a() const { return a_override ? *a_override : q / p; }

    /// Coupling of the fully-connected reference model, lambda = alpha * a.
    double lambda() const { return alpha * a(); }

    /// Standing assumptions: beta > 0, p >= q, |alpha| q/p <= beta,
    /// p and q in (0,1].
    void validate() const {
        if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
        if (!(p > 0.0) || p > 1.0 || !(q > 0.0) || q > 1.0)
            throw std::invalid_argument("p and q must lie in (0,1]");
        if (p < q) throw std::invalid_argument("requires p >= q");
        if (std::abs(alpha) * q / p > beta + 1e-12)
            throw std::invalid_argument("requires |alpha| q/p <= beta");
        if (a_override && (*a_override < 0.0 || *a_override > 1.0))
            throw std::invalid_argument("a must lie in [0,1]");
    }
};

} // namespace blockspin

#endif
