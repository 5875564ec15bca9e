#ifndef BLOCKSPIN_MEANFIELD_HPP
#define BLOCKSPIN_MEANFIELD_HPP

#include <string>
#include <utility>
#include <vector>

#include "blockspin/spin.hpp"

namespace blockspin {

/// Largest z >= 0 solving the Curie-Weiss equation z = tanh(b z);
/// 0 for b <= 1. Residual below 1e-14.
double cw_fixed_point(double b);

enum class Phase {
    Paramagnetic,    // beta + |alpha a| <= 2
    FourPoint,       // beta > 2, alpha a = 0
    AlignedTwoPoint, // beta + alpha a > 2, alpha a > 0
    AntiAlignedTwoPoint
};

std::string phase_name(Phase p);

/// Limiting law of m: a mixture of Dirac points with their weights.
struct PhaseDiagnosis {
    Phase phase = Phase::Paramagnetic;
    std::vector<std::pair<Magnetization, double>> limit_points;
    double z_star = 0.0; // relevant fixed-point magnitude, 0 when paramagnetic
};

/// Phase classification at (beta, alpha*a). The boundary beta + |alpha a| = 2
/// counts as paramagnetic. For alpha a < 0 the relevant magnitude is
/// z*((beta + |alpha a|)/2), the anti-aligned mirror of the aligned case.
PhaseDiagnosis classify_phase(double beta, double alpha_a);

/// The LDP landscape at (beta, lambda): G(x) = F(x) - J(x) with
///   F(x) = (beta x1^2 + beta x2^2 + 2 lambda x1 x2) / 2
///   J(x) = I(2 x1)/2 + I(2 x2)/2
/// on the square |2 x_i| <= 1. The LDP variable x is HALF the block
/// magnetization (m = 2x); every public result below is reported in
/// m-coordinates unless it says otherwise.
struct RateLandscape {
    double beta = 0.0;
    double lambda = 0.0;
    double sup = 0.0;                      // sup of G over the square
    std::vector<Magnetization> maximizers; // argmax set, in m-coordinates

    /// G(x) in internal x-coordinates.
    double objective(double x1, double x2) const;
    /// Rate function J_m(x) = sup G - G(x), x in [-1/2,1/2]^2.
    double rate(double x1, double x2) const;
};

/// Build the landscape: 401^2 grid scan, Newton/gradient ascent from every
/// near-global grid local maximum, cluster and keep the global argmax set.
RateLandscape rate_landscape(double beta, double lambda);

/// J_m(x) at a single point (convenience wrapper; x in [-1/2,1/2]^2).
double rate_function(double x1, double x2, double beta, double lambda);

/// All global minimizers of J_m, in m-coordinates.
std::vector<Magnetization> rate_minimizers(double beta, double lambda);

/// Variational free energy f = log 2 + sup_x [F(x) - J(x)], the limit of
/// (1/n) log Z~.
double free_energy_variational(double beta, double lambda);

} // namespace blockspin

#endif
