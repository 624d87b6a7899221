#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rxcoop {

/// One point of the generalized-degrees-of-freedom characterization
/// d(alpha, kappa), where alpha = log INR / log SNR and
/// kappa = CB / log SNR. `binding` names the piecewise branch attaining the
/// minimum. At alpha == 1 the high-SNR limit is phase-sensitive; such points
/// carry phase_caveat = true and the formula value is reported without a
/// convergence claim.
struct GdofPoint {
    double alpha = 0.0;
    double kappa = 0.0;
    double d = 0.0;
    std::string binding;
    bool phase_caveat = false;
};

/// d(alpha, kappa) =
///   min{1, max(alpha, 1-alpha) + kappa, 1 - (alpha-kappa)/2}   0 <= alpha < 1
///   min{alpha, 1 + kappa, (alpha+kappa)/2}                     alpha >= 1
GdofPoint gdof_formula(double alpha, double kappa);

/// Smallest kappa at which d(alpha, kappa) reaches its full-cooperation
/// value d(alpha, inf), from closed-form branch intersection.
double kappa_star(double alpha);

struct GdofCurve {
    double alpha = 0.0;
    double kappa_star = 0.0;
    std::vector<GdofPoint> points;
};

/// Evaluates the formula on a sorted kappa grid and reports the saturation
/// point.
GdofCurve gdof_curve(double alpha, const std::vector<double>& kappa_grid);

struct GdofNumericPoint {
    double snr_db = 0.0;
    double r_lo = 0.0;  // median achievable rate / log2 SNR
    double r_hi = 0.0;  // median outer bound / log2 SNR
};

/// Finite-SNR check of the formula: for each SNR sets INR = SNR^alpha and
/// CB = kappa * log2 SNR, draws `phase_samples` i.i.d. uniform phase tuples
/// and returns the medians of the normalized achievable rate and outer
/// bound. Medians (not means) so near-degenerate determinant draws do not
/// dominate. snr_db values must lie in (0, 120].
std::vector<GdofNumericPoint> gdof_numeric(double alpha, double kappa,
                                           const std::vector<double>& snr_db_list,
                                           int phase_samples, std::uint64_t seed);

}  // namespace rxcoop
