#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace rxcoop {

using ComplexGain = std::complex<double>;

/// The four coefficients of a two-user interference channel with unit-power
/// noise at each receiver. All derived quantities (SNR/INR per receiver and
/// the 2x2 determinant term) are computed from here and nowhere else.
struct ChannelGains {
    ComplexGain h11;
    ComplexGain h12;
    ComplexGain h21;
    ComplexGain h22;

    double snr1() const { return std::norm(h11); }
    double snr2() const { return std::norm(h22); }
    double inr1() const { return std::norm(h12); }
    double inr2() const { return std::norm(h21); }

    /// |h11*h22 - h12*h21|^2
    double det_sq() const { return std::norm(h11 * h22 - h12 * h21); }

    /// Throws std::invalid_argument unless all gains are finite and every
    /// received power is strictly positive.
    void validate() const;
};

/// Symmetric operating point: SNR = SNR_1 = SNR_2, INR = INR_1 = INR_2 and a
/// conference capacity of cb bits per channel use in each direction.
/// Linear power ratios, not dB.
struct SymmetricParams {
    double snr = 0.0;
    double inr = 0.0;
    double cb = 0.0;

    /// Requires snr > 1, inr > 1 (the regime all closed forms assume) and
    /// cb >= 0; throws std::invalid_argument otherwise.
    void validate() const;
};

/// Builds gains with |h11|^2 = |h22|^2 = snr, |h12|^2 = |h21|^2 = inr and the
/// given phases (radians, order h11,h12,h21,h22). Throws on non-finite phase.
ChannelGains gains_from_symmetric(const SymmetricParams& params,
                                  const std::array<double, 4>& phases);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace rxcoop
