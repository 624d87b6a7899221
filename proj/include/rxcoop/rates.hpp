#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "rxcoop/channel.hpp"
#include "rxcoop/power.hpp"

namespace rxcoop {

/// Result of a min-of-terms rate formula: the clamped value, every term, and
/// the label of the term attaining the minimum.
struct RateBreakdown {
    double value = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    std::string binding;
};

/// One linear rate constraint a . (R1c, R2c, R1p, R2p) <= bound.
struct RateConstraint {
    std::array<int, 4> coeffs{};  // 0/1 coefficients
    double bound = 0.0;
    std::string label;
};

using ConstraintSet = std::vector<RateConstraint>;

/// Power split that keeps the received private interference at or below the
/// noise floor: pp = min(1, 1/inr), except that interference stronger than
/// the desired signal makes the whole message common (pp = 0).
PowerSplit default_power_split(double snr, double inr);

/// Quantization distortion rule: distortion = max(noise power, private
/// signal power at the own receiver) = max(1, snr*pp), same at both
/// receivers in the symmetric setup.
QuantizerConfig quantization_distortion(double snr, double inr,
                                        const PowerSplit& split);

/// The conference-rate overhead of binning at receiver `receiver` (1 or 2):
/// for receiver 1 this is I(yh2; y2 | x1c, x1, x2c, y1), the information in
/// the quantized signal that receiver 1 cannot already infer. Nonnegative.
double binning_penalty(const ChannelGains& gains, const PowerSplit& split1,
                       const PowerSplit& split2, const QuantizerConfig& quant,
                       int receiver);

/// The sixteen constraints of the superposition + quantize-binning scheme on
/// (R1c, R2c, R1p, R2p): per receiver, four bin-index constraints of the form
/// I(. ; y_i | .) + (CB - xi_i)^+ and four quantized-signal constraints of
/// the form I(. ; y_i, yh_j | .). All are imposed jointly.
ConstraintSet quantize_bin_constraints(const ChannelGains& gains, double cb12,
                                       double cb21, const PowerSplit& split1,
                                       const PowerSplit& split2,
                                       const QuantizerConfig& quant);

/// Largest Rc + Rp with R1c = R2c = Rc >= 0, R1p = R2p = Rp >= 0 feasible
/// for the constraint set. Solved exactly by vertex enumeration of the
/// two-variable LP; returns 0 when nothing positive is feasible.
double max_symmetric_rate(const ConstraintSet& constraints);

/// Closed-form achievable symmetric rate of the scheme (four min-terms, one
/// case for SNR <= INR and one for SNR > INR), clamped at 0. Requires
/// symmetric gain magnitudes and snr, inr > 1.
RateBreakdown achievable_sym_rate(const ChannelGains& gains, double cb);

/// Symmetric-capacity upper bound: minimum of the cut-set-with-conference,
/// Z-channel-plus-conference, half-sum and full-cooperation MIMO bounds.
RateBreakdown outer_bound_sym(const ChannelGains& gains, double cb);

/// outer_bound_sym minus achievable_sym_rate (clamped achievable value).
/// Lies in [0, 3] bits for every valid symmetric channel.
double sym_rate_gap(const ChannelGains& gains, double cb);

}  // namespace rxcoop
