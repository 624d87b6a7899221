#pragma once

namespace rxcoop {

/// Common/private power allocation of one transmitter. Powers are absolute
/// (the per-user constraint is unit power), so pc + pp <= 1.
struct PowerSplit {
    double pc = 1.0;
    double pp = 0.0;

    void validate() const;
};

/// Quantization distortions used by the two receivers when compressing their
/// received signals for the conference link. Both are variances of the
/// additive quantization noise, never below 0.
struct QuantizerConfig {
    double delta1 = 1.0;
    double delta2 = 1.0;

    void validate() const;
};

}  // namespace rxcoop
