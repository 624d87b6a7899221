#include "rxcoop/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rxcoop/covariance.hpp"

namespace rxcoop {

namespace {

double pos(double x) { return x > 0.0 ? x : 0.0; }

RateBreakdown min_of_terms(std::vector<std::pair<std::string, double>> terms) {
    RateBreakdown out;
    out.terms = std::move(terms);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [label, value] : out.terms) {
        if (value < best) {
            best = value;
            out.binding = label;
        }
    }
    out.value = pos(best);
    return out;
}

/// Requires |h11|^2 == |h22|^2 and |h12|^2 == |h21|^2 (relative 1e-9) with
/// snr, inr > 1; returns (snr, inr).
std::pair<double, double> symmetric_magnitudes(const ChannelGains& gains) {
    gains.validate();
    const double snr = gains.snr1();
    const double inr = gains.inr1();
    const double snr_mismatch = std::abs(snr - gains.snr2());
    const double inr_mismatch = std::abs(inr - gains.inr2());
    if (snr_mismatch > 1e-9 * std::max(snr, gains.snr2()) ||
        inr_mismatch > 1e-9 * std::max(inr, gains.inr1())) {
        throw std::invalid_argument(
            "gain magnitudes must be symmetric (|h11|=|h22|, |h12|=|h21|)");
    }
    if (!(snr > 1.0) || !(inr > 1.0)) {
        throw std::invalid_argument("requires snr > 1 and inr > 1");
    }
    return {snr, inr};
}

}  // namespace

PowerSplit default_power_split(double snr, double inr) {
    if (!(snr > 1.0) || !(inr > 1.0)) {
        throw std::invalid_argument("requires snr > 1 and inr > 1");
    }
    PowerSplit split;
    if (inr >= snr) {
        // Interference at least as strong as the signal: everything common.
        split.pp = 0.0;
        split.pc = 1.0;
    } else {
        split.pp = std::min(1.0, 1.0 / inr);
        split.pc = 1.0 - split.pp;
    }
    split.validate();
    return split;
}

QuantizerConfig quantization_distortion(double snr, double inr,
                                        const PowerSplit& split) {
    if (!(snr > 1.0) || !(inr > 1.0)) {
        throw std::invalid_argument("requires snr > 1 and inr > 1");
    }
    split.validate();
    // Private signal power at the own receiver vs unit noise.
    const double delta = std::max(1.0, snr * split.pp);
    return QuantizerConfig{delta, delta};
}

double binning_penalty(const ChannelGains& gains, const PowerSplit& split1,
                       const PowerSplit& split2, const QuantizerConfig& quant,
                       int receiver) {
    quant.validate();
    const CovarianceModel model =
        build_covariance(gains, split1, split2, quant.delta1, quant.delta2);
    if (receiver == 1) {
        return gaussian_mi(model, {"yh2"}, {"y2"}, {"x1c", "x1p", "x2c", "y1"});
    }
    if (receiver == 2) {
        return gaussian_mi(model, {"yh1"}, {"y1"}, {"x2c", "x2p", "x1c", "y2"});
    }
    throw std::invalid_argument("receiver must be 1 or 2");
}

ConstraintSet quantize_bin_constraints(const ChannelGains& gains, double cb12,
                                       double cb21, const PowerSplit& split1,
                                       const PowerSplit& split2,
                                       const QuantizerConfig& quant) {
    if (cb12 < 0.0 || cb21 < 0.0) {
        throw std::invalid_argument("conference capacities must be >= 0");
    }
    quant.validate();
    const CovarianceModel model =
        build_covariance(gains, split1, split2, quant.delta1, quant.delta2);

    const double xi1 =
        gaussian_mi(model, {"yh2"}, {"y2"}, {"x1c", "x1p", "x2c", "y1"});
    const double xi2 =
        gaussian_mi(model, {"yh1"}, {"y1"}, {"x2c", "x2p", "x1c", "y2"});

    struct Row {
        std::array<int, 4> coeffs;
        std::vector<std::string> a;
        std::vector<std::string> c;
        std::string name;
    };
    // A-sets already exclude anything that appears in the conditioning.
    const std::vector<Row> rx1 = {
        {{0, 0, 1, 0}, {"x1p"}, {"x1c", "x2c"}, "R1p"},
        {{0, 1, 1, 0}, {"x2c", "x1p"}, {"x1c"}, "R2c+R1p"},
        {{1, 0, 1, 0}, {"x1c", "x1p"}, {"x2c"}, "R1c+R1p"},
        {{1, 1, 1, 0}, {"x1c", "x1p", "x2c"}, {}, "R1c+R2c+R1p"},
    };
    const std::vector<Row> rx2 = {
        {{0, 0, 0, 1}, {"x2p"}, {"x2c", "x1c"}, "R2p"},
        {{1, 0, 0, 1}, {"x1c", "x2p"}, {"x2c"}, "R1c+R2p"},
        {{0, 1, 0, 1}, {"x2c", "x2p"}, {"x1c"}, "R2c+R2p"},
        {{1, 1, 0, 1}, {"x2c", "x2p", "x1c"}, {}, "R1c+R2c+R2p"},
    };

    ConstraintSet out;
    out.reserve(16);
    auto emit = [&](const Row& row, const std::string& y,
                    const std::string& yh, double conf_bits,
                    const char* side) {
        const double bin =
            gaussian_mi(model, row.a, {y}, row.c) + conf_bits;
        const double quantized = gaussian_mi(model, row.a, {y, yh}, row.c);
        out.push_back({row.coeffs, pos(bin), side + (":bin:" + row.name)});
        out.push_back(
            {row.coeffs, pos(quantized), side + (":quant:" + row.name)});
    };
    for (const Row& row : rx1) emit(row, "y1", "yh2", pos(cb21 - xi1), "rx1");
    for (const Row& row : rx2) emit(row, "y2", "yh1", pos(cb12 - xi2), "rx2");
    return out;
}

double max_symmetric_rate(const ConstraintSet& constraints) {
    // Symmetric substitution R1c = R2c = Rc, R1p = R2p = Rp collapses each
    // constraint to a*Rc + b*Rp <= bound with small integer a, b.
    struct Line {
        double a, b, bound;
    };
    std::vector<Line> lines;
    lines.reserve(constraints.size());
    for (const auto& c : constraints) {
        const double a = c.coeffs[0] + c.coeffs[1];
        const double b = c.coeffs[2] + c.coeffs[3];
        if (c.bound < 0.0 && a == 0.0 && b == 0.0) return 0.0;
        lines.push_back({a, b, std::max(0.0, c.bound)});
    }
    if (lines.empty()) return 0.0;

    constexpr double kFeasTol = 1e-9;
    auto feasible = [&](double rc, double rp) {
        if (rc < -kFeasTol || rp < -kFeasTol) return false;
        for (const auto& l : lines) {
            if (l.a * rc + l.b * rp > l.bound + kFeasTol) return false;
        }
        return true;
    };

    double best = 0.0;
    auto consider = [&](double rc, double rp) {
        if (feasible(rc, rp)) best = std::max(best, rc + rp);
    };

    consider(0.0, 0.0);
    // Axis intersections.
    for (const auto& l : lines) {
        if (l.a != 0.0) consider(l.bound / l.a, 0.0);
        if (l.b != 0.0) consider(0.0, l.bound / l.b);
    }
    // Pairwise intersections.
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const double det =
                lines[i].a * lines[j].b - lines[j].a * lines[i].b;
            if (std::abs(det) < 1e-12) continue;
            const double rc =
                (lines[i].bound * lines[j].b - lines[j].bound * lines[i].b) /
                det;
            const double rp =
                (lines[i].a * lines[j].bound - lines[j].a * lines[i].bound) /
                det;
            consider(rc, rp);
        }
    }
    return best;
}

RateBreakdown achievable_sym_rate(const ChannelGains& gains, double cb) {
    const auto [snr, inr] = symmetric_magnitudes(gains);
    if (!(cb >= 0.0)) throw std::invalid_argument("cb must be >= 0");
    const double det_sq = gains.det_sq();
    const double mimo = std::log2(1.0 + 2.0 * snr + 2.0 * inr + det_sq);

    if (snr <= inr) {
        const double conf = pos(cb - 1.0);
        return min_of_terms({
            {"direct_conf", std::log2(1.0 + snr) + conf},
            {"compound_sum", std::log2(1.0 + snr + inr) - 1.0},
            {"half_sum_conf", 0.5 * (std::log2(1.0 + snr + inr) + conf)},
            {"mimo_coop", 0.5 * (mimo - 1.0)},
        });
    }
    const double conf = pos(cb - std::log2(3.0));
    return min_of_terms({
        {"direct_conf", std::log2(1.0 + snr / inr + inr) + conf - 1.0},
        {"compound_sum", std::log2(1.0 + snr) - 2.0},
        {"half_sum_conf", 0.5 * (std::log2(1.0 + snr + inr) +
                                 std::log2(2.0 + snr / inr) + conf - 2.0)},
        {"mimo_coop", 0.5 * (mimo - 3.0)},
    });
}

RateBreakdown outer_bound_sym(const ChannelGains& gains, double cb) {
    const auto [snr, inr] = symmetric_magnitudes(gains);
    if (!(cb >= 0.0)) throw std::invalid_argument("cb must be >= 0");
    const double det_sq = gains.det_sq();
    return min_of_terms({
        {"cutset_conf",
         std::log2(1.0 + snr) +
             std::min(cb, std::log2(1.0 + inr / (1.0 + snr)))},
        {"z_channel_conf",
         std::log2(1.0 + inr + snr / (1.0 + inr)) + cb},
        {"half_sum_conf",
         0.5 * std::log2(1.0 + snr + inr) +
             0.5 * std::log2(1.0 + snr / (1.0 + inr)) + 0.5 * cb},
        {"mimo_coop", 0.5 * std::log2(1.0 + 2.0 * snr + 2.0 * inr + det_sq)},
    });
}

double sym_rate_gap(const ChannelGains& gains, double cb) {
    return outer_bound_sym(gains, cb).value -
           achievable_sym_rate(gains, cb).value;
}

}  // namespace rxcoop
