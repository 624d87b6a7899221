#include "rxcoop/gdof.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <utility>

#include "rxcoop/channel.hpp"
#include "rxcoop/rates.hpp"
#include "rxcoop/rng.hpp"

namespace rxcoop {

namespace {

void check_exponents(double alpha, double kappa) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("alpha must be finite and >= 0");
    }
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("kappa must be finite and >= 0");
    }
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

GdofPoint gdof_formula(double alpha, double kappa) {
    check_exponents(alpha, kappa);
    GdofPoint p;
    p.alpha = alpha;
    p.kappa = kappa;
    p.phase_caveat = (alpha == 1.0);

    auto pick = [&](std::initializer_list<std::pair<const char*, double>> branches) {
        p.d = std::numeric_limits<double>::infinity();
        for (const auto& [name, value] : branches) {
            if (value < p.d) {
                p.d = value;
                p.binding = name;
            }
        }
    };
    if (alpha < 1.0) {
        pick({{"cap_one", 1.0},
              {"max_split_plus_kappa", std::max(alpha, 1.0 - alpha) + kappa},
              {"one_minus_half_excess", 1.0 - (alpha - kappa) / 2.0}});
    } else {
        pick({{"cap_alpha", alpha},
              {"one_plus_kappa", 1.0 + kappa},
              {"half_sum", (alpha + kappa) / 2.0}});
    }
    return p;
}

double kappa_star(double alpha) {
    check_exponents(alpha, 0.0);
    if (alpha < 1.0) {
        // d saturates at 1: the kappa-dependent branches reach 1 at
        // kappa = min(alpha, 1-alpha) and kappa = alpha respectively; both
        // must have saturated.
        return std::max(std::min(alpha, 1.0 - alpha), alpha);
    }
    // d saturates at alpha: branches reach it at kappa = alpha - 1 and
    // kappa = alpha.
    return std::max(alpha - 1.0, alpha);
}

GdofCurve gdof_curve(double alpha, const std::vector<double>& kappa_grid) {
    if (!std::is_sorted(kappa_grid.begin(), kappa_grid.end())) {
        throw std::invalid_argument("kappa grid must be sorted ascending");
    }
    GdofCurve curve;
    curve.alpha = alpha;
    curve.kappa_star = kappa_star(alpha);
    curve.points.reserve(kappa_grid.size());
    for (double k : kappa_grid) curve.points.push_back(gdof_formula(alpha, k));
    return curve;
}

std::vector<GdofNumericPoint> gdof_numeric(double alpha, double kappa,
                                           const std::vector<double>& snr_db_list,
                                           int phase_samples,
                                           std::uint64_t seed) {
    check_exponents(alpha, kappa);
    if (phase_samples < 1) {
        throw std::invalid_argument("phase_samples must be >= 1");
    }
    std::vector<GdofNumericPoint> out;
    out.reserve(snr_db_list.size());
    for (std::size_t i = 0; i < snr_db_list.size(); ++i) {
        const double snr_db = snr_db_list[i];
        if (!(snr_db > 0.0) || snr_db > 120.0) {
            throw std::invalid_argument("snr_db must lie in (0, 120]");
        }
        const double snr = db_to_linear(snr_db);
        // alpha = 0 maps to INR = 1, just outside the snr,inr > 1 domain of
        // the rate formulas; nudge it inside. The effect on the normalized
        // rates is far below the tolerances used anywhere.
        const double inr = std::max(std::pow(snr, alpha), 1.0 + 1e-9);
        const double log2_snr = std::log2(snr);
        const double cb = kappa * log2_snr;
        SymmetricParams params{snr, inr, cb};

        Rng rng(split_seed(seed, i));
        std::vector<double> lo, hi;
        lo.reserve(phase_samples);
        hi.reserve(phase_samples);
        for (int s = 0; s < phase_samples; ++s) {
            const ChannelGains gains =
                gains_from_symmetric(params, rng.phase_tuple());
            lo.push_back(achievable_sym_rate(gains, cb).value / log2_snr);
            hi.push_back(outer_bound_sym(gains, cb).value / log2_snr);
        }
        out.push_back({snr_db, median(std::move(lo)), median(std::move(hi))});
    }
    return out;
}

}  // namespace rxcoop
