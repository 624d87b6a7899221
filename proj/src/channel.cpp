#include "rxcoop/channel.hpp"

#include <stdexcept>

namespace rxcoop {

namespace {

bool finite(const ComplexGain& g) {
    return std::isfinite(g.real()) && std::isfinite(g.imag());
}

}  // namespace

void ChannelGains::validate() const {
    if (!finite(h11) || !finite(h12) || !finite(h21) || !finite(h22)) {
        throw std::invalid_argument("channel gains must be finite");
    }
    if (snr1() <= 0.0 || snr2() <= 0.0 || inr1() <= 0.0 || inr2() <= 0.0) {
        throw std::invalid_argument("all received powers must be > 0");
    }
}

void SymmetricParams::validate() const {
    if (!(snr > 1.0) || !std::isfinite(snr)) {
        throw std::invalid_argument("snr must be finite and > 1");
    }
    if (!(inr > 1.0) || !std::isfinite(inr)) {
        throw std::invalid_argument("inr must be finite and > 1");
    }
    if (!(cb >= 0.0) || !std::isfinite(cb)) {
        throw std::invalid_argument("cb must be finite and >= 0");
    }
}

ChannelGains gains_from_symmetric(const SymmetricParams& params,
                                  const std::array<double, 4>& phases) {
    params.validate();
    for (double p : phases) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("phases must be finite");
        }
    }
    const double a_direct = std::sqrt(params.snr);
    const double a_cross = std::sqrt(params.inr);
    ChannelGains g{
        std::polar(a_direct, phases[0]),
        std::polar(a_cross, phases[1]),
        std::polar(a_cross, phases[2]),
        std::polar(a_direct, phases[3]),
    };
    g.validate();
    return g;
}

}  // namespace rxcoop
