#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rxcoop {

/// Linear deterministic channel with receiver conferencing: n_ij is the
/// number of bit levels of the link from transmitter j seen at receiver i,
/// k12/k21 are the conference bits per channel use (receiver 1 -> 2 and
/// 2 -> 1). The signal space has q = max(n) levels.
struct LdcConfig {
    int n11 = 0, n12 = 0, n21 = 0, n22 = 0;
    int k12 = 0, k21 = 0;

    int q() const;
    bool symmetric() const;
    void validate() const;  // nonnegative, every level count <= 32
};

/// GF(2) vector, most-significant level first. Length q for channel signals,
/// k for conference messages.
using BitVec = std::vector<std::uint8_t>;

/// A linear cooperation scheme. g1/g2 map message bits to transmit levels
/// (q rows of r1/r2 bits each), f12/f21 map a receiver's raw received vector
/// to its outgoing conference bits (k rows of q bits). Decoders are not
/// stored: each receiver solves the linear system from [y_i ; incoming
/// conference bits], which determines its message iff check_decodable holds.
struct LdcScheme {
    int r1 = 0, r2 = 0;
    std::vector<BitVec> g1, g2;
    std::vector<BitVec> f12, f21;

    void validate(const LdcConfig& config) const;
};

/// Shift-and-XOR channel law: y_i = shift_down(x_1, q - n_i1) ^
/// shift_down(x_2, q - n_i2), where shift_down discards the lowest bits and
/// pads the top with zeros. Inputs must have length q.
std::pair<BitVec, BitVec> ldc_output(const LdcConfig& config, const BitVec& x1,
                                     const BitVec& x2);

/// True iff each receiver's observation [y_i ; incoming conference bits]
/// determines its own message uniquely, i.e. no two message pairs differing
/// in m_i are confusable (rank condition over GF(2)).
bool check_decodable(const LdcScheme& scheme, const LdcConfig& config);

struct SimReport {
    long trials = 0;
    std::array<long, 2> decode_errors{0, 0};
    std::array<int, 2> achieved_rates{0, 0};
    int sum_rate = 0;
};

/// Draws uniform messages, runs the channel, applies the forwarding maps to
/// the same block's received vectors and decodes by linear elimination
/// (free coordinates fixed to zero, so decodable schemes never err).
SimReport simulate(const LdcScheme& scheme, const LdcConfig& config,
                   long trials, std::uint64_t seed);

struct SearchResult {
    int best_sum = -1;
    double best_sym = 0.0;
    bool found = false;
    LdcScheme witness;
    std::array<int, 2> witness_rates{0, 0};
};

/// Exhaustive search over one-shot linear encoders and all GF(2) forwarding
/// matrices, keeping schemes that pass check_decodable. An encoder is
/// enumerated per column space (injective precoding; generator = reduced
/// basis), which covers plain level activation and precoded schemes such as
/// bit repetition — the latter are needed to reach capacity at some k = 0
/// points. Guarded to q <= 4 and k12, k21 <= 2.
///
/// Enumeration order (fixes the witness deterministically): total rate
/// descending; within a total, |r1 - r2| ascending with r1 >= r2 first;
/// encoder spaces with coordinate (level-activation) spaces first by
/// descending level mask, then precoded spaces by descending membership
/// signature; forwarding matrices by ascending integer encoding. The witness
/// is the first scheme found at the best total rate.
///
/// best_sym is the symmetric rate: for symmetric configs best_sum / 2
/// (achievable by time-sharing a scheme with its mirror, and no (R, R)
/// point can beat half the best sum); for asymmetric configs the best
/// single-scheme min(r1, r2).
SearchResult brute_force_search(const LdcConfig& config, int max_r1,
                                int max_r2);

struct LdcFormulaCapacity {
    double per_user = 0.0;
    double sum = 0.0;
    bool phase_caveat = false;  // set when m == n (alpha = 1)
};

/// Symmetric capacity of the LDC with direct links n, cross links m and k
/// conference bits per direction: n * d(m/n, k/n).
LdcFormulaCapacity sym_capacity_formula(int n, int m, int k);

enum class ScenarioMode {
    /// Receiver 2 may forward only linear combinations of its received
    /// levels at/above its private-signal level (what survives quantization
    /// at that distortion).
    one_round_quantize,
    /// Receiver 2 may forward any linear combination of bits (its own or
    /// interference) it can first decode error-free from y2 alone.
    decode_forward,
};

struct ScenarioResult {
    int max_r1 = 0;
    LdcScheme witness;
    std::array<int, 2> witness_rates{0, 0};
};

/// Best R1 over level-activation schemes where both receivers decode their
/// own messages, receiver 2's forwarding is restricted by `mode`, and user 2
/// keeps rate >= r2_min. Same search-space guard as brute_force_search.
ScenarioResult scenario_compare(const LdcConfig& config, ScenarioMode mode,
                                int r2_min = 0);

}  // namespace rxcoop
