#include "rxcoop/ldc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rxcoop/gdof.hpp"
#include "rxcoop/rng.hpp"

namespace rxcoop {

namespace {

// Packed GF(2) conventions: level masks are uint32 with bit p = level p
// (0 = most significant / top); message functionals are uint64 over the
// r1 + r2 message coordinates (user 1 in the low bits); observation
// selectors are uint64 over [y_i levels ; conference bits].

int parity64(std::uint64_t x) { return std::popcount(x) & 1; }

int top_bit(std::uint64_t x) { return std::bit_width(x) - 1; }

/// XOR basis with one slot per pivot position (the row's highest set bit).
/// Inserting reduces by existing pivots until the row dies or lands in an
/// empty slot, so membership and rank queries are exact. Each slot also
/// tracks which original rows were combined (the selector), which is what
/// the decoders read.
struct Gf2Basis {
    std::array<std::uint64_t, 64> func{};
    std::array<std::uint64_t, 64> sel{};
    int rank = 0;

    void insert(std::uint64_t row, std::uint64_t selector) {
        while (row) {
            const int p = top_bit(row);
            if (!func[static_cast<std::size_t>(p)]) {
                func[static_cast<std::size_t>(p)] = row;
                sel[static_cast<std::size_t>(p)] = selector;
                ++rank;
                return;
            }
            row ^= func[static_cast<std::size_t>(p)];
            selector ^= sel[static_cast<std::size_t>(p)];
        }
    }

    /// Selector expressing `target` over the inserted rows, if it lies in
    /// their span.
    std::pair<std::uint64_t, bool> express(std::uint64_t target) const {
        std::uint64_t selector = 0;
        while (target) {
            const int p = top_bit(target);
            if (!func[static_cast<std::size_t>(p)]) return {0, false};
            target ^= func[static_cast<std::size_t>(p)];
            selector ^= sel[static_cast<std::size_t>(p)];
        }
        return {selector, true};
    }
};

int rank64(const std::vector<std::uint64_t>& rows) {
    Gf2Basis basis;
    for (std::uint64_t row : rows) basis.insert(row, 0);
    return basis.rank;
}

/// m_own identifiable from the rows iff rank(M) = |own coords| + rank(M
/// restricted to the other coords).
bool identifiable(const std::vector<std::uint64_t>& rows, int own_count,
                  std::uint64_t other_mask) {
    std::vector<std::uint64_t> restricted(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        restricted[i] = rows[i] & other_mask;
    }
    return rank64(rows) == own_count + rank64(restricted);
}

/// Solves the linear system "functional(m) = observed bit" with free
/// coordinates fixed to zero. For identifiable messages the solution's own
/// part always matches the transmitted message; otherwise this is a
/// deterministic canonical-representative decoder.
struct LinearDecoder {
    Gf2Basis basis;

    static LinearDecoder build(const std::vector<std::uint64_t>& rows) {
        LinearDecoder d;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            d.basis.insert(rows[i], std::uint64_t{1} << i);
        }
        return d;
    }

    std::uint64_t decode(std::uint64_t obs_bits) const {
        // Pivot p's functional has only lower bits besides p, so filling m
        // from the lowest pivot upward resolves each equation directly.
        std::uint64_t m = 0;
        for (int p = 0; p < 64; ++p) {
            const std::uint64_t f = basis.func[static_cast<std::size_t>(p)];
            if (!f) continue;
            const int rhs = parity64(basis.sel[static_cast<std::size_t>(p)] &
                                     obs_bits);
            const int known =
                parity64((f ^ (std::uint64_t{1} << p)) & m);
            if (rhs ^ known) m |= std::uint64_t{1} << p;
        }
        return m;
    }

    std::pair<std::uint64_t, bool> express(std::uint64_t target) const {
        return basis.express(target);
    }
};

std::uint32_t pack_levels(const BitVec& v) {
    std::uint32_t mask = 0;
    for (std::size_t p = 0; p < v.size(); ++p) {
        if (v[p]) mask |= std::uint32_t{1} << p;
    }
    return mask;
}

BitVec unpack_levels(std::uint32_t mask, int len) {
    BitVec v(static_cast<std::size_t>(len), 0);
    for (int p = 0; p < len; ++p) {
        v[static_cast<std::size_t>(p)] = (mask >> p) & 1u;
    }
    return v;
}

std::uint32_t shift_down(std::uint32_t x, int s, std::uint32_t qmask) {
    if (s >= 32) return 0;
    return (x << s) & qmask;
}

/// Per-level functionals of both transmit vectors over the stacked message.
struct EncoderRows {
    std::vector<std::uint64_t> x1, x2;  // size q each
};

EncoderRows encoder_rows(const LdcScheme& scheme, int q) {
    EncoderRows enc;
    enc.x1.assign(static_cast<std::size_t>(q), 0);
    enc.x2.assign(static_cast<std::size_t>(q), 0);
    for (int p = 0; p < q; ++p) {
        std::uint64_t f1 = 0, f2 = 0;
        for (int j = 0; j < scheme.r1; ++j) {
            if (scheme.g1[p][static_cast<std::size_t>(j)]) {
                f1 |= std::uint64_t{1} << j;
            }
        }
        for (int j = 0; j < scheme.r2; ++j) {
            if (scheme.g2[p][static_cast<std::size_t>(j)]) {
                f2 |= std::uint64_t{1} << (scheme.r1 + j);
            }
        }
        enc.x1[static_cast<std::size_t>(p)] = f1;
        enc.x2[static_cast<std::size_t>(p)] = f2;
    }
    return enc;
}

/// Functionals of the q received levels of receiver `rx` over the message.
std::vector<std::uint64_t> received_rows(const EncoderRows& enc,
                                         const LdcConfig& config, int rx) {
    const int q = config.q();
    const int s_own = q - (rx == 1 ? config.n11 : config.n22);
    const int s_cross = q - (rx == 1 ? config.n12 : config.n21);
    const auto& own = (rx == 1) ? enc.x1 : enc.x2;
    const auto& cross = (rx == 1) ? enc.x2 : enc.x1;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(q), 0);
    for (int p = 0; p < q; ++p) {
        std::uint64_t f = 0;
        if (p >= s_own) f ^= own[static_cast<std::size_t>(p - s_own)];
        if (p >= s_cross) f ^= cross[static_cast<std::size_t>(p - s_cross)];
        rows[static_cast<std::size_t>(p)] = f;
    }
    return rows;
}

std::vector<std::uint64_t> conference_rows(
    const std::vector<BitVec>& fmap, const std::vector<std::uint64_t>& y_rows) {
    std::vector<std::uint64_t> rows;
    rows.reserve(fmap.size());
    for (const BitVec& frow : fmap) {
        std::uint64_t f = 0;
        for (std::size_t p = 0; p < frow.size(); ++p) {
            if (frow[p]) f ^= y_rows[p];
        }
        rows.push_back(f);
    }
    return rows;
}

struct ObsRows {
    std::vector<std::uint64_t> rx1, rx2;
};

ObsRows observation_rows(const LdcScheme& scheme, const LdcConfig& config) {
    const EncoderRows enc = encoder_rows(scheme, config.q());
    ObsRows obs;
    obs.rx1 = received_rows(enc, config, 1);
    obs.rx2 = received_rows(enc, config, 2);
    const auto conf21 = conference_rows(scheme.f21, obs.rx2);
    const auto conf12 = conference_rows(scheme.f12, obs.rx1);
    obs.rx1.insert(obs.rx1.end(), conf21.begin(), conf21.end());
    obs.rx2.insert(obs.rx2.end(), conf12.begin(), conf12.end());
    return obs;
}

std::uint64_t low_mask64(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// One candidate encoder, represented by its column space. basis holds the
/// reduced basis (distinct top-level pivots, sorted top level first); the
/// generator matrix has basis vector j as column j, so coordinate subspaces
/// reproduce plain level activation with message bit j on the j-th active
/// level.
struct EncoderSpace {
    std::vector<std::uint32_t> basis;
    bool coordinate = false;
    std::uint32_t signature = 0;  // membership bitset over all 2^q vectors
};

std::vector<BitVec> generator_matrix(const EncoderSpace& space, int q) {
    const std::size_t r = space.basis.size();
    std::vector<BitVec> g(static_cast<std::size_t>(q), BitVec(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
        for (int p = 0; p < q; ++p) {
            if (space.basis[j] & (std::uint32_t{1} << p)) {
                g[static_cast<std::size_t>(p)][j] = 1;
            }
        }
    }
    return g;
}

/// All subspaces of GF(2)^q grouped by dimension. Within a dimension the
/// documented order is: coordinate subspaces first, by descending level
/// mask (bottom-heavy sets first), then the precoded (non-coordinate)
/// spaces by descending membership signature.
std::vector<std::vector<EncoderSpace>> encoder_spaces_by_dim(int q) {
    const std::uint32_t vectors = std::uint32_t{1} << q;

    // Breadth-first closure over spans, deduplicated by signature.
    std::vector<std::uint32_t> signatures{1u};  // {0}
    std::vector<bool> seen(std::size_t{1} << vectors, false);
    seen[1] = true;
    for (std::size_t head = 0; head < signatures.size(); ++head) {
        const std::uint32_t sig = signatures[head];
        for (std::uint32_t v = 1; v < vectors; ++v) {
            if (sig & (std::uint32_t{1} << v)) continue;
            std::uint32_t grown = 0;
            for (std::uint32_t u = 0; u < vectors; ++u) {
                if (sig & (std::uint32_t{1} << u)) {
                    grown |= std::uint32_t{1} << u;
                    grown |= std::uint32_t{1} << (u ^ v);
                }
            }
            if (!seen[grown]) {
                seen[grown] = true;
                signatures.push_back(grown);
            }
        }
    }

    std::vector<std::vector<EncoderSpace>> by_dim(
        static_cast<std::size_t>(q) + 1);
    for (std::uint32_t sig : signatures) {
        EncoderSpace space;
        space.signature = sig;
        Gf2Basis basis;
        std::uint32_t level_union = 0;
        for (std::uint32_t v = 1; v < vectors; ++v) {
            if (sig & (std::uint32_t{1} << v)) {
                basis.insert(v, 0);
                level_union |= v;
            }
        }
        // Reduced basis, sorted by pivot (= highest set bit) ascending;
        // coordinate subspaces come out as unit vectors, top level first.
        std::vector<std::uint32_t> rows;
        for (const std::uint64_t f : basis.func) {
            if (f) rows.push_back(static_cast<std::uint32_t>(f));
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if ((rows[i] >> top_bit(rows[j])) & 1u) rows[i] ^= rows[j];
            }
        }
        const int dim = static_cast<int>(rows.size());
        space.basis = std::move(rows);
        space.coordinate = (dim == std::popcount(level_union));
        by_dim[static_cast<std::size_t>(dim)].push_back(std::move(space));
    }

    for (auto& group : by_dim) {
        std::sort(group.begin(), group.end(),
                  [](const EncoderSpace& a, const EncoderSpace& b) {
                      if (a.coordinate != b.coordinate) return a.coordinate;
                      if (a.coordinate) {
                          std::uint32_t ua = 0, ub = 0;
                          for (auto v : a.basis) ua |= v;
                          for (auto v : b.basis) ub |= v;
                          return ua > ub;
                      }
                      return a.signature > b.signature;
                  });
    }
    return by_dim;
}

std::vector<BitVec> forwarding_from_code(std::uint64_t code, int k, int q) {
    std::vector<BitVec> f(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) {
        const auto row =
            static_cast<std::uint32_t>((code >> (t * q)) & low_mask64(q));
        f[static_cast<std::size_t>(t)] = unpack_levels(row, q);
    }
    return f;
}

void guard_search_space(const LdcConfig& config) {
    if (config.q() > 4 || config.k12 > 2 || config.k21 > 2) {
        const double pairs = std::ldexp(1.0, 2 * config.q());
        const double forwards =
            std::ldexp(1.0, (config.k12 + config.k21) * config.q());
        throw std::invalid_argument(
            "search space guard: requires q <= 4 and k12, k21 <= 2 (about " +
            std::to_string(pairs * forwards) + " candidate schemes here)");
    }
}

}  // namespace

int LdcConfig::q() const {
    return std::max({n11, n12, n21, n22, 1});
}

bool LdcConfig::symmetric() const {
    return n11 == n22 && n12 == n21 && k12 == k21;
}

void LdcConfig::validate() const {
    for (int n : {n11, n12, n21, n22}) {
        if (n < 0 || n > 32) {
            throw std::invalid_argument("level counts must lie in [0, 32]");
        }
    }
    for (int k : {k12, k21}) {
        if (k < 0 || k > 32) {
            throw std::invalid_argument(
                "conference bit counts must lie in [0, 32]");
        }
    }
}

void LdcScheme::validate(const LdcConfig& config) const {
    config.validate();
    const auto q = static_cast<std::size_t>(config.q());
    if (r1 < 0 || r2 < 0 || r1 + r2 > 64) {
        throw std::invalid_argument("invalid message sizes");
    }
    auto check_matrix = [](const std::vector<BitVec>& m, std::size_t rows,
                           std::size_t cols, const char* name) {
        if (m.size() != rows) {
            throw std::invalid_argument(std::string(name) +
                                        ": wrong row count");
        }
        for (const BitVec& row : m) {
            if (row.size() != cols) {
                throw std::invalid_argument(std::string(name) +
                                            ": wrong row length");
            }
            for (auto b : row) {
                if (b > 1) {
                    throw std::invalid_argument(std::string(name) +
                                                ": entries must be bits");
                }
            }
        }
    };
    check_matrix(g1, q, static_cast<std::size_t>(r1), "G1");
    check_matrix(g2, q, static_cast<std::size_t>(r2), "G2");
    check_matrix(f12, static_cast<std::size_t>(config.k12), q, "F12");
    check_matrix(f21, static_cast<std::size_t>(config.k21), q, "F21");
}

std::pair<BitVec, BitVec> ldc_output(const LdcConfig& config, const BitVec& x1,
                                     const BitVec& x2) {
    config.validate();
    const int q = config.q();
    if (static_cast<int>(x1.size()) != q || static_cast<int>(x2.size()) != q) {
        throw std::invalid_argument("inputs must have length q");
    }
    const std::uint32_t qmask =
        static_cast<std::uint32_t>(low_mask64(q));
    const std::uint32_t m1 = pack_levels(x1);
    const std::uint32_t m2 = pack_levels(x2);
    const std::uint32_t y1 = shift_down(m1, q - config.n11, qmask) ^
                             shift_down(m2, q - config.n12, qmask);
    const std::uint32_t y2 = shift_down(m1, q - config.n21, qmask) ^
                             shift_down(m2, q - config.n22, qmask);
    return {unpack_levels(y1, q), unpack_levels(y2, q)};
}

bool check_decodable(const LdcScheme& scheme, const LdcConfig& config) {
    scheme.validate(config);
    const ObsRows obs = observation_rows(scheme, config);
    const std::uint64_t m1_mask = low_mask64(scheme.r1);
    const std::uint64_t m2_mask = low_mask64(scheme.r1 + scheme.r2) & ~m1_mask;
    return identifiable(obs.rx1, scheme.r1, m2_mask) &&
           identifiable(obs.rx2, scheme.r2, m1_mask);
}

SimReport simulate(const LdcScheme& scheme, const LdcConfig& config,
                   long trials, std::uint64_t seed) {
    scheme.validate(config);
    if (trials < 0) throw std::invalid_argument("trials must be >= 0");
    const int q = config.q();
    const std::uint32_t qmask = static_cast<std::uint32_t>(low_mask64(q));
    const EncoderRows enc = encoder_rows(scheme, q);

    const ObsRows obs = observation_rows(scheme, config);
    const LinearDecoder dec1 = LinearDecoder::build(obs.rx1);
    const LinearDecoder dec2 = LinearDecoder::build(obs.rx2);

    std::vector<std::uint32_t> f21_masks, f12_masks;
    for (const BitVec& row : scheme.f21) f21_masks.push_back(pack_levels(row));
    for (const BitVec& row : scheme.f12) f12_masks.push_back(pack_levels(row));

    const std::uint64_t m1_mask = low_mask64(scheme.r1);
    const std::uint64_t m_all = low_mask64(scheme.r1 + scheme.r2);

    SimReport report;
    report.trials = trials;
    report.achieved_rates = {scheme.r1, scheme.r2};
    report.sum_rate = scheme.r1 + scheme.r2;

    Rng rng(seed);
    for (long t = 0; t < trials; ++t) {
        const std::uint64_t m = rng.next() & m_all;
        std::uint32_t x1 = 0, x2 = 0;
        for (int p = 0; p < q; ++p) {
            if (parity64(enc.x1[static_cast<std::size_t>(p)] & m)) {
                x1 |= std::uint32_t{1} << p;
            }
            if (parity64(enc.x2[static_cast<std::size_t>(p)] & m)) {
                x2 |= std::uint32_t{1} << p;
            }
        }
        const std::uint32_t y1 = shift_down(x1, q - config.n11, qmask) ^
                                 shift_down(x2, q - config.n12, qmask);
        const std::uint32_t y2 = shift_down(x1, q - config.n21, qmask) ^
                                 shift_down(x2, q - config.n22, qmask);

        std::uint64_t obs1 = y1, obs2 = y2;
        for (std::size_t tbit = 0; tbit < f21_masks.size(); ++tbit) {
            if (parity64(f21_masks[tbit] & y2)) {
                obs1 |= std::uint64_t{1} << (q + tbit);
            }
        }
        for (std::size_t tbit = 0; tbit < f12_masks.size(); ++tbit) {
            if (parity64(f12_masks[tbit] & y1)) {
                obs2 |= std::uint64_t{1} << (q + tbit);
            }
        }

        if ((dec1.decode(obs1) & m1_mask) != (m & m1_mask)) {
            ++report.decode_errors[0];
        }
        if ((dec2.decode(obs2) & ~m1_mask & m_all) != (m & ~m1_mask & m_all)) {
            ++report.decode_errors[1];
        }
    }
    return report;
}

LdcFormulaCapacity sym_capacity_formula(int n, int m, int k) {
    if (n < 1 || m < 0 || k < 0) {
        throw std::invalid_argument("requires n >= 1, m >= 0, k >= 0");
    }
    const GdofPoint p = gdof_formula(static_cast<double>(m) / n,
                                     static_cast<double>(k) / n);
    LdcFormulaCapacity cap;
    cap.per_user = n * p.d;
    cap.sum = 2.0 * n * p.d;
    cap.phase_caveat = (m == n);
    return cap;
}

namespace {

/// Shared search state for one encoder pair.
struct PairRows {
    LdcScheme scheme;  // f12/f21 left empty
    std::vector<std::uint64_t> y1, y2;
    std::uint64_t m1_mask = 0, m2_mask = 0;
};

PairRows make_pair_rows(const LdcConfig& config, const EncoderSpace& s1,
                        const EncoderSpace& s2) {
    PairRows pr;
    const int q = config.q();
    pr.scheme.r1 = static_cast<int>(s1.basis.size());
    pr.scheme.r2 = static_cast<int>(s2.basis.size());
    pr.scheme.g1 = generator_matrix(s1, q);
    pr.scheme.g2 = generator_matrix(s2, q);
    const EncoderRows enc = encoder_rows(pr.scheme, q);
    pr.y1 = received_rows(enc, config, 1);
    pr.y2 = received_rows(enc, config, 2);
    pr.m1_mask = low_mask64(pr.scheme.r1);
    pr.m2_mask = low_mask64(pr.scheme.r1 + pr.scheme.r2) & ~pr.m1_mask;
    return pr;
}

/// First forwarding code (ascending integer) whose conference rows make the
/// receiver's own message identifiable; returns (code, found).
std::pair<std::uint64_t, bool> first_forwarding(
    const std::vector<std::uint64_t>& y_rows_rx,
    const std::vector<std::uint64_t>& y_rows_peer, int k, int q, int own_count,
    std::uint64_t other_mask) {
    const std::uint64_t total = std::uint64_t{1} << (k * q);
    std::vector<std::uint64_t> rows(y_rows_rx.size() + k);
    std::copy(y_rows_rx.begin(), y_rows_rx.end(), rows.begin());
    for (std::uint64_t code = 0; code < total; ++code) {
        for (int t = 0; t < k; ++t) {
            const auto row_mask = (code >> (t * q)) & low_mask64(q);
            std::uint64_t f = 0;
            for (int p = 0; p < q; ++p) {
                if (row_mask & (std::uint64_t{1} << p)) {
                    f ^= y_rows_peer[static_cast<std::size_t>(p)];
                }
            }
            rows[y_rows_rx.size() + static_cast<std::size_t>(t)] = f;
        }
        if (identifiable(rows, own_count, other_mask)) return {code, true};
    }
    return {0, false};
}

/// (r1, r2) pairs of a given total, most balanced first, r1 >= r2 before the
/// mirrored pair.
std::vector<std::pair<int, int>> rate_pairs(int sum, int max_r1, int max_r2) {
    std::vector<std::pair<int, int>> pairs;
    for (int hi = (sum + 1) / 2; hi <= sum; ++hi) {
        const int lo = sum - hi;
        if (hi <= max_r1 && lo <= max_r2) pairs.emplace_back(hi, lo);
        if (hi != lo && lo <= max_r1 && hi <= max_r2) pairs.emplace_back(lo, hi);
    }
    return pairs;
}

}  // namespace

SearchResult brute_force_search(const LdcConfig& config, int max_r1,
                                int max_r2) {
    config.validate();
    guard_search_space(config);
    const int q = config.q();
    max_r1 = std::clamp(max_r1, 0, q);
    max_r2 = std::clamp(max_r2, 0, q);
    const auto by_dim = encoder_spaces_by_dim(q);

    SearchResult result;
    int best_min = -1;
    for (int sum = max_r1 + max_r2; sum >= 0; --sum) {
        // Lower totals cannot improve either objective once these hold.
        if (result.found && config.symmetric()) break;
        if (result.found && sum / 2 <= best_min) break;
        for (const auto& [r1, r2] : rate_pairs(sum, max_r1, max_r2)) {
            for (const EncoderSpace& s1 : by_dim[static_cast<std::size_t>(r1)]) {
                for (const EncoderSpace& s2 :
                     by_dim[static_cast<std::size_t>(r2)]) {
                    PairRows pr = make_pair_rows(config, s1, s2);
                    const auto [code21, ok1] =
                        first_forwarding(pr.y1, pr.y2, config.k21, q,
                                         pr.scheme.r1, pr.m2_mask);
                    if (!ok1) continue;
                    const auto [code12, ok2] =
                        first_forwarding(pr.y2, pr.y1, config.k12, q,
                                         pr.scheme.r2, pr.m1_mask);
                    if (!ok2) continue;

                    if (!result.found) {
                        result.found = true;
                        result.best_sum = sum;
                        pr.scheme.f21 =
                            forwarding_from_code(code21, config.k21, q);
                        pr.scheme.f12 =
                            forwarding_from_code(code12, config.k12, q);
                        result.witness = pr.scheme;
                        result.witness_rates = {r1, r2};
                    }
                    best_min = std::max(best_min, std::min(r1, r2));
                }
            }
        }
    }
    if (!result.found) {
        result.best_sum = 0;
        result.best_sym = 0.0;
        return result;
    }
    result.best_sym = config.symmetric() ? result.best_sum / 2.0
                                         : static_cast<double>(best_min);
    return result;
}

ScenarioResult scenario_compare(const LdcConfig& config, ScenarioMode mode,
                                int r2_min) {
    config.validate();
    guard_search_space(config);
    const int q = config.q();
    r2_min = std::clamp(r2_min, 0, q);
    const auto by_dim = encoder_spaces_by_dim(q);

    // Levels of y2 at/above user 2's private signal. User 2's bits below its
    // top n12 are private (unheard by receiver 1); they occupy the bottom
    // n22 - n12 received levels, so positions 0 .. q - n22 + n12 - 1 survive
    // quantization at the private signal level.
    const int usable =
        std::clamp(q - config.n22 + std::min(config.n12, config.n22), 0, q);

    for (int r1 = q; r1 >= 0; --r1) {
        for (const EncoderSpace& s1 : by_dim[static_cast<std::size_t>(r1)]) {
            for (int r2 = q; r2 >= r2_min; --r2) {
                for (const EncoderSpace& s2 :
                     by_dim[static_cast<std::size_t>(r2)]) {
                    PairRows pr = make_pair_rows(config, s1, s2);

                    // Receiver 2 keeps its ordinary observation
                    // [y2 ; F12 y1] with unrestricted F12.
                    const auto [code12, ok2] =
                        first_forwarding(pr.y2, pr.y1, config.k12, q,
                                         pr.scheme.r2, pr.m1_mask);
                    if (!ok2) continue;

                    // Receiver 2 -> 1 forwarding restricted by mode.
                    std::vector<std::uint64_t> rows(pr.y1);
                    rows.resize(pr.y1.size() +
                                static_cast<std::size_t>(config.k21));
                    bool ok1 = false;
                    std::vector<BitVec> f21;

                    if (mode == ScenarioMode::one_round_quantize) {
                        const std::uint64_t total = std::uint64_t{1}
                                                    << (config.k21 * usable);
                        for (std::uint64_t code = 0; code < total && !ok1;
                             ++code) {
                            for (int t = 0; t < config.k21; ++t) {
                                const auto row_mask =
                                    (code >> (t * usable)) & low_mask64(usable);
                                std::uint64_t f = 0;
                                for (int p = 0; p < usable; ++p) {
                                    if (row_mask & (std::uint64_t{1} << p)) {
                                        f ^= pr.y2[static_cast<std::size_t>(p)];
                                    }
                                }
                                rows[pr.y1.size() +
                                     static_cast<std::size_t>(t)] = f;
                            }
                            if (identifiable(rows, pr.scheme.r1, pr.m2_mask)) {
                                ok1 = true;
                                f21 = forwarding_from_code(code, config.k21,
                                                           usable);
                                for (BitVec& row : f21) {
                                    row.resize(static_cast<std::size_t>(q), 0);
                                }
                            }
                        }
                    } else {
                        // Bits receiver 2 can decode error-free from y2
                        // alone; forwarded bits are combinations of those.
                        const LinearDecoder solver = LinearDecoder::build(pr.y2);
                        std::vector<std::uint64_t> decodable;
                        for (int c = 0; c < pr.scheme.r1 + pr.scheme.r2; ++c) {
                            const std::uint64_t e = std::uint64_t{1} << c;
                            if (solver.express(e).second) decodable.push_back(e);
                        }
                        const int nd = static_cast<int>(decodable.size());
                        const std::uint64_t total = std::uint64_t{1}
                                                    << (config.k21 * nd);
                        for (std::uint64_t code = 0; code < total && !ok1;
                             ++code) {
                            for (int t = 0; t < config.k21; ++t) {
                                const auto pick =
                                    (code >> (t * nd)) & low_mask64(nd);
                                std::uint64_t f = 0;
                                for (int c = 0; c < nd; ++c) {
                                    if (pick & (std::uint64_t{1} << c)) {
                                        f ^= decodable[static_cast<std::size_t>(c)];
                                    }
                                }
                                rows[pr.y1.size() +
                                     static_cast<std::size_t>(t)] = f;
                            }
                            if (identifiable(rows, pr.scheme.r1, pr.m2_mask)) {
                                ok1 = true;
                                // Express each forwarded functional back over
                                // raw y2 levels so the witness is a runnable
                                // scheme.
                                f21.clear();
                                for (int t = 0; t < config.k21; ++t) {
                                    const auto [sel, ok] = solver.express(
                                        rows[pr.y1.size() +
                                             static_cast<std::size_t>(t)]);
                                    (void)ok;  // in row space by construction
                                    f21.push_back(unpack_levels(
                                        static_cast<std::uint32_t>(sel), q));
                                }
                            }
                        }
                    }
                    if (!ok1) continue;

                    ScenarioResult out;
                    out.max_r1 = r1;
                    pr.scheme.f21 = std::move(f21);
                    pr.scheme.f12 = forwarding_from_code(code12, config.k12, q);
                    out.witness = pr.scheme;
                    out.witness_rates = {r1, r2};
                    return out;
                }
            }
        }
    }
    return {};  // r1 = 0 always succeeds, so this is unreachable
}

}  // namespace rxcoop
