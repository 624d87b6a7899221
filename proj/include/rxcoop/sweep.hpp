#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rxcoop {

/// Grid for rate/gap sweeps. All dB values must be > 0 so SNR, INR > 1.
struct SweepSpec {
    std::vector<double> snr_db;
    std::vector<double> inr_db;
    std::vector<double> cb;
    int phase_samples = 16;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One evaluated grid point.
struct RunRecord {
    double snr_db = 0.0;
    double inr_db = 0.0;
    double cb = 0.0;
    std::array<double, 4> phases{};
    double det_sq = 0.0;
    double r_sym = 0.0;
    std::string r_binding;
    double c_ub = 0.0;
    std::string c_binding;
    double gap = 0.0;
};

/// Phase tuples for one grid point: phase_samples i.i.d. uniform draws from
/// split_seed(seed, point_index), then two deterministic extremes
/// (all-aligned and cross-gain anti-aligned) so the determinant-term
/// extremes are always covered.
std::vector<std::array<double, 4>> sweep_phase_tuples(int phase_samples,
                                                      std::uint64_t seed,
                                                      std::uint64_t point_index);

/// Evaluates one point. corrupt_bias is a test hook added to the achievable
/// rate (0 in normal operation).
RunRecord evaluate_point(double snr_db, double inr_db, double cb,
                         const std::array<double, 4>& phases,
                         double corrupt_bias = 0.0);

/// Evaluates the full grid (rows ordered by grid index: snr, inr, cb, phase
/// tuple) in parallel with a deterministic result.
std::vector<RunRecord> run_sweep(const SweepSpec& spec,
                                 double corrupt_bias = 0.0);

struct GapSummary {
    std::size_t points = 0;
    double max_gap = 0.0;
    double min_gap = 0.0;
    RunRecord argmax;
    RunRecord argmin;
    bool pass = false;  // max_gap <= 3 + 1e-6 and min_gap >= -1e-6
};

GapSummary summarize_gap(const std::vector<RunRecord>& records);

/// CSV row/writer helpers. Header is fixed; every value is validated to be
/// finite before emission (non-finite values throw std::runtime_error).
std::string run_record_csv_header();
std::string run_record_csv_row(const RunRecord& record);

/// Index-parallel map: out[i] = fn(i) for i in [0, n), computed on up to
/// `threads` workers (0 = hardware concurrency). Deterministic because each
/// slot depends only on its index.
void parallel_index_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                        unsigned threads = 0);

}  // namespace rxcoop
