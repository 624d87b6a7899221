#include "rxcoop/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rxcoop/channel.hpp"
#include "rxcoop/rates.hpp"
#include "rxcoop/rng.hpp"

namespace rxcoop {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        throw std::runtime_error("refusing to emit non-finite value");
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void SweepSpec::validate() const {
    if (snr_db.empty() || inr_db.empty() || cb.empty()) {
        throw std::invalid_argument("sweep grid must be non-empty");
    }
    for (double v : snr_db) {
        if (!(v > 0.0)) throw std::invalid_argument("snr_db values must be > 0");
    }
    for (double v : inr_db) {
        if (!(v > 0.0)) throw std::invalid_argument("inr_db values must be > 0");
    }
    for (double v : cb) {
        if (!(v >= 0.0)) throw std::invalid_argument("cb values must be >= 0");
    }
    if (phase_samples < 0) {
        throw std::invalid_argument("phase_samples must be >= 0");
    }
}

std::vector<std::array<double, 4>> sweep_phase_tuples(
    int phase_samples, std::uint64_t seed, std::uint64_t point_index) {
    std::vector<std::array<double, 4>> tuples;
    tuples.reserve(static_cast<std::size_t>(phase_samples) + 2);
    Rng rng(split_seed(seed, point_index));
    for (int i = 0; i < phase_samples; ++i) tuples.push_back(rng.phase_tuple());
    tuples.push_back({0.0, 0.0, 0.0, 0.0});   // aligned: smallest det term
    tuples.push_back({0.0, kPi, 0.0, 0.0});   // anti-aligned cross gain
    return tuples;
}

RunRecord evaluate_point(double snr_db, double inr_db, double cb,
                         const std::array<double, 4>& phases,
                         double corrupt_bias) {
    SymmetricParams params{db_to_linear(snr_db), db_to_linear(inr_db), cb};
    const ChannelGains gains = gains_from_symmetric(params, phases);
    const RateBreakdown ach = achievable_sym_rate(gains, cb);
    const RateBreakdown outer = outer_bound_sym(gains, cb);

    RunRecord rec;
    rec.snr_db = snr_db;
    rec.inr_db = inr_db;
    rec.cb = cb;
    rec.phases = phases;
    rec.det_sq = gains.det_sq();
    rec.r_sym = ach.value + corrupt_bias;
    rec.r_binding = ach.binding;
    rec.c_ub = outer.value;
    rec.c_binding = outer.binding;
    rec.gap = rec.c_ub - rec.r_sym;
    return rec;
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec, double corrupt_bias) {
    spec.validate();
    const std::size_t grid_points =
        spec.snr_db.size() * spec.inr_db.size() * spec.cb.size();
    const std::size_t tuples_per_point =
        static_cast<std::size_t>(spec.phase_samples) + 2;
    std::vector<RunRecord> records(grid_points * tuples_per_point);

    parallel_index_for(grid_points, [&](std::size_t g) {
        const std::size_t i_snr = g / (spec.inr_db.size() * spec.cb.size());
        const std::size_t rem = g % (spec.inr_db.size() * spec.cb.size());
        const std::size_t i_inr = rem / spec.cb.size();
        const std::size_t i_cb = rem % spec.cb.size();
        const auto tuples =
            sweep_phase_tuples(spec.phase_samples, spec.seed, g);
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            records[g * tuples_per_point + t] =
                evaluate_point(spec.snr_db[i_snr], spec.inr_db[i_inr],
                               spec.cb[i_cb], tuples[t], corrupt_bias);
        }
    });
    return records;
}

GapSummary summarize_gap(const std::vector<RunRecord>& records) {
    GapSummary s;
    s.points = records.size();
    if (records.empty()) return s;
    s.max_gap = -1e300;
    s.min_gap = 1e300;
    for (const RunRecord& r : records) {
        if (r.gap > s.max_gap) {
            s.max_gap = r.gap;
            s.argmax = r;
        }
        if (r.gap < s.min_gap) {
            s.min_gap = r.gap;
            s.argmin = r;
        }
    }
    s.pass = (s.max_gap <= 3.0 + 1e-6) && (s.min_gap >= -1e-6);
    return s;
}

std::string run_record_csv_header() {
    return "snr_db,inr_db,cb,phase11,phase12,phase21,phase22,det_sq,"
           "r_sym,r_binding,c_ub,c_binding,gap";
}

std::string run_record_csv_row(const RunRecord& r) {
    std::string out;
    out += format_double(r.snr_db);
    out += ',';
    out += format_double(r.inr_db);
    out += ',';
    out += format_double(r.cb);
    for (double p : r.phases) {
        out += ',';
        out += format_double(p);
    }
    out += ',';
    out += format_double(r.det_sq);
    out += ',';
    out += format_double(r.r_sym);
    out += ',';
    out += r.r_binding;
    out += ',';
    out += format_double(r.c_ub);
    out += ',';
    out += r.c_binding;
    out += ',';
    out += format_double(r.gap);
    return out;
}

void parallel_index_for(std::size_t n,
                        const std::function<void(std::size_t)>& fn,
                        unsigned threads) {
    if (n == 0) return;
    unsigned workers = threads ? threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rxcoop
