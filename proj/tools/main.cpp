// Command-line front end: closed-form rate evaluation, gap certification
// sweeps, degrees-of-freedom curves and deterministic-channel scheme runs.
// All randomness is derived from --seed via documented splitting, so equal
// flags give byte-identical output.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rxcoop/channel.hpp"
#include "rxcoop/gdof.hpp"
#include "rxcoop/ldc.hpp"
#include "rxcoop/ldc_io.hpp"
#include "rxcoop/rates.hpp"
#include "rxcoop/rng.hpp"
#include "rxcoop/sweep.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitContractViolation = 2;
constexpr int kExitRuntimeError = 3;

/// Grid syntax: "start:stop:step" (inclusive), "a,b,c", or a single value.
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' ||
            c2 != ':' || step <= 0.0) {
            throw CLI::ValidationError("grid", "expected start:stop:step");
        }
        for (double v = start; v <= stop + 1e-12; v += step) {
            values.push_back(v);
        }
        return values;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        values.push_back(std::stod(item));
    }
    if (values.empty()) throw CLI::ValidationError("grid", "empty grid");
    return values;
}

std::array<double, 4> parse_phases(const std::string& text) {
    const std::vector<double> v = parse_grid(text);
    if (v.size() != 4) {
        throw CLI::ValidationError("--phases", "expected four angles a,b,c,d");
    }
    return {v[0], v[1], v[2], v[3]};
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << content;
}

ordered_json record_to_json(const rxcoop::RunRecord& r) {
    return ordered_json{{"snr_db", r.snr_db},
                        {"inr_db", r.inr_db},
                        {"cb", r.cb},
                        {"phases", r.phases},
                        {"det_sq", r.det_sq},
                        {"r_sym", r.r_sym},
                        {"r_binding", r.r_binding},
                        {"c_ub", r.c_ub},
                        {"c_binding", r.c_binding},
                        {"gap", r.gap}};
}

ordered_json config_to_json(const rxcoop::LdcConfig& c) {
    return ordered_json{{"n11", c.n11}, {"n12", c.n12}, {"n21", c.n21},
                        {"n22", c.n22}, {"k12", c.k12}, {"k21", c.k21}};
}

std::string records_to_csv(const std::vector<rxcoop::RunRecord>& records) {
    std::string out = rxcoop::run_record_csv_header() + "\n";
    for (const auto& r : records) out += rxcoop::run_record_csv_row(r) + "\n";
    return out;
}

// ---- rates ---------------------------------------------------------------

struct RatesOptions {
    double snr_db = 0, inr_db = 0, cb = 0;
    std::string phases, out, format = "csv";
    int phase_samples = 0;
    std::uint64_t seed = 0;
};

int run_rates(const RatesOptions& opt) {
    std::vector<std::array<double, 4>> tuples;
    if (!opt.phases.empty()) {
        tuples.push_back(parse_phases(opt.phases));
    } else {
        tuples = rxcoop::sweep_phase_tuples(opt.phase_samples, opt.seed, 0);
    }
    std::vector<rxcoop::RunRecord> records;
    records.reserve(tuples.size());
    for (const auto& t : tuples) {
        records.push_back(
            rxcoop::evaluate_point(opt.snr_db, opt.inr_db, opt.cb, t));
    }
    if (opt.format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& r : records) rows.push_back(record_to_json(r));
        write_output(opt.out, rows.dump(2) + "\n");
    } else {
        write_output(opt.out, records_to_csv(records));
    }
    return 0;
}

// ---- gap-sweep -------------------------------------------------------------

struct GapSweepOptions {
    std::string snr_db = "5:70:5";
    std::string inr_db = "5:70:5";
    std::string cb = "0:10:1";
    int phase_samples = 16;
    std::uint64_t seed = 0;
    std::string out;
    double corrupt_achievable = 0.0;  // test hook
};

int run_gap_sweep(const GapSweepOptions& opt) {
    rxcoop::SweepSpec spec;
    spec.snr_db = parse_grid(opt.snr_db);
    spec.inr_db = parse_grid(opt.inr_db);
    spec.cb = parse_grid(opt.cb);
    spec.phase_samples = opt.phase_samples;
    spec.seed = opt.seed;

    const std::vector<rxcoop::RunRecord> records =
        rxcoop::run_sweep(spec, opt.corrupt_achievable);
    if (!opt.out.empty()) write_output(opt.out, records_to_csv(records));

    const rxcoop::GapSummary summary = rxcoop::summarize_gap(records);
    ordered_json j{{"points", summary.points},
                   {"max_gap", summary.max_gap},
                   {"argmax", record_to_json(summary.argmax)},
                   {"min_gap", summary.min_gap},
                   {"argmin", record_to_json(summary.argmin)},
                   {"pass", summary.pass}};
    std::cout << j.dump(2) << "\n";
    if (!summary.pass) {
        std::cerr << "gap contract violated; worst record:\n"
                  << record_to_json(summary.max_gap > 3.0 + 1e-6
                                        ? summary.argmax
                                        : summary.argmin)
                         .dump(2)
                  << "\n";
        return kExitContractViolation;
    }
    return 0;
}

// ---- gdof ------------------------------------------------------------------

struct GdofOptions {
    std::string alpha;
    std::string kappa;
    std::string numeric;  // snr dB list; empty = no numeric columns
    int phase_samples = 64;
    std::uint64_t seed = 0;
    std::string out, plot_out, format = "csv";
};

std::string gdof_csv(const GdofOptions& opt,
                     const std::vector<double>& alphas,
                     const std::vector<double>& kappas,
                     const std::vector<double>& numeric_db) {
    std::string header = "alpha,kappa,d,binding,kappa_star,phase_caveat";
    for (double db : numeric_db) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), ",r_lo_%gdb,r_hi_%gdb", db, db);
        header += buf;
    }
    std::string body;
    for (double alpha : alphas) {
        const rxcoop::GdofCurve curve = rxcoop::gdof_curve(alpha, kappas);
        for (const rxcoop::GdofPoint& p : curve.points) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%s,%.12g,%d",
                          p.alpha, p.kappa, p.d, p.binding.c_str(),
                          curve.kappa_star, p.phase_caveat ? 1 : 0);
            body += buf;
            if (!numeric_db.empty()) {
                const auto pts = rxcoop::gdof_numeric(
                    p.alpha, p.kappa, numeric_db, opt.phase_samples, opt.seed);
                for (const auto& n : pts) {
                    std::snprintf(buf, sizeof(buf), ",%.12g,%.12g", n.r_lo,
                                  n.r_hi);
                    body += buf;
                }
            }
            body += "\n";
        }
    }
    return header + "\n" + body;
}

int run_gdof(const GdofOptions& opt) {
    const std::vector<double> alphas = parse_grid(opt.alpha);
    std::vector<double> kappas = parse_grid(opt.kappa);
    std::sort(kappas.begin(), kappas.end());
    const std::vector<double> numeric_db =
        opt.numeric.empty() ? std::vector<double>{} : parse_grid(opt.numeric);

    if (opt.format == "json") {
        ordered_json rows = ordered_json::array();
        for (double alpha : alphas) {
            const rxcoop::GdofCurve curve = rxcoop::gdof_curve(alpha, kappas);
            for (const rxcoop::GdofPoint& p : curve.points) {
                ordered_json row{{"alpha", p.alpha},
                                 {"kappa", p.kappa},
                                 {"d", p.d},
                                 {"binding", p.binding},
                                 {"kappa_star", curve.kappa_star},
                                 {"phase_caveat", p.phase_caveat}};
                if (!numeric_db.empty()) {
                    const auto pts =
                        rxcoop::gdof_numeric(p.alpha, p.kappa, numeric_db,
                                             opt.phase_samples, opt.seed);
                    ordered_json numeric = ordered_json::array();
                    for (const auto& n : pts) {
                        numeric.push_back(ordered_json{{"snr_db", n.snr_db},
                                                       {"r_lo", n.r_lo},
                                                       {"r_hi", n.r_hi}});
                    }
                    row["numeric"] = std::move(numeric);
                }
                rows.push_back(std::move(row));
            }
        }
        write_output(opt.out, rows.dump(2) + "\n");
    } else {
        write_output(opt.out, gdof_csv(opt, alphas, kappas, numeric_db));
    }

    if (!opt.plot_out.empty()) {
        // gnuplot-style blocks: one (kappa, d) column pair per alpha
        std::string plot;
        for (double alpha : alphas) {
            const rxcoop::GdofCurve curve = rxcoop::gdof_curve(alpha, kappas);
            char buf[96];
            std::snprintf(buf, sizeof(buf), "# alpha=%.12g kappa_star=%.12g\n",
                          alpha, curve.kappa_star);
            plot += buf;
            for (const rxcoop::GdofPoint& p : curve.points) {
                std::snprintf(buf, sizeof(buf), "%.12g %.12g\n", p.kappa, p.d);
                plot += buf;
            }
            plot += "\n";
        }
        write_output(opt.plot_out, plot);
    }
    return 0;
}

// ---- ldc -------------------------------------------------------------------

int run_ldc_run(const std::string& fixture, long trials, std::uint64_t seed,
                const std::string& out) {
    const auto [config, scheme] = rxcoop::load_scheme_file(fixture);
    const bool decodable = rxcoop::check_decodable(scheme, config);
    const rxcoop::SimReport rep =
        rxcoop::simulate(scheme, config, trials, seed);
    ordered_json j{{"fixture", fixture},
                   {"config", config_to_json(config)},
                   {"decodable", decodable},
                   {"trials", rep.trials},
                   {"decode_errors", rep.decode_errors},
                   {"achieved_rates", rep.achieved_rates},
                   {"sum_rate", rep.sum_rate}};
    write_output(out, j.dump(2) + "\n");
    return 0;
}

int run_ldc_search(const rxcoop::LdcConfig& config, int max_r1, int max_r2,
                   const std::string& out) {
    const int q = config.q();
    const rxcoop::SearchResult r = rxcoop::brute_force_search(
        config, max_r1 < 0 ? q : max_r1, max_r2 < 0 ? q : max_r2);
    ordered_json j{{"config", config_to_json(config)},
                   {"best_sum", r.best_sum},
                   {"best_sym", r.best_sym},
                   {"witness_rates", r.witness_rates},
                   {"witness", rxcoop::scheme_to_json(config, r.witness)}};
    write_output(out, j.dump(2) + "\n");
    return 0;
}

int run_ldc_scenario(const rxcoop::LdcConfig& config, const std::string& mode,
                     int r2_min, const std::string& out) {
    const rxcoop::ScenarioMode m =
        mode == "one_round_quantize" ? rxcoop::ScenarioMode::one_round_quantize
                                     : rxcoop::ScenarioMode::decode_forward;
    const rxcoop::ScenarioResult r =
        rxcoop::scenario_compare(config, m, r2_min);
    ordered_json j{{"config", config_to_json(config)},
                   {"mode", mode},
                   {"max_r1", r.max_r1},
                   {"witness_rates", r.witness_rates},
                   {"witness", rxcoop::scheme_to_json(config, r.witness)}};
    write_output(out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Symmetric-rate toolkit for the two-user Gaussian interference "
        "channel with conferencing receivers, with a bit-level deterministic "
        "channel simulator"};
    app.require_subcommand(1);

    // rates
    RatesOptions rates;
    CLI::App* c_rates = app.add_subcommand(
        "rates", "Achievable symmetric rate, outer bound and gap at one point");
    c_rates->add_option("--snr-db", rates.snr_db, "SNR in dB (> 0)")
        ->required();
    c_rates->add_option("--inr-db", rates.inr_db, "INR in dB (> 0)")
        ->required();
    c_rates->add_option("--cb", rates.cb, "conference bits per direction");
    c_rates->add_option("--phases", rates.phases,
                        "four phases a,b,c,d in radians (h11,h12,h21,h22)");
    c_rates->add_option("--phase-samples", rates.phase_samples,
                        "uniform phase draws when --phases is absent");
    c_rates->add_option("--seed", rates.seed, "RNG seed");
    c_rates->add_option("--out", rates.out, "output file (default stdout)");
    c_rates->add_option("--format", rates.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // gap-sweep
    GapSweepOptions sweep;
    CLI::App* c_sweep = app.add_subcommand(
        "gap-sweep",
        "Certify 0 <= outer - achievable <= 3 bits over a parameter grid");
    c_sweep->add_option("--snr-db", sweep.snr_db, "grid (start:stop:step or list)");
    c_sweep->add_option("--inr-db", sweep.inr_db, "grid");
    c_sweep->add_option("--cb", sweep.cb, "grid");
    c_sweep->add_option("--phase-samples", sweep.phase_samples,
                        "uniform draws per grid point (two extreme tuples are "
                        "always appended)");
    c_sweep->add_option("--seed", sweep.seed, "RNG seed");
    c_sweep->add_option("--out", sweep.out, "write the full CSV here");
    c_sweep
        ->add_option("--corrupt-achievable", sweep.corrupt_achievable,
                     "test hook: bias added to the achievable rate")
        ->group("");

    // gdof
    GdofOptions gdof;
    CLI::App* c_gdof = app.add_subcommand(
        "gdof", "Generalized degrees of freedom d(alpha, kappa)");
    c_gdof->add_option("--alpha", gdof.alpha, "alpha list or grid")->required();
    c_gdof->add_option("--kappa", gdof.kappa, "kappa list or grid")->required();
    c_gdof->add_option("--numeric", gdof.numeric,
                       "also evaluate normalized finite-SNR bounds at these "
                       "dB values");
    c_gdof->add_option("--phase-samples", gdof.phase_samples,
                       "phase draws per numeric point");
    c_gdof->add_option("--seed", gdof.seed, "RNG seed");
    c_gdof->add_option("--out", gdof.out, "output file (default stdout)");
    c_gdof->add_option("--plot-out", gdof.plot_out,
                       "two-column (kappa d) plot file, one block per alpha");
    c_gdof->add_option("--format", gdof.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // ldc
    CLI::App* c_ldc = app.add_subcommand(
        "ldc", "Linear deterministic channel schemes");
    c_ldc->require_subcommand(1);

    std::string ldc_fixture, ldc_out;
    long ldc_trials = 10000;
    std::uint64_t ldc_seed = 0;
    CLI::App* c_run =
        c_ldc->add_subcommand("run", "Simulate a scheme fixture (JSON)");
    c_run->add_option("fixture", ldc_fixture, "fixture file")->required();
    c_run->add_option("--trials", ldc_trials, "random-message trials");
    c_run->add_option("--seed", ldc_seed, "RNG seed");
    c_run->add_option("--out", ldc_out, "output file (default stdout)");

    rxcoop::LdcConfig cfg;
    int sym_n = -1, sym_m = -1, sym_k = -1;
    int max_r1 = -1, max_r2 = -1;
    std::string search_out;
    CLI::App* c_search = c_ldc->add_subcommand(
        "search", "Exhaustive search for the best decodable scheme");
    c_search->add_option("--n", sym_n, "symmetric direct levels (n11 = n22)");
    c_search->add_option("--m", sym_m, "symmetric cross levels (n12 = n21)");
    c_search->add_option("--k", sym_k,
                         "symmetric conference bits (k12 = k21)");
    c_search->add_option("--n11", cfg.n11, "");
    c_search->add_option("--n12", cfg.n12, "");
    c_search->add_option("--n21", cfg.n21, "");
    c_search->add_option("--n22", cfg.n22, "");
    c_search->add_option("--k12", cfg.k12, "");
    c_search->add_option("--k21", cfg.k21, "");
    c_search->add_option("--max-r1", max_r1, "cap on user-1 message bits");
    c_search->add_option("--max-r2", max_r2, "cap on user-2 message bits");
    c_search->add_option("--out", search_out, "output file (default stdout)");

    rxcoop::LdcConfig scfg;
    std::string scenario_mode, scenario_out;
    int r2_min = 0;
    CLI::App* c_scn = c_ldc->add_subcommand(
        "scenario",
        "Best R1 under a restricted receiver-2 forwarding class");
    c_scn->add_option("--mode", scenario_mode, "forwarding class")
        ->required()
        ->check(CLI::IsMember({"one_round_quantize", "decode_forward"}));
    c_scn->add_option("--n11", scfg.n11, "")->required();
    c_scn->add_option("--n12", scfg.n12, "")->required();
    c_scn->add_option("--n21", scfg.n21, "")->required();
    c_scn->add_option("--n22", scfg.n22, "")->required();
    c_scn->add_option("--k12", scfg.k12, "");
    c_scn->add_option("--k21", scfg.k21, "");
    c_scn->add_option("--r2-min", r2_min, "minimum user-2 rate");
    c_scn->add_option("--out", scenario_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_rates->parsed()) return run_rates(rates);
        if (c_sweep->parsed()) return run_gap_sweep(sweep);
        if (c_gdof->parsed()) return run_gdof(gdof);
        if (c_run->parsed()) {
            return run_ldc_run(ldc_fixture, ldc_trials, ldc_seed, ldc_out);
        }
        if (c_search->parsed()) {
            if (sym_n >= 0 || sym_m >= 0 || sym_k >= 0) {
                if (sym_n < 0 || sym_m < 0 || sym_k < 0) {
                    throw std::invalid_argument(
                        "--n, --m, --k must be given together");
                }
                cfg = rxcoop::LdcConfig{sym_n, sym_m, sym_m, sym_n,
                                        sym_k, sym_k};
            }
            return run_ldc_search(cfg, max_r1, max_r2, search_out);
        }
        if (c_scn->parsed()) {
            return run_ldc_scenario(scfg, scenario_mode, r2_min, scenario_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return 0;
}
