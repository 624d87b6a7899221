#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rxcoop/channel.hpp"
#include "rxcoop/covariance.hpp"
#include "rxcoop/gdof.hpp"
#include "rxcoop/ldc.hpp"
#include "rxcoop/ldc_io.hpp"
#include "rxcoop/rates.hpp"
#include "rxcoop/sweep.hpp"

namespace py = pybind11;
using namespace rxcoop;

PYBIND11_MODULE(rxcoop, m) {
    m.doc() =
        "Symmetric rates, capacity bounds and degrees of freedom for the "
        "two-user Gaussian interference channel with conferencing receivers, "
        "plus a bit-level linear deterministic channel simulator";

    py::register_exception<DegenerateModelError>(m, "DegenerateModelError");

    py::class_<ChannelGains>(m, "ChannelGains")
        .def(py::init([](ComplexGain h11, ComplexGain h12, ComplexGain h21,
                         ComplexGain h22) {
                 ChannelGains g{h11, h12, h21, h22};
                 g.validate();
                 return g;
             }),
             py::arg("h11"), py::arg("h12"), py::arg("h21"), py::arg("h22"))
        .def_readonly("h11", &ChannelGains::h11)
        .def_readonly("h12", &ChannelGains::h12)
        .def_readonly("h21", &ChannelGains::h21)
        .def_readonly("h22", &ChannelGains::h22)
        .def("snr1", &ChannelGains::snr1)
        .def("snr2", &ChannelGains::snr2)
        .def("inr1", &ChannelGains::inr1)
        .def("inr2", &ChannelGains::inr2)
        .def("det_sq", &ChannelGains::det_sq);

    py::class_<SymmetricParams>(m, "SymmetricParams")
        .def(py::init([](double snr, double inr, double cb) {
                 SymmetricParams p{snr, inr, cb};
                 p.validate();
                 return p;
             }),
             py::arg("snr"), py::arg("inr"), py::arg("cb") = 0.0)
        .def_readonly("snr", &SymmetricParams::snr)
        .def_readonly("inr", &SymmetricParams::inr)
        .def_readonly("cb", &SymmetricParams::cb);

    py::class_<PowerSplit>(m, "PowerSplit")
        .def(py::init([](double pc, double pp) {
                 PowerSplit s{pc, pp};
                 s.validate();
                 return s;
             }),
             py::arg("pc"), py::arg("pp"))
        .def_readonly("pc", &PowerSplit::pc)
        .def_readonly("pp", &PowerSplit::pp);

    py::class_<QuantizerConfig>(m, "QuantizerConfig")
        .def(py::init([](double delta1, double delta2) {
                 QuantizerConfig q{delta1, delta2};
                 q.validate();
                 return q;
             }),
             py::arg("delta1"), py::arg("delta2"))
        .def_readonly("delta1", &QuantizerConfig::delta1)
        .def_readonly("delta2", &QuantizerConfig::delta2);

    py::class_<RateBreakdown>(m, "RateBreakdown")
        .def_readonly("value", &RateBreakdown::value)
        .def_readonly("terms", &RateBreakdown::terms)
        .def_readonly("binding", &RateBreakdown::binding)
        .def("__repr__", [](const RateBreakdown& b) {
            return "RateBreakdown(value=" + std::to_string(b.value) +
                   ", binding='" + b.binding + "')";
        });

    py::class_<RateConstraint>(m, "RateConstraint")
        .def_readonly("coeffs", &RateConstraint::coeffs)
        .def_readonly("bound", &RateConstraint::bound)
        .def_readonly("label", &RateConstraint::label);

    py::class_<CovarianceModel>(m, "CovarianceModel")
        .def_readonly("labels", &CovarianceModel::labels)
        .def_readonly("cov", &CovarianceModel::cov);

    m.def("db_to_linear", &db_to_linear, py::arg("db"));
    m.def("linear_to_db", &linear_to_db, py::arg("lin"));
    m.def("gains_from_symmetric", &gains_from_symmetric, py::arg("params"),
          py::arg("phases"));
    m.def("build_covariance", &build_covariance, py::arg("gains"),
          py::arg("split1"), py::arg("split2"), py::arg("delta1"),
          py::arg("delta2"));
    m.def("gaussian_mi", &gaussian_mi, py::arg("model"), py::arg("set_a"),
          py::arg("set_b"), py::arg("set_c") = std::vector<std::string>{},
          "Conditional mutual information I(A;B|C) in bits");
    m.def("default_power_split", &default_power_split, py::arg("snr"),
          py::arg("inr"));
    m.def("quantization_distortion", &quantization_distortion, py::arg("snr"),
          py::arg("inr"), py::arg("split"));
    m.def("binning_penalty", &binning_penalty, py::arg("gains"),
          py::arg("split1"), py::arg("split2"), py::arg("quant"),
          py::arg("receiver"));
    m.def("quantize_bin_constraints", &quantize_bin_constraints,
          py::arg("gains"), py::arg("cb12"), py::arg("cb21"), py::arg("split1"),
          py::arg("split2"), py::arg("quant"));
    m.def("max_symmetric_rate", &max_symmetric_rate, py::arg("constraints"));
    m.def("achievable_sym_rate", &achievable_sym_rate, py::arg("gains"),
          py::arg("cb"));
    m.def("outer_bound_sym", &outer_bound_sym, py::arg("gains"), py::arg("cb"));
    m.def("sym_rate_gap", &sym_rate_gap, py::arg("gains"), py::arg("cb"));

    py::class_<GdofPoint>(m, "GdofPoint")
        .def_readonly("alpha", &GdofPoint::alpha)
        .def_readonly("kappa", &GdofPoint::kappa)
        .def_readonly("d", &GdofPoint::d)
        .def_readonly("binding", &GdofPoint::binding)
        .def_readonly("phase_caveat", &GdofPoint::phase_caveat)
        .def("__repr__", [](const GdofPoint& p) {
            return "GdofPoint(alpha=" + std::to_string(p.alpha) +
                   ", kappa=" + std::to_string(p.kappa) +
                   ", d=" + std::to_string(p.d) + ")";
        });
    py::class_<GdofCurve>(m, "GdofCurve")
        .def_readonly("alpha", &GdofCurve::alpha)
        .def_readonly("kappa_star", &GdofCurve::kappa_star)
        .def_readonly("points", &GdofCurve::points);
    py::class_<GdofNumericPoint>(m, "GdofNumericPoint")
        .def_readonly("snr_db", &GdofNumericPoint::snr_db)
        .def_readonly("r_lo", &GdofNumericPoint::r_lo)
        .def_readonly("r_hi", &GdofNumericPoint::r_hi);

    m.def("gdof_formula", &gdof_formula, py::arg("alpha"), py::arg("kappa"));
    m.def("kappa_star", &kappa_star, py::arg("alpha"));
    m.def("gdof_curve", &gdof_curve, py::arg("alpha"), py::arg("kappa_grid"));
    m.def("gdof_numeric", &gdof_numeric, py::arg("alpha"), py::arg("kappa"),
          py::arg("snr_db_list"), py::arg("phase_samples") = 64,
          py::arg("seed") = 0);

    py::class_<LdcConfig>(m, "LdcConfig")
        .def(py::init([](int n11, int n12, int n21, int n22, int k12, int k21) {
                 LdcConfig c{n11, n12, n21, n22, k12, k21};
                 c.validate();
                 return c;
             }),
             py::arg("n11"), py::arg("n12"), py::arg("n21"), py::arg("n22"),
             py::arg("k12") = 0, py::arg("k21") = 0)
        .def_readonly("n11", &LdcConfig::n11)
        .def_readonly("n12", &LdcConfig::n12)
        .def_readonly("n21", &LdcConfig::n21)
        .def_readonly("n22", &LdcConfig::n22)
        .def_readonly("k12", &LdcConfig::k12)
        .def_readonly("k21", &LdcConfig::k21)
        .def("q", &LdcConfig::q)
        .def("symmetric", &LdcConfig::symmetric);

    py::class_<LdcScheme>(m, "LdcScheme")
        .def(py::init<>())
        .def_readwrite("r1", &LdcScheme::r1)
        .def_readwrite("r2", &LdcScheme::r2)
        .def_readwrite("g1", &LdcScheme::g1)
        .def_readwrite("g2", &LdcScheme::g2)
        .def_readwrite("f12", &LdcScheme::f12)
        .def_readwrite("f21", &LdcScheme::f21);

    py::class_<SimReport>(m, "SimReport")
        .def_readonly("trials", &SimReport::trials)
        .def_readonly("decode_errors", &SimReport::decode_errors)
        .def_readonly("achieved_rates", &SimReport::achieved_rates)
        .def_readonly("sum_rate", &SimReport::sum_rate);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("best_sum", &SearchResult::best_sum)
        .def_readonly("best_sym", &SearchResult::best_sym)
        .def_readonly("found", &SearchResult::found)
        .def_readonly("witness", &SearchResult::witness)
        .def_readonly("witness_rates", &SearchResult::witness_rates);

    py::class_<LdcFormulaCapacity>(m, "LdcFormulaCapacity")
        .def_readonly("per_user", &LdcFormulaCapacity::per_user)
        .def_readonly("sum", &LdcFormulaCapacity::sum)
        .def_readonly("phase_caveat", &LdcFormulaCapacity::phase_caveat);

    py::enum_<ScenarioMode>(m, "ScenarioMode")
        .value("one_round_quantize", ScenarioMode::one_round_quantize)
        .value("decode_forward", ScenarioMode::decode_forward);

    py::class_<ScenarioResult>(m, "ScenarioResult")
        .def_readonly("max_r1", &ScenarioResult::max_r1)
        .def_readonly("witness", &ScenarioResult::witness)
        .def_readonly("witness_rates", &ScenarioResult::witness_rates);

    m.def("ldc_output", &ldc_output, py::arg("config"), py::arg("x1"),
          py::arg("x2"));
    m.def("check_decodable", &check_decodable, py::arg("scheme"),
          py::arg("config"));
    m.def("simulate", &simulate, py::arg("scheme"), py::arg("config"),
          py::arg("trials") = 10000, py::arg("seed") = 0);
    m.def("brute_force_search", &brute_force_search, py::arg("config"),
          py::arg("max_r1"), py::arg("max_r2"));
    m.def("sym_capacity_formula", &sym_capacity_formula, py::arg("n"),
          py::arg("m"), py::arg("k"));
    m.def("scenario_compare", &scenario_compare, py::arg("config"),
          py::arg("mode"), py::arg("r2_min") = 0);
    m.def(
        "load_scheme_file",
        [](const std::string& path) { return load_scheme_file(path); },
        py::arg("path"), "Load a (config, scheme) fixture from JSON");
    m.def(
        "scheme_to_json_str",
        [](const LdcConfig& config, const LdcScheme& scheme) {
            return scheme_to_json(config, scheme).dump(2);
        },
        py::arg("config"), py::arg("scheme"));
}
