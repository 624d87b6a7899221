#include "rxcoop/ldc_io.hpp"

#include <fstream>

namespace rxcoop {

namespace {

nlohmann::ordered_json matrix_to_json(const std::vector<BitVec>& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const BitVec& row : m) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (auto b : row) r.push_back(static_cast<int>(b));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<BitVec> matrix_from_json(const nlohmann::json& j) {
    std::vector<BitVec> m;
    for (const auto& row : j) {
        BitVec r;
        for (const auto& b : row) {
            const int v = b.get<int>();
            if (v != 0 && v != 1) {
                throw std::invalid_argument("matrix entries must be 0 or 1");
            }
            r.push_back(static_cast<std::uint8_t>(v));
        }
        m.push_back(std::move(r));
    }
    return m;
}

}  // namespace

nlohmann::ordered_json scheme_to_json(const LdcConfig& config,
                                      const LdcScheme& scheme) {
    scheme.validate(config);
    nlohmann::ordered_json j;
    j["config"] = {{"n11", config.n11}, {"n12", config.n12},
                   {"n21", config.n21}, {"n22", config.n22},
                   {"k12", config.k12}, {"k21", config.k21}};
    j["r1"] = scheme.r1;
    j["r2"] = scheme.r2;
    j["G1"] = matrix_to_json(scheme.g1);
    j["G2"] = matrix_to_json(scheme.g2);
    j["F12"] = matrix_to_json(scheme.f12);
    j["F21"] = matrix_to_json(scheme.f21);
    return j;
}

std::pair<LdcConfig, LdcScheme> scheme_from_json(const nlohmann::json& j) {
    LdcConfig config;
    const auto& c = j.at("config");
    config.n11 = c.at("n11").get<int>();
    config.n12 = c.at("n12").get<int>();
    config.n21 = c.at("n21").get<int>();
    config.n22 = c.at("n22").get<int>();
    config.k12 = c.at("k12").get<int>();
    config.k21 = c.at("k21").get<int>();

    LdcScheme scheme;
    scheme.r1 = j.at("r1").get<int>();
    scheme.r2 = j.at("r2").get<int>();
    scheme.g1 = matrix_from_json(j.at("G1"));
    scheme.g2 = matrix_from_json(j.at("G2"));
    scheme.f12 = matrix_from_json(j.at("F12"));
    scheme.f21 = matrix_from_json(j.at("F21"));
    scheme.validate(config);
    return {config, scheme};
}

std::pair<LdcConfig, LdcScheme> load_scheme_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture: " + path);
    nlohmann::json j;
    in >> j;
    return scheme_from_json(j);
}

}  // namespace rxcoop
