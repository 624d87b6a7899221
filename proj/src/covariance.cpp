#include "rxcoop/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rxcoop {

namespace {

constexpr double kPsdFloor = -1e-9;       // relative eigenvalue floor
constexpr double kSingularTol = 1e-12;    // on the correlation-scaled matrix
constexpr double kZeroVarTol = 1e-300;    // diagonal entries below are "off"
constexpr double kMiClampTol = 1e-9;

std::string join_labels(const std::vector<std::string>& labels,
                        const std::vector<int>& idx) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out << ",";
        out << labels[static_cast<std::size_t>(idx[i])];
    }
    out << "}";
    return out.str();
}

/// log2 det of the submatrix selected by idx, computed on the
/// diagonally-scaled (correlation) matrix for numerical range:
///   log2 det S = sum_i log2 S_ii + log2 det R.
/// Entries with zero variance were already filtered out by the caller.
double log2det_submatrix(const CovarianceModel& model,
                         const std::vector<int>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    if (n == 0) return 0.0;

    double diag_bits = 0.0;
    Eigen::VectorXd scale(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = model.cov(idx[i], idx[i]).real();
        diag_bits += std::log2(v);
        scale(i) = 1.0 / std::sqrt(v);
    }

    Eigen::MatrixXcd corr(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            corr(i, j) = model.cov(idx[i], idx[j]) * scale(i) * scale(j);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(corr,
                                                        Eigen::EigenvaluesOnly);
    double corr_bits = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = eig.eigenvalues()(i);
        if (lambda <= kSingularTol) {
            throw DegenerateModelError(
                "singular covariance submatrix for label set " +
                join_labels(model.labels, idx));
        }
        corr_bits += std::log2(lambda);
    }
    return diag_bits + corr_bits;
}

}  // namespace

int CovarianceModel::index(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw std::invalid_argument("unknown label: " + label);
    }
    return static_cast<int>(it - labels.begin());
}

void CovarianceModel::validate() const {
    const auto n = cov.rows();
    if (cov.cols() != n || static_cast<Eigen::Index>(labels.size()) != n) {
        throw std::invalid_argument("covariance shape/label mismatch");
    }
    double max_diag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (cov(i, i).real() < 0.0 || std::abs(cov(i, i).imag()) > 1e-12) {
            throw std::invalid_argument("diagonal must be real and >= 0");
        }
        max_diag = std::max(max_diag, cov(i, i).real());
    }
    if ((cov - cov.adjoint()).cwiseAbs().maxCoeff() >
        1e-9 * std::max(1.0, max_diag)) {
        throw std::invalid_argument("covariance must be Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(cov,
                                                        Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <
        kPsdFloor * std::max(1.0, eig.eigenvalues().maxCoeff())) {
        throw std::invalid_argument("covariance must be PSD");
    }
}

double gaussian_mi(const CovarianceModel& model,
                   const std::vector<std::string>& set_a,
                   const std::vector<std::string>& set_b,
                   const std::vector<std::string>& set_c) {
    // Resolve labels, dropping deterministic (zero-variance) components.
    auto resolve = [&](const std::vector<std::string>& names) {
        std::vector<int> idx;
        idx.reserve(names.size());
        for (const auto& name : names) {
            const int i = model.index(name);
            if (model.cov(i, i).real() > kZeroVarTol) idx.push_back(i);
        }
        return idx;
    };
    const std::vector<int> a = resolve(set_a);
    const std::vector<int> b = resolve(set_b);
    const std::vector<int> c = resolve(set_c);

    std::vector<int> all;
    all.reserve(a.size() + b.size() + c.size());
    for (const auto* part : {&a, &b, &c}) {
        all.insert(all.end(), part->begin(), part->end());
    }
    std::vector<int> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("A, B, C must be disjoint label sets");
    }

    auto concat = [](const std::vector<int>& u, const std::vector<int>& v) {
        std::vector<int> r = u;
        r.insert(r.end(), v.begin(), v.end());
        return r;
    };

    const double bits = log2det_submatrix(model, concat(a, c)) +
                        log2det_submatrix(model, concat(b, c)) -
                        log2det_submatrix(model, c) -
                        log2det_submatrix(model, all);
    if (std::abs(bits) <= kMiClampTol) return 0.0;
    if (bits < 0.0) {
        throw DegenerateModelError(
            "mutual information evaluated negative beyond tolerance; "
            "model is numerically degenerate");
    }
    return bits;
}

CovarianceModel build_covariance(const ChannelGains& gains,
                                 const PowerSplit& split1,
                                 const PowerSplit& split2, double delta1,
                                 double delta2) {
    gains.validate();
    split1.validate();
    split2.validate();
    if (delta1 < 0.0 || delta2 < 0.0 || !std::isfinite(delta1) ||
        !std::isfinite(delta2)) {
        throw std::invalid_argument("distortions must be finite and >= 0");
    }

    CovarianceModel model;
    model.labels = {"x1c", "x1p", "x2c", "x2p", "y1", "y2", "yh1", "yh2"};
    const int n = 8;
    model.cov = Eigen::MatrixXcd::Zero(n, n);

    // Columns of the mixing matrix: independent unit-power sources
    // (s1c, s1p, s2c, s2p, z1, z2, zh1, zh2); each labeled signal is a fixed
    // linear combination, so cov = M D M^H with D = diag(source powers).
    const std::complex<double> one{1.0, 0.0};
    Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(n, n);
    auto row = [&](int r, std::initializer_list<std::pair<int, std::complex<double>>> terms) {
        for (const auto& [c, w] : terms) mix(r, c) = w;
    };
    row(0, {{0, one}});                                      // x1c
    row(1, {{1, one}});                                      // x1p
    row(2, {{2, one}});                                      // x2c
    row(3, {{3, one}});                                      // x2p
    row(4, {{0, gains.h11}, {1, gains.h11}, {2, gains.h12}, {3, gains.h12}, {4, one}});  // y1
    row(5, {{0, gains.h21}, {1, gains.h21}, {2, gains.h22}, {3, gains.h22}, {5, one}});  // y2
    for (int c = 0; c < n; ++c) {
        mix(6, c) = mix(4, c);  // yh1 = y1 + zh1
        mix(7, c) = mix(5, c);  // yh2 = y2 + zh2
    }
    mix(6, 6) = one;
    mix(7, 7) = one;

    Eigen::VectorXd powers(n);
    powers << split1.pc, split1.pp, split2.pc, split2.pp, 1.0, 1.0, delta1,
        delta2;

    model.cov = mix * powers.asDiagonal() * mix.adjoint();
    // The construction is Hermitian PSD by form; enforce exact Hermitian
    // symmetry against rounding.
    model.cov = ((model.cov + model.cov.adjoint()) * 0.5).eval();
    return model;
}

void PowerSplit::validate() const {
    if (!(pc >= 0.0) || !(pp >= 0.0) || !std::isfinite(pc) ||
        !std::isfinite(pp)) {
        throw std::invalid_argument("powers must be finite and >= 0");
    }
    if (pc + pp > 1.0 + 1e-12) {
        throw std::invalid_argument("pc + pp must not exceed the unit power budget");
    }
}

void QuantizerConfig::validate() const {
    if (!(delta1 > 0.0) || !(delta2 > 0.0) || !std::isfinite(delta1) ||
        !std::isfinite(delta2)) {
        throw std::invalid_argument("distortions must be finite and > 0");
    }
}

}  // namespace rxcoop
