#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rxcoop/channel.hpp"
#include "rxcoop/power.hpp"

namespace rxcoop {

/// Raised when a mutual-information query needs the log-determinant of a
/// singular (beyond tolerance) covariance submatrix, e.g. when two labels
/// describe the same random variable. The message names the offending set.
class DegenerateModelError : public std::runtime_error {
  public:
    explicit DegenerateModelError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A zero-mean circularly-symmetric complex Gaussian vector described by its
/// Hermitian covariance matrix, with named components. Powers are relative to
/// unit noise.
struct CovarianceModel {
    std::vector<std::string> labels;
    Eigen::MatrixXcd cov;

    /// Index of a label; throws std::invalid_argument if unknown.
    int index(const std::string& label) const;

    /// Checks Hermitian symmetry and positive semidefiniteness
    /// (eigenvalues >= -1e-9 relative); throws std::invalid_argument.
    void validate() const;
};

/// I(A;B|C) in bits for jointly Gaussian vectors, via
///   log2det S_{AC} + log2det S_{BC} - log2det S_C - log2det S_{ABC},
/// with log2det of an empty selection defined as 0.
///
/// The three label sets must be disjoint. Components with (numerically) zero
/// variance are deterministic and are dropped from all sets before
/// evaluation; they carry no information. A required submatrix that is
/// singular beyond tolerance after that (perfectly correlated labels) makes
/// the conditional MI infinite and raises DegenerateModelError instead.
/// Results within 1e-9 of zero are clamped to exactly 0.
double gaussian_mi(const CovarianceModel& model,
                   const std::vector<std::string>& set_a,
                   const std::vector<std::string>& set_b,
                   const std::vector<std::string>& set_c = {});

/// Covariance of the eight signals
///   {x1c, x1p, x2c, x2p, y1, y2, yh1, yh2}
/// where x_i = x_ic + x_ip with independent components of powers
/// (pc_i, pp_i), y_i is the channel output with unit noise, and
/// yh_i = y_i + independent quantization noise of power delta_i.
/// delta_i = 0 is admitted but makes yh_i a duplicate of y_i, so such a
/// label must not be used in queries together with its y_i.
CovarianceModel build_covariance(const ChannelGains& gains,
                                 const PowerSplit& split1,
                                 const PowerSplit& split2,
                                 double delta1, double delta2);

}  // namespace rxcoop
