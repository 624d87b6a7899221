#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "rxcoop/covariance.hpp"
#include "rxcoop/rng.hpp"

using namespace rxcoop;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

CovarianceModel random_psd_model(Rng& rng, int n) {
    // cov = F F^H + 0.2 I: comfortably nonsingular, random correlations.
    Eigen::MatrixXcd f(n, n + 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n + 2; ++j) {
            f(i, j) = std::complex<double>(2.0 * rng.uniform() - 1.0,
                                           2.0 * rng.uniform() - 1.0);
        }
    }
    CovarianceModel model;
    model.cov = f * f.adjoint() + 0.2 * Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i) model.labels.push_back("v" + std::to_string(i));
    return model;
}

}  // namespace

TEST_CASE("symmetric gains: magnitudes, phases and determinant term") {
    SymmetricParams params{100.0, 10.0, 1.0};
    const ChannelGains aligned =
        gains_from_symmetric(params, {0.0, 0.0, 0.0, 0.0});
    CHECK(aligned.h11.real() == doctest::Approx(10.0));
    CHECK(aligned.h22.real() == doctest::Approx(10.0));
    CHECK(aligned.h12.real() == doctest::Approx(std::sqrt(10.0)));
    CHECK(aligned.snr1() == doctest::Approx(100.0));
    CHECK(aligned.inr2() == doctest::Approx(10.0));
    CHECK(aligned.det_sq() == doctest::Approx(8100.0));

    const ChannelGains anti =
        gains_from_symmetric(params, {0.0, kPi, 0.0, 0.0});
    CHECK(anti.det_sq() == doctest::Approx(12100.0));

    const ChannelGains rank1 = gains_from_symmetric(
        SymmetricParams{4.0, 4.0, 0.0}, {0.0, 0.0, 0.0, 0.0});
    CHECK(rank1.det_sq() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("symmetric gains: input validation") {
    SymmetricParams params{100.0, 10.0, 1.0};
    CHECK_THROWS_AS(gains_from_symmetric(params, {0.0, NAN, 0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        gains_from_symmetric(SymmetricParams{0.5, 10.0, 0.0}, {0, 0, 0, 0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        gains_from_symmetric(SymmetricParams{10.0, 10.0, -1.0}, {0, 0, 0, 0}),
        std::invalid_argument);
}

TEST_CASE("det_sq is invariant under a common phase rotation") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        SymmetricParams params{1.0 + 100.0 * rng.uniform(),
                               1.0 + 50.0 * rng.uniform(), 0.0};
        auto phases = rng.phase_tuple();
        const double theta = rng.phase();
        const ChannelGains a = gains_from_symmetric(params, phases);
        for (auto& p : phases) p += theta;
        const ChannelGains b = gains_from_symmetric(params, phases);
        CHECK(a.det_sq() ==
              doctest::Approx(b.det_sq()).epsilon(1e-9));
    }
}

TEST_CASE("gaussian_mi: independence, closed form, degeneracy") {
    SUBCASE("identity covariance gives zero") {
        CovarianceModel model;
        model.labels = {"a", "b", "c"};
        model.cov = Eigen::MatrixXcd::Identity(3, 3);
        CHECK(gaussian_mi(model, {"a"}, {"b"}) == 0.0);
        CHECK(gaussian_mi(model, {"a"}, {"b"}, {"c"}) == 0.0);
    }
    SUBCASE("correlation 0.5 gives -log2(0.75)") {
        CovarianceModel model;
        model.labels = {"a", "b"};
        model.cov = Eigen::MatrixXcd(2, 2);
        model.cov << 1.0, 0.5, 0.5, 1.0;
        // Direct 2x2 determinant arithmetic: det = 1 - rho^2 = 0.75.
        const double expected = -std::log2(1.0 - 0.5 * 0.5);
        CHECK(expected == doctest::Approx(0.4150374992788438).epsilon(1e-12));
        CHECK(gaussian_mi(model, {"a"}, {"b"}) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("duplicate variable raises a degenerate-model error") {
        CovarianceModel model;
        model.labels = {"a", "b"};
        model.cov = Eigen::MatrixXcd(2, 2);
        model.cov << 1.0, 1.0, 1.0, 1.0;
        CHECK_THROWS_AS(gaussian_mi(model, {"a"}, {"b"}), DegenerateModelError);
    }
    SUBCASE("overlapping sets are rejected") {
        CovarianceModel model;
        model.labels = {"a", "b"};
        model.cov = Eigen::MatrixXcd::Identity(2, 2);
        CHECK_THROWS_AS(gaussian_mi(model, {"a"}, {"a"}),
                        std::invalid_argument);
        CHECK_THROWS_AS(gaussian_mi(model, {"a"}, {"b"}, {"b"}),
                        std::invalid_argument);
    }
}

TEST_CASE("gaussian_mi properties on random models") {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4 + static_cast<int>(rng.next() % 3);  // 4..6
        const CovarianceModel model = random_psd_model(rng, n);
        // Split labels into A | B (first of rest) | B' | C.
        std::vector<std::string> a{model.labels[0]};
        std::vector<std::string> b{model.labels[1]};
        std::vector<std::string> b2{model.labels[2]};
        std::vector<std::string> c(model.labels.begin() + 3,
                                   model.labels.end());

        const double i_ab_c = gaussian_mi(model, a, b, c);
        CHECK(i_ab_c >= 0.0);
        CHECK(gaussian_mi(model, b, a, c) ==
              doctest::Approx(i_ab_c).epsilon(1e-9));

        // Chain rule: I(A; B,B' | C) = I(A;B|C) + I(A;B'|C,B).
        std::vector<std::string> bb2 = b;
        bb2.insert(bb2.end(), b2.begin(), b2.end());
        std::vector<std::string> cb = c;
        cb.insert(cb.end(), b.begin(), b.end());
        const double lhs = gaussian_mi(model, a, bb2, c);
        const double rhs = i_ab_c + gaussian_mi(model, a, b2, cb);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("build_covariance: diagonal cases and received power") {
    SymmetricParams params{100.0, 10.0, 0.0};
    const ChannelGains gains =
        gains_from_symmetric(params, {0.0, 0.0, 0.0, 0.0});

    SUBCASE("all powers zero leaves only noise") {
        const auto model = build_covariance(gains, PowerSplit{0.0, 0.0},
                                            PowerSplit{0.0, 0.0}, 0.5, 2.0);
        Eigen::VectorXd expected(8);
        expected << 0, 0, 0, 0, 1, 1, 1.5, 3.0;
        for (int i = 0; i < 8; ++i) {
            CHECK(model.cov(i, i).real() == doctest::Approx(expected(i)));
            for (int j = 0; j < 8; ++j) {
                if (i != j && (i < 4 || j < 4)) {
                    CHECK(std::abs(model.cov(i, j)) ==
                          doctest::Approx(0.0).epsilon(1e-12));
                }
            }
        }
    }
    SUBCASE("total received power and cross-receiver correlation") {
        const PowerSplit split{0.9, 0.1};
        const auto model = build_covariance(gains, split, split, 0.0, 0.0);
        const int y1 = model.index("y1");
        const int y2 = model.index("y2");
        CHECK(model.cov(y1, y1).real() == doctest::Approx(111.0));
        // E[y1 conj(y2)] = h11*conj(h21) + h12*conj(h22) = 20*sqrt(10).
        CHECK(model.cov(y1, y2).real() ==
              doctest::Approx(20.0 * std::sqrt(10.0)).epsilon(1e-12));
        CHECK(model.cov(y1, y2).imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("build_covariance output is PSD for random valid inputs") {
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        SymmetricParams params{1.0 + 1e4 * rng.uniform(),
                               1.0 + 1e3 * rng.uniform(), 0.0};
        const ChannelGains gains =
            gains_from_symmetric(params, rng.phase_tuple());
        const double pp1 = rng.uniform();
        const double pp2 = rng.uniform();
        const auto model = build_covariance(
            gains, PowerSplit{1.0 - pp1, pp1}, PowerSplit{1.0 - pp2, pp2},
            rng.uniform() * 10.0, rng.uniform() * 10.0);
        CHECK_NOTHROW(model.validate());
    }
}

TEST_CASE("duplicate labels via delta = 0 raise degenerate-model error") {
    SymmetricParams params{100.0, 10.0, 0.0};
    const ChannelGains gains =
        gains_from_symmetric(params, {0.0, 0.0, 0.0, 0.0});
    const PowerSplit split{0.9, 0.1};
    const auto model = build_covariance(gains, split, split, 0.0, 1.0);
    // yh1 duplicates y1 exactly when delta1 = 0.
    CHECK_THROWS_AS(gaussian_mi(model, {"yh1"}, {"y1"}, {"x1c"}),
                    DegenerateModelError);
}

TEST_CASE("data processing: quantized output is never more informative") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        SymmetricParams params{1.0 + 1e3 * rng.uniform(),
                               1.0 + 1e2 * rng.uniform(), 0.0};
        const ChannelGains gains =
            gains_from_symmetric(params, rng.phase_tuple());
        const PowerSplit split{0.6, 0.4};
        const double delta1 = 0.1 + 10.0 * rng.uniform();
        const auto model =
            build_covariance(gains, split, split, delta1, 1.0);
        const double direct = gaussian_mi(model, {"x1c"}, {"y1"});
        const double quantized = gaussian_mi(model, {"x1c"}, {"yh1"});
        CHECK(quantized <= direct + 1e-9);
    }
}
