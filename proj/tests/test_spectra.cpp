#include <doctest.h>

#include <cmath>
#include <numeric>
#include <string>

#include "oracles.hpp"
#include "sysrisk/errors.hpp"
#include "sysrisk/spectra.hpp"
#include "test_util.hpp"

using namespace sysrisk;

namespace {

CorrelationMatrix make_correlation(const Matrix& entries) {
    CorrelationMatrix c;
    c.n = entries.rows();
    c.entries = entries;
    c.window_end = {2010, 1};
    c.window_len = 12;
    return c;
}

Matrix equicorrelation(std::size_t n, double rho) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = i == j ? 1.0 : rho;
    return m;
}

}  // namespace

TEST_CASE("perfectly correlated and anticorrelated columns") {
    Xoshiro256StarStar rng(5);
    Matrix values(12, 2);
    for (std::size_t t = 0; t < 12; ++t) {
        values(t, 0) = rng.standard_normal();
        values(t, 1) = values(t, 0);
    }
    auto returns = test::make_returns(values);
    auto c = correlation(returns, returns.timestamps.back(), 12);
    CHECK(c.entries(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.entries(0, 0) == 1.0);
    CHECK(c.entries(1, 1) == 1.0);

    for (std::size_t t = 0; t < 12; ++t) values(t, 1) = -values(t, 0);
    returns = test::make_returns(values);
    c = correlation(returns, returns.timestamps.back(), 12);
    CHECK(c.entries(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(c.entries(0, 1) == c.entries(1, 0));
}

TEST_CASE("correlation matches the naive double-loop oracle") {
    Xoshiro256StarStar rng(42);
    const auto values = test::random_normal_matrix(rng, 12, 3);
    const auto returns = test::make_returns(values);
    const auto c = correlation(returns, returns.timestamps.back(), 12);
    const auto expected = oracle::naive_correlation(values, 0, 12);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(c.entries(i, i) == 1.0);  // forced, not computed
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != j)
                CHECK(c.entries(i, j) == doctest::Approx(expected(i, j)).epsilon(1e-13));
        }
    }
}

TEST_CASE("correlation window selection and failure modes") {
    Xoshiro256StarStar rng(43);
    const auto returns = test::make_returns(test::random_normal_matrix(rng, 24, 2));

    // window ending mid-series uses exactly the trailing window_len rows
    const auto mid_end = returns.timestamps[11];
    const auto c = correlation(returns, mid_end, 12);
    CHECK(c.window_end == mid_end);
    CHECK(c.window_len == 12);
    const auto expected = oracle::naive_correlation(returns.values, 0, 12);
    CHECK(c.entries(0, 1) == doctest::Approx(expected(0, 1)).epsilon(1e-13));

    CHECK_THROWS_AS(correlation(returns, returns.timestamps[5], 12), WindowOutOfRange);
    CHECK_THROWS_AS(correlation(returns, {1990, 1}, 12), WindowOutOfRange);
    CHECK_THROWS_AS(correlation(returns, returns.timestamps.back(), 2), WindowOutOfRange);
}

TEST_CASE("a constant asset in the window is a hard error") {
    Xoshiro256StarStar rng(44);
    Matrix values = test::random_normal_matrix(rng, 12, 3);
    for (std::size_t t = 0; t < 12; ++t) values(t, 1) = 0.25;
    const auto returns = test::make_returns(values);
    try {
        correlation(returns, returns.timestamps.back(), 12);
        FAIL("expected ZeroVariance");
    } catch (const ZeroVariance& e) {
        CHECK(std::string(e.what()).find("A2") != std::string::npos);
    }
}

TEST_CASE("eigenvalues of closed-form correlation matrices") {
    const auto id = eigen_symmetric(make_correlation(Matrix::identity(4)));
    for (double ev : id.eigenvalues) CHECK(ev == doctest::Approx(1.0).epsilon(1e-12));

    const auto rank1 = eigen_symmetric(make_correlation(equicorrelation(2, 1.0)));
    CHECK(rank1.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rank1.eigenvalues[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    for (double rho : {-0.6, 0.3, 0.8}) {
        const auto s = eigen_symmetric(make_correlation(equicorrelation(2, rho)));
        CHECK(s.eigenvalues[0] == doctest::Approx(1.0 + std::abs(rho)).epsilon(1e-12));
        CHECK(s.eigenvalues[1] == doctest::Approx(1.0 - std::abs(rho)).epsilon(1e-12));
    }
}

TEST_CASE("jacobi spectrum matches the sturm oracle on random correlations") {
    Xoshiro256StarStar rng(46);
    const auto c = test::random_correlation(rng, 8, 30);
    const auto s = eigen_symmetric(c);
    const auto expected = oracle::sturm_eigenvalues(c.entries);

    REQUIRE(s.eigenvalues.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(std::abs(s.eigenvalues[i] - expected[i]) < 1e-7);
        if (i > 0) CHECK(s.eigenvalues[i - 1] >= s.eigenvalues[i]);
        CHECK(s.eigenvalues[i] > -1e-10);
    }
    CHECK(std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0) ==
          doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("eigenvectors are orthonormal and reconstruct the input") {
    Xoshiro256StarStar rng(47);
    const auto c = test::random_correlation(rng, 6, 24);
    const auto s = eigen_symmetric(c);
    const auto& v = s.eigenvectors;

    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            double dot = 0.0, recon = 0.0, cv = 0.0;
            for (std::size_t r = 0; r < 6; ++r) {
                dot += v(r, i) * v(r, j);
                recon += v(i, r) * s.eigenvalues[r] * v(j, r);
            }
            CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-8);
            CHECK(std::abs(recon - c.entries(i, j)) < 1e-8);
            // residual of C v_j - lambda_j v_j, component i
            for (std::size_t r = 0; r < 6; ++r) cv += c.entries(i, r) * v(r, j);
            CHECK(std::abs(cv - s.eigenvalues[j] * v(i, j)) < 1e-8);
        }
        // sign convention: first nonzero component positive
        for (std::size_t r = 0; r < 6; ++r) {
            if (std::abs(v(r, i)) > 1e-12) {
                CHECK(v(r, i) > 0.0);
                break;
            }
        }
    }
}

TEST_CASE("permuting assets permutes eigenvectors but not eigenvalues") {
    Xoshiro256StarStar rng(48);
    const auto values = test::random_normal_matrix(rng, 30, 5);
    const std::vector<std::size_t> perm{3, 0, 4, 1, 2};
    Matrix permuted(30, 5);
    for (std::size_t t = 0; t < 30; ++t)
        for (std::size_t i = 0; i < 5; ++i) permuted(t, i) = values(t, perm[i]);

    const auto r1 = test::make_returns(values);
    const auto r2 = test::make_returns(permuted);
    const auto s1 = eigen_symmetric(correlation(r1, r1.timestamps.back(), 30));
    const auto s2 = eigen_symmetric(correlation(r2, r2.timestamps.back(), 30));

    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(std::abs(s1.eigenvalues[k] - s2.eigenvalues[k]) < 1e-10);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(std::abs(std::abs(s2.eigenvectors(i, k)) -
                           std::abs(s1.eigenvectors(perm[i], k))) < 1e-8);
        }
    }
}

TEST_CASE("non-finite input is reported, not iterated on") {
    auto m = Matrix::identity(3);
    m(0, 1) = m(1, 0) = std::nan("");
    CHECK_THROWS_AS(eigen_symmetric(make_correlation(m)), NoConvergence);
}

TEST_CASE("normalized top sum closed forms") {
    const auto id = eigen_symmetric(make_correlation(Matrix::identity(4)));
    CHECK(normalized_top_sum(id, 4) == doctest::Approx(1.0).epsilon(1e-12));

    const auto rank1 = eigen_symmetric(make_correlation(equicorrelation(2, 1.0)));
    CHECK(normalized_top_sum(rank1, 1) == doctest::Approx(1.0).epsilon(1e-12));

    const double rho = 0.7;
    const auto s = eigen_symmetric(make_correlation(equicorrelation(2, rho)));
    CHECK(normalized_top_sum(s, 1) == doctest::Approx((1.0 + rho) / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS(normalized_top_sum(s, 0), Error);
    CHECK_THROWS_AS(normalized_top_sum(s, 3), Error);
}

TEST_CASE("rolling spectra of a perfectly coupled pair is constant 1") {
    Xoshiro256StarStar rng(49);
    Matrix values(30, 2);
    for (std::size_t t = 0; t < 30; ++t) {
        values(t, 0) = rng.standard_normal();
        values(t, 1) = 2.0 * values(t, 0);
    }
    const auto returns = test::make_returns(values);
    const auto out = rolling_spectra(returns, 12, 1);
    REQUIRE(out.lambda_sum.size() == 19);
    for (double v : out.lambda_sum) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.timestamps.front() == returns.timestamps[11]);
    CHECK(out.timestamps.back() == returns.timestamps.back());
}

TEST_CASE("rolling spectra match per-window recomputation") {
    Xoshiro256StarStar rng(50);
    const auto returns = test::make_returns(test::random_normal_matrix(rng, 60, 20));
    const auto out = rolling_spectra(returns, 24, 4);
    REQUIRE(out.lambda_sum.size() == 37);
    for (std::size_t w = 0; w < out.lambda_sum.size(); ++w) {
        CHECK(out.lambda_sum[w] > 4.0 / 20.0);
        CHECK(out.lambda_sum[w] <= 1.0 + 1e-12);
        const auto c = correlation(returns, out.timestamps[w], 24);
        const double expected = normalized_top_sum(eigen_symmetric(c), 4);
        CHECK(out.lambda_sum[w] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("rolling spectra window errors") {
    Xoshiro256StarStar rng(51);
    const auto returns = test::make_returns(test::random_normal_matrix(rng, 10, 2));
    CHECK_THROWS_AS(rolling_spectra(returns, 11, 1), WindowOutOfRange);
    CHECK_THROWS_AS(rolling_spectra(returns, 10, 3), Error);  // k > N
    CHECK_THROWS_AS(rolling_spectra(returns, 10, 1, 0), WindowOutOfRange);
}

TEST_CASE("stride thins the window grid") {
    Xoshiro256StarStar rng(52);
    const auto returns = test::make_returns(test::random_normal_matrix(rng, 20, 2));
    const auto dense = rolling_spectra(returns, 6, 1, 1);
    const auto sparse = rolling_spectra(returns, 6, 1, 3);
    REQUIRE(dense.lambda_sum.size() == 15);
    REQUIRE(sparse.lambda_sum.size() == 5);
    for (std::size_t i = 0; i < sparse.lambda_sum.size(); ++i) {
        CHECK(sparse.timestamps[i] == dense.timestamps[3 * i]);
        CHECK(sparse.lambda_sum[i] == dense.lambda_sum[3 * i]);
    }
}

TEST_CASE("spectrum dump lists one row per window") {
    Xoshiro256StarStar rng(53);
    const auto returns = test::make_returns(test::random_normal_matrix(rng, 10, 3));
    const auto csv = spectra_csv(rolling_eigen(returns, 8));
    CHECK(csv.find("window_end,lambda_1,lambda_2,lambda_3\n") == 0);
    CHECK(csv.find(to_string(returns.timestamps.back())) != std::string::npos);
}
