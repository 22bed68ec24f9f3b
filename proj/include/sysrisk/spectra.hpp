#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sysrisk/returns.hpp"

namespace sysrisk {

// Correlation of the trailing `window_len` return rows ending at `window_end`.
// Diagonal is 1 exactly; the matrix is symmetrized by construction.
struct CorrelationMatrix {
    std::size_t n = 0;
    Matrix entries;  // n x n
    YearMonth window_end;
    int window_len = 0;
};

// Full spectrum of one correlation window. Eigenvalues descending, column i
// of `eigenvectors` pairs with eigenvalues[i]; each column's first nonzero
// component is positive so output is reproducible.
struct EigenSpectrum {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    YearMonth window_end;

    std::size_t size() const { return eigenvalues.size(); }
};

// Pearson correlation with population (1/n) normalization; the 1/n vs
// 1/(n-1) choice cancels in the ratio. A constant asset inside the window is
// a ZeroVariance error, not a silent NaN.
CorrelationMatrix correlation(const ReturnMatrix& returns,
                              const YearMonth& window_end, int window_len);

// Cyclic Jacobi rotations; sweeps until the off-diagonal Frobenius norm drops
// below 1e-12 * n, NoConvergence after 100 sweeps.
EigenSpectrum eigen_symmetric(const CorrelationMatrix& c);

// Sum of the k largest eigenvalues divided by N. For a correlation matrix
// this lies in (0, 1].
double normalized_top_sum(const EigenSpectrum& spectrum, std::size_t k);

struct RiskSeriesInput {
    std::vector<YearMonth> timestamps;  // window-end months
    std::vector<double> lambda_sum;     // top-k normalized eigenvalue sum
    int window_len = 0;
    std::size_t top_k = 0;
    int stride = 1;
};

// One spectrum per window end, windows advancing by `stride` months
// (fully overlapping by default).
std::vector<EigenSpectrum> rolling_eigen(const ReturnMatrix& returns,
                                         int window_len, int stride = 1);

RiskSeriesInput rolling_spectra(const ReturnMatrix& returns, int window_len,
                                std::size_t k, int stride = 1);

// Per-window spectrum dump: `window_end,lambda_1,...,lambda_N`.
std::string spectra_csv(const std::vector<EigenSpectrum>& windows);

}  // namespace sysrisk
