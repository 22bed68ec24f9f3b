#include "sysrisk/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sysrisk/errors.hpp"

namespace sysrisk {

namespace {

// Index of the window-end month inside the return series.
std::size_t window_end_index(const ReturnMatrix& returns, const YearMonth& window_end) {
    auto it = std::lower_bound(returns.timestamps.begin(), returns.timestamps.end(),
                               window_end);
    if (it == returns.timestamps.end() || *it != window_end) {
        throw WindowOutOfRange("correlation: window end " + to_string(window_end) +
                               " is not in the return series");
    }
    return static_cast<std::size_t>(it - returns.timestamps.begin());
}

CorrelationMatrix correlation_at(const ReturnMatrix& returns, std::size_t end_index,
                                 int window_len) {
    if (window_len < 3) {
        throw WindowOutOfRange("correlation: window_len must be >= 3, got " +
                               std::to_string(window_len));
    }
    const std::size_t len = static_cast<std::size_t>(window_len);
    if (end_index + 1 < len) {
        throw WindowOutOfRange("correlation: window of " + std::to_string(window_len) +
                               " months ending at " +
                               to_string(returns.timestamps[end_index]) +
                               " starts before the return series");
    }
    const std::size_t begin = end_index + 1 - len;
    const std::size_t n = returns.n_assets();

    std::vector<double> mean(n, 0.0), sd(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t t = begin; t <= end_index; ++t) s += returns.values(t, i);
        mean[i] = s / static_cast<double>(len);
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool constant = true;
        const double first = returns.values(begin, i);
        double ss = 0.0;
        for (std::size_t t = begin; t <= end_index; ++t) {
            const double d = returns.values(t, i) - mean[i];
            ss += d * d;
            if (returns.values(t, i) != first) constant = false;
        }
        sd[i] = std::sqrt(ss / static_cast<double>(len));
        if (constant || sd[i] == 0.0) {
            throw ZeroVariance("correlation: asset '" + returns.asset_ids[i] +
                               "' is constant over the window ending at " +
                               to_string(returns.timestamps[end_index]));
        }
    }

    CorrelationMatrix c;
    c.n = n;
    c.window_end = returns.timestamps[end_index];
    c.window_len = window_len;
    c.entries = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        c.entries(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double cov = 0.0;
            for (std::size_t t = begin; t <= end_index; ++t) {
                cov += (returns.values(t, i) - mean[i]) * (returns.values(t, j) - mean[j]);
            }
            cov /= static_cast<double>(len);
            const double r = cov / (sd[i] * sd[j]);
            c.entries(i, j) = r;
            c.entries(j, i) = r;
        }
    }
    return c;
}

double offdiag_norm(const Matrix& a) {
    double ss = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) ss += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(ss);
}

}  // namespace

CorrelationMatrix correlation(const ReturnMatrix& returns, const YearMonth& window_end,
                              int window_len) {
    return correlation_at(returns, window_end_index(returns, window_end), window_len);
}

EigenSpectrum eigen_symmetric(const CorrelationMatrix& c) {
    const std::size_t n = c.n;
    Matrix a = c.entries;
    Matrix v = Matrix::identity(n);

    for (double x : a.data()) {
        if (!std::isfinite(x)) {
            throw NoConvergence("eigen_symmetric: non-finite entry in input matrix");
        }
    }

    const double tol = 1e-12 * static_cast<double>(n);
    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (offdiag_norm(a) < tol) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e154) {
                    t = 1.0 / (2.0 * theta);  // avoid theta^2 overflow
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double cos_r = 1.0 / std::sqrt(t * t + 1.0);
                const double sin_r = t * cos_r;
                const double tau = sin_r / (1.0 + cos_r);

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = arp - sin_r * (arq + tau * arp);
                    a(p, r) = a(r, p);
                    a(r, q) = arq + sin_r * (arp - tau * arq);
                    a(q, r) = a(r, q);
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = vrp - sin_r * (vrq + tau * vrp);
                    v(r, q) = vrq + sin_r * (vrp - tau * vrq);
                }
            }
        }
    }
    if (!converged && offdiag_norm(a) >= tol) {
        throw NoConvergence("eigen_symmetric: no convergence after " +
                            std::to_string(kMaxSweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenSpectrum s;
    s.window_end = c.window_end;
    s.eigenvalues.resize(n);
    s.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        s.eigenvalues[k] = a(order[k], order[k]);
        double sign = 1.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double x = v(r, order[k]);
            if (std::abs(x) > 1e-12) {
                sign = x < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        for (std::size_t r = 0; r < n; ++r) s.eigenvectors(r, k) = sign * v(r, order[k]);
    }
    return s;
}

double normalized_top_sum(const EigenSpectrum& spectrum, std::size_t k) {
    const std::size_t n = spectrum.size();
    if (k < 1 || k > n) {
        throw Error("normalized_top_sum: k=" + std::to_string(k) +
                    " outside [1, " + std::to_string(n) + "]");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += spectrum.eigenvalues[i];
    return sum / static_cast<double>(n);
}

std::vector<EigenSpectrum> rolling_eigen(const ReturnMatrix& returns, int window_len,
                                         int stride) {
    if (window_len < 3) {
        throw WindowOutOfRange("rolling_spectra: window_len must be >= 3, got " +
                               std::to_string(window_len));
    }
    if (stride < 1) {
        throw WindowOutOfRange("rolling_spectra: stride must be >= 1, got " +
                               std::to_string(stride));
    }
    const std::size_t len = static_cast<std::size_t>(window_len);
    if (returns.n_rows() < len) {
        throw WindowOutOfRange("rolling_spectra: window_len " + std::to_string(window_len) +
                               " exceeds return series length " +
                               std::to_string(returns.n_rows()));
    }
    std::vector<EigenSpectrum> out;
    for (std::size_t end = len - 1; end < returns.n_rows();
         end += static_cast<std::size_t>(stride)) {
        out.push_back(eigen_symmetric(correlation_at(returns, end, window_len)));
    }
    return out;
}

RiskSeriesInput rolling_spectra(const ReturnMatrix& returns, int window_len, std::size_t k,
                                int stride) {
    const auto spectra = rolling_eigen(returns, window_len, stride);
    RiskSeriesInput out;
    out.window_len = window_len;
    out.top_k = k;
    out.stride = stride;
    out.timestamps.reserve(spectra.size());
    out.lambda_sum.reserve(spectra.size());
    for (const auto& s : spectra) {
        out.timestamps.push_back(s.window_end);
        out.lambda_sum.push_back(normalized_top_sum(s, k));
    }
    return out;
}

std::string spectra_csv(const std::vector<EigenSpectrum>& windows) {
    std::string out = "window_end";
    if (!windows.empty()) {
        for (std::size_t i = 1; i <= windows.front().size(); ++i)
            out += ",lambda_" + std::to_string(i);
    }
    out += '\n';
    for (const auto& s : windows) {
        out += to_string(s.window_end);
        for (double ev : s.eigenvalues) {
            out += ',';
            out += format_double(ev);
        }
        out += '\n';
    }
    return out;
}

}  // namespace sysrisk
