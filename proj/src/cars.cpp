#include "sysrisk/cars.hpp"

#include <algorithm>

#include "sysrisk/errors.hpp"

namespace sysrisk {

std::string to_string(CarsMode mode) {
    return mode == CarsMode::telescoping ? "telescoping" : "flat";
}

std::vector<double> time_derivative(std::span<const double> series) {
    if (series.size() < 2) {
        throw SeriesTooShort("time_derivative: need at least 2 entries, got " +
                             std::to_string(series.size()));
    }
    std::vector<double> out(series.size() - 1);
    for (std::size_t t = 1; t < series.size(); ++t) out[t - 1] = series[t] - series[t - 1];
    return out;
}

std::vector<double> cars(std::span<const double> lambda_dot, int window, CarsMode mode) {
    if (window < 1) {
        throw InvalidWindow("cars: window must be >= 1, got " + std::to_string(window));
    }
    const std::size_t w = static_cast<std::size_t>(window);

    // harmonic[j] = H_j; an event of age j carries weight H_w - H_j, the sum
    // of 1/k over the nominal window lengths k = j+1..w that contain it.
    std::vector<double> harmonic(w + 1, 0.0);
    for (std::size_t j = 1; j <= w; ++j) harmonic[j] = harmonic[j - 1] + 1.0 / static_cast<double>(j);

    std::vector<double> out(lambda_dot.size(), 0.0);
    for (std::size_t t = 0; t < lambda_dot.size(); ++t) {
        const std::size_t depth = std::min(w, t + 1);
        double sum = 0.0;
        for (std::size_t j = 0; j < depth; ++j) {
            const double event = lambda_dot[t - j];
            if (event > 0.0) {
                sum += mode == CarsMode::telescoping
                           ? event * (harmonic[w] - harmonic[j])
                           : event / static_cast<double>(w);
            }
        }
        out[t] = sum;
    }
    return out;
}

RiskSeries risk_series(const ReturnMatrix& returns, const RiskConfig& config) {
    RiskConfig resolved = config;
    resolved.cars_window = config.effective_cars_window();

    const auto input = rolling_spectra(returns, resolved.window_len, resolved.top_k,
                                       resolved.stride);
    if (input.lambda_sum.size() < 2) {
        throw SeriesTooShort("risk_series: only " + std::to_string(input.lambda_sum.size()) +
                             " window(s); need at least 2 for the derivative");
    }

    RiskSeries out;
    out.config = resolved;
    out.timestamps = input.timestamps;
    out.lambda_sum = input.lambda_sum;
    out.lambda_dot = time_derivative(out.lambda_sum);
    out.cars = cars(out.lambda_dot, resolved.cars_window, resolved.mode);
    return out;
}

std::string to_csv(const RiskSeries& series) {
    std::string out;
    out += "# window=" + std::to_string(series.config.window_len) + "\n";
    out += "# top_k=" + std::to_string(series.config.top_k) + "\n";
    out += "# cars_window=" + std::to_string(series.config.cars_window) + "\n";
    out += "# cars_mode=" + to_string(series.config.mode) + "\n";
    out += "date,lambda_sum,lambda_dot,cars\n";
    for (std::size_t t = 0; t < series.timestamps.size(); ++t) {
        out += to_string(series.timestamps[t]);
        out += ',';
        out += format_double(series.lambda_sum[t]);
        out += ',';
        if (t > 0) out += format_double(series.lambda_dot[t - 1]);
        out += ',';
        if (t > 0) out += format_double(series.cars[t - 1]);
        out += '\n';
    }
    return out;
}

}  // namespace sysrisk
