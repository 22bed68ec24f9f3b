#pragma once

#include <span>
#include <string>
#include <vector>

#include "sysrisk/spectra.hpp"

namespace sysrisk {

// Backward first difference, output(t) = input(t) - input(t-1), with the
// monthly step treated as dt = 1. Length shrinks by one.
std::vector<double> time_derivative(std::span<const double> series);

enum class CarsMode { telescoping, flat };

std::string to_string(CarsMode mode);

// Conditional average rolling sum of the positive derivative events.
//
// In telescoping mode the rolling family at month t consists of the trailing
// windows of nominal lengths 1..w ending at t, each normalized by its nominal
// length and clipped to the start of the series. A positive event of age j
// therefore carries weight H_w - H_j (harmonic numbers, H_0 = 0): the newest
// event weighs most and events fade out after w months, which is the memory
// effect the indicator is built around.
//
// Flat mode keeps a single trailing window of nominal length w:
// cars(t) = (1/w) * sum of positive events over the last w months.
std::vector<double> cars(std::span<const double> lambda_dot, int window,
                         CarsMode mode = CarsMode::telescoping);

struct RiskConfig {
    int window_len = 36;    // correlation window, months
    std::size_t top_k = 4;  // eigenvalues entering the tracked sum
    int cars_window = 0;    // 0 means "same as window_len"
    CarsMode mode = CarsMode::telescoping;
    int stride = 1;

    int effective_cars_window() const {
        return cars_window > 0 ? cars_window : window_len;
    }
};

// lambda_sum(t) per window end; lambda_dot and cars start one month later
// (lambda_dot[i] and cars[i] belong to timestamps[i+1]). cars(t) uses
// information up to and including t only.
struct RiskSeries {
    std::vector<YearMonth> timestamps;
    std::vector<double> lambda_sum;
    std::vector<double> lambda_dot;
    std::vector<double> cars;
    RiskConfig config;

    std::vector<YearMonth> cars_timestamps() const {
        return {timestamps.begin() + 1, timestamps.end()};
    }
};

// rolling_spectra -> time_derivative -> cars, with aligned timestamps.
RiskSeries risk_series(const ReturnMatrix& returns, const RiskConfig& config = {});

// `date,lambda_sum,lambda_dot,cars`; the first row has no derivative and
// leaves those two fields empty. Comment lines echo the config.
std::string to_csv(const RiskSeries& series);

}  // namespace sysrisk
