#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sysrisk/cars.hpp"

namespace sysrisk {

// Correlation-vs-lag curve. Every value is a true Pearson correlation: each
// overlap slice is de-meaned and scaled by its own statistics, so the curve
// is not forced to be Toeplitz.
struct LagCorrelation {
    std::vector<int> lags;         // 0..L for autocorrelation, -L..L for cross
    std::vector<double> values;
    std::vector<int> n_effective;  // overlap length per lag
    int argmax_lag = 0;

    double value_at(int lag) const;
    double max_value() const;
};

// value(l) = Pearson correlation between series[0..T-l) and series[l..T).
// Lag 0 is exactly 1.
LagCorrelation autocorrelation(std::span<const double> series, int max_lag);

// value(l) = Pearson correlation of a(t) with b(t+l) over the overlap;
// positive l means b lags a. Ties in the argmax prefer the lag closest to 0.
LagCorrelation cross_correlation(std::span<const double> a,
                                 std::span<const double> b, int max_lag);

// Smallest lag l >= 2 that is a strict interior local maximum with a positive
// value; nullopt when the curve has no such lag (e.g. pure decay).
std::optional<int> dominant_period(const LagCorrelation& lagcorr);

struct TimeSeries {
    std::vector<YearMonth> timestamps;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

// before = entries dated < split, after = entries dated >= split. The split
// must lie strictly inside the timestamp range so neither half is empty.
std::pair<TimeSeries, TimeSeries> split_series(const TimeSeries& series,
                                               const YearMonth& split);

struct Peak {
    YearMonth month;
    double value = 0.0;
    double prominence = 0.0;
};

struct PeakList {
    std::vector<Peak> peaks;  // sorted by month
};

// Interior local maxima with topographic prominence >= min_prominence.
// Prominence is measured against the higher of the two minima separating the
// peak from the nearest higher ground (or the series ends). Among peaks
// closer than min_separation months the larger survives, ties going to the
// earlier month.
PeakList detect_peaks(const TimeSeries& series, double min_prominence,
                      int min_separation);

// Peak detection on the CARS component of a risk series.
PeakList detect_peaks(const RiskSeries& risk, double min_prominence,
                      int min_separation);

std::string to_csv(const LagCorrelation& lagcorr);  // lag,value,n_effective
std::string to_csv(const PeakList& peaks);          // peak_date,value,prominence

}  // namespace sysrisk
