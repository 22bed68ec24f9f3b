#include "sysrisk/signal.hpp"

#include <algorithm>
#include <cmath>

#include "sysrisk/errors.hpp"

namespace sysrisk {

namespace {

bool is_constant(std::span<const double> s) {
    for (double v : s)
        if (v != s.front()) return false;
    return true;
}

// Pearson correlation with each slice de-meaned and scaled by its own
// population statistics.
double pearson(std::span<const double> x, std::span<const double> y, int lag) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ConstantSeries("lag correlation: zero-variance overlap at lag " +
                             std::to_string(lag));
    }
    return sxy / std::sqrt(sxx * syy);
}

// Largest value wins; ties prefer the lag closest to zero, then the smaller lag.
int select_argmax(const std::vector<int>& lags, const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const bool better =
            values[i] > values[best] ||
            (values[i] == values[best] &&
             (std::abs(lags[i]) < std::abs(lags[best]) ||
              (std::abs(lags[i]) == std::abs(lags[best]) && lags[i] < lags[best])));
        if (better) best = i;
    }
    return lags[best];
}

}  // namespace

double LagCorrelation::value_at(int lag) const {
    for (std::size_t i = 0; i < lags.size(); ++i)
        if (lags[i] == lag) return values[i];
    throw Error("LagCorrelation: lag " + std::to_string(lag) + " not present");
}

double LagCorrelation::max_value() const { return value_at(argmax_lag); }

LagCorrelation autocorrelation(std::span<const double> series, int max_lag) {
    if (max_lag < 0) throw LagTooLarge("autocorrelation: negative max_lag");
    if (series.size() <= static_cast<std::size_t>(max_lag) + 2) {
        throw LagTooLarge("autocorrelation: need length > max_lag + 2 (length " +
                          std::to_string(series.size()) + ", max_lag " +
                          std::to_string(max_lag) + ")");
    }
    if (is_constant(series)) {
        throw ConstantSeries("autocorrelation: series is constant");
    }

    LagCorrelation out;
    for (int lag = 0; lag <= max_lag; ++lag) {
        out.lags.push_back(lag);
        out.n_effective.push_back(static_cast<int>(series.size()) - lag);
        if (lag == 0) {
            out.values.push_back(1.0);
            continue;
        }
        const std::size_t overlap = series.size() - static_cast<std::size_t>(lag);
        out.values.push_back(pearson(series.subspan(0, overlap),
                                     series.subspan(static_cast<std::size_t>(lag), overlap),
                                     lag));
    }
    out.argmax_lag = select_argmax(out.lags, out.values);
    return out;
}

LagCorrelation cross_correlation(std::span<const double> a, std::span<const double> b,
                                 int max_lag) {
    if (a.size() != b.size()) {
        throw MisalignedInputs("cross_correlation: lengths differ (" +
                               std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                               ")");
    }
    if (max_lag < 0) throw LagTooLarge("cross_correlation: negative max_lag");
    if (a.size() <= static_cast<std::size_t>(max_lag) + 2) {
        throw LagTooLarge("cross_correlation: need length > max_lag + 2 (length " +
                          std::to_string(a.size()) + ", max_lag " + std::to_string(max_lag) +
                          ")");
    }
    if (is_constant(a) || is_constant(b)) {
        throw ConstantSeries("cross_correlation: input series is constant");
    }

    LagCorrelation out;
    for (int lag = -max_lag; lag <= max_lag; ++lag) {
        const std::size_t shift = static_cast<std::size_t>(std::abs(lag));
        const std::size_t overlap = a.size() - shift;
        // value(l) correlates a(t) with b(t+l) over the overlap.
        std::span<const double> x = lag >= 0 ? a.subspan(0, overlap) : a.subspan(shift, overlap);
        std::span<const double> y = lag >= 0 ? b.subspan(shift, overlap) : b.subspan(0, overlap);
        out.lags.push_back(lag);
        out.n_effective.push_back(static_cast<int>(overlap));
        out.values.push_back(pearson(x, y, lag));
    }
    out.argmax_lag = select_argmax(out.lags, out.values);
    return out;
}

std::optional<int> dominant_period(const LagCorrelation& lagcorr) {
    // First strict interior local maximum at lag >= 2 with positive value,
    // read off the curve the way one reads the figure.
    for (std::size_t i = 1; i + 1 < lagcorr.lags.size(); ++i) {
        if (lagcorr.lags[i] < 2) continue;
        const double v = lagcorr.values[i];
        if (v > 0.0 && v > lagcorr.values[i - 1] && v > lagcorr.values[i + 1]) {
            return lagcorr.lags[i];
        }
    }
    return std::nullopt;
}

std::pair<TimeSeries, TimeSeries> split_series(const TimeSeries& series,
                                               const YearMonth& split) {
    if (series.size() == 0) throw SplitOutOfRange("split_series: empty series");
    if (!(series.timestamps.front() < split) || split > series.timestamps.back()) {
        throw SplitOutOfRange("split_series: " + to_string(split) +
                              " is not strictly inside [" +
                              to_string(series.timestamps.front()) + ", " +
                              to_string(series.timestamps.back()) + "]");
    }
    TimeSeries before, after;
    for (std::size_t i = 0; i < series.size(); ++i) {
        auto& half = series.timestamps[i] < split ? before : after;
        half.timestamps.push_back(series.timestamps[i]);
        half.values.push_back(series.values[i]);
    }
    return {std::move(before), std::move(after)};
}

PeakList detect_peaks(const TimeSeries& series, double min_prominence,
                      int min_separation) {
    const auto& v = series.values;
    if (v.size() < 3) {
        throw SeriesTooShort("detect_peaks: need at least 3 entries, got " +
                             std::to_string(v.size()));
    }

    struct Candidate {
        std::size_t index;
        double value;
        double prominence;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (!(v[i] > v[i - 1] && v[i] > v[i + 1])) continue;
        // Topographic prominence: on each side, the minimum between the peak
        // and the nearest strictly higher point (or the series end); the base
        // is the higher of the two minima.
        double left_min = v[i];
        for (std::size_t j = i; j-- > 0;) {
            if (v[j] > v[i]) break;
            left_min = std::min(left_min, v[j]);
        }
        double right_min = v[i];
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[j] > v[i]) break;
            right_min = std::min(right_min, v[j]);
        }
        const double prominence = v[i] - std::max(left_min, right_min);
        if (prominence >= min_prominence) candidates.push_back({i, v[i], prominence});
    }

    // Larger peaks claim their neighborhood first; ties go to the earlier month.
    std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        return a.value > b.value || (a.value == b.value && a.index < b.index);
    });
    std::vector<Candidate> kept;
    for (const auto& c : candidates) {
        const bool clashes = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
            const auto distance = months_between(series.timestamps[std::min(c.index, k.index)],
                                                 series.timestamps[std::max(c.index, k.index)]);
            return distance < min_separation;
        });
        if (!clashes) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(),
              [](const auto& a, const auto& b) { return a.index < b.index; });

    PeakList out;
    for (const auto& k : kept) {
        out.peaks.push_back({series.timestamps[k.index], k.value, k.prominence});
    }
    return out;
}

PeakList detect_peaks(const RiskSeries& risk, double min_prominence, int min_separation) {
    return detect_peaks(TimeSeries{risk.cars_timestamps(), risk.cars}, min_prominence,
                        min_separation);
}

std::string to_csv(const LagCorrelation& lagcorr) {
    std::string out = "lag,value,n_effective\n";
    for (std::size_t i = 0; i < lagcorr.lags.size(); ++i) {
        out += std::to_string(lagcorr.lags[i]);
        out += ',';
        out += format_double(lagcorr.values[i]);
        out += ',';
        out += std::to_string(lagcorr.n_effective[i]);
        out += '\n';
    }
    return out;
}

std::string to_csv(const PeakList& peaks) {
    std::string out = "peak_date,value,prominence\n";
    for (const auto& p : peaks.peaks) {
        out += to_string(p.month);
        out += ',';
        out += format_double(p.value);
        out += ',';
        out += format_double(p.prominence);
        out += '\n';
    }
    return out;
}

}  // namespace sysrisk
