#include "sysrisk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "sysrisk/errors.hpp"

namespace sysrisk {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t Xoshiro256StarStar::next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Xoshiro256StarStar::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Xoshiro256StarStar::standard_normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]: keeps the log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double BetaSchedule::at(int month) const {
    double level = base;
    for (const auto& shift : shifts) {
        if (month >= shift.month) level = shift.beta;
    }
    if (sin_period > 0.0) {
        level += sin_amplitude *
                 std::sin(2.0 * std::numbers::pi * (static_cast<double>(month) - sin_phase) /
                          sin_period);
    }
    return level;
}

void validate(const SynthSpec& spec) {
    if (spec.n_assets < 2) {
        throw InvalidSpec("synth: 'assets' must be >= 2, got " +
                          std::to_string(spec.n_assets));
    }
    if (spec.n_months < 3) {
        throw InvalidSpec("synth: 'months' must be >= 3, got " +
                          std::to_string(spec.n_months));
    }
    if (!(spec.idiosyncratic_sigma > 0.0)) {
        throw InvalidSpec("synth: 'sigma' must be > 0");
    }
    if (spec.loading.sin_amplitude != 0.0 && !(spec.loading.sin_period > 0.0)) {
        throw InvalidSpec("synth: 'beta_sin_period' must be > 0 when a sinusoid is used");
    }
    int prev = -1;
    for (const auto& shift : spec.loading.shifts) {
        if (shift.month < 0 || shift.month >= spec.n_months) {
            throw InvalidSpec("synth: 'shift' month " + std::to_string(shift.month) +
                              " outside [0, " + std::to_string(spec.n_months) + ")");
        }
        if (shift.month <= prev) {
            throw InvalidSpec("synth: 'shift' months must be strictly increasing");
        }
        prev = shift.month;
    }
}

namespace {

std::vector<double> draw_factor(const SynthSpec& spec, Xoshiro256StarStar& rng) {
    std::vector<double> f(static_cast<std::size_t>(spec.n_months - 1));
    for (auto& x : f) x = rng.standard_normal();
    return f;
}

// Returns R_i(t) for return rows t (panel month t+1), then levels from 100.
PanelData build_panel(const SynthSpec& spec, const std::vector<double>& factor,
                      Xoshiro256StarStar& rng) {
    const std::size_t n_returns = factor.size();
    const std::size_t n = spec.n_assets;

    Matrix returns(n_returns, n);
    for (std::size_t t = 0; t < n_returns; ++t) {
        const double beta = spec.loading.at(static_cast<int>(t) + 1);
        for (std::size_t i = 0; i < n; ++i) {
            returns(t, i) = beta * factor[t] + spec.idiosyncratic_sigma * rng.standard_normal();
        }
    }

    PanelData panel;
    panel.kind = spec.kind;
    for (std::size_t i = 0; i < n; ++i) panel.asset_ids.push_back("A" + std::to_string(i + 1));
    panel.timestamps.resize(static_cast<std::size_t>(spec.n_months));
    for (int m = 0; m < spec.n_months; ++m)
        panel.timestamps[static_cast<std::size_t>(m)] = add_months(spec.start, m);
    panel.values = Matrix(static_cast<std::size_t>(spec.n_months), n);
    for (std::size_t i = 0; i < n; ++i) panel.values(0, i) = 100.0;
    for (std::size_t t = 1; t <= n_returns; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            panel.values(t, i) = panel.values(t - 1, i) * std::exp(returns(t - 1, i));
        }
    }
    return panel;
}

}  // namespace

PanelData generate(const SynthSpec& spec) {
    validate(spec);
    Xoshiro256StarStar rng(spec.seed);
    const auto factor = draw_factor(spec, rng);
    return build_panel(spec, factor, rng);
}

std::pair<PanelData, PanelData> generate_coupled_pair(const SynthSpec& spec_a,
                                                      const SynthSpec& spec_b,
                                                      int phase_offset, int coupling_start) {
    validate(spec_a);
    validate(spec_b);
    if (spec_a.n_months != spec_b.n_months) {
        throw InvalidSpec("synth: coupled panels need equal 'months' (" +
                          std::to_string(spec_a.n_months) + " vs " +
                          std::to_string(spec_b.n_months) + ")");
    }

    Xoshiro256StarStar rng_a(spec_a.seed);
    Xoshiro256StarStar rng_b(spec_b.seed);
    auto factor_a = draw_factor(spec_a, rng_a);
    auto factor_b = draw_factor(spec_b, rng_b);
    // Return row t carries panel month t+1; from coupling_start on, panel b
    // reuses panel a's factor delayed by phase_offset months. The pre-series
    // region of a delayed factor stays independent rather than being invented.
    for (std::size_t t = 0; t < factor_b.size(); ++t) {
        const int month = static_cast<int>(t) + 1;
        const int source = static_cast<int>(t) - phase_offset;
        if (month >= coupling_start && source >= 0 &&
            source < static_cast<int>(factor_a.size())) {
            factor_b[t] = factor_a[static_cast<std::size_t>(source)];
        }
    }
    return {build_panel(spec_a, factor_a, rng_a), build_panel(spec_b, factor_b, rng_b)};
}

namespace {

double parse_double_value(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (value.empty() || end != begin + value.size()) {
        throw InvalidSpec("synth: key '" + key + "': bad numeric value '" + value + "'");
    }
    return v;
}

long long parse_int_value(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    long long v = std::strtoll(begin, &end, 10);
    if (value.empty() || end != begin + value.size()) {
        throw InvalidSpec("synth: key '" + key + "': bad integer value '" + value + "'");
    }
    return v;
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    unsigned long long v = std::strtoull(begin, &end, 10);
    if (value.empty() || end != begin + value.size()) {
        throw InvalidSpec("synth: key '" + key + "': bad integer value '" + value + "'");
    }
    return v;
}

std::string trim_ws(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Applies one key to one spec. Returns false for keys it does not know.
bool apply_key(SynthSpec& spec, const std::string& key, const std::string& value) {
    if (key == "assets") {
        const long long v = parse_int_value(key, value);
        if (v < 0) throw InvalidSpec("synth: key 'assets': negative count");
        spec.n_assets = static_cast<std::size_t>(v);
    } else if (key == "months") {
        spec.n_months = static_cast<int>(parse_int_value(key, value));
    } else if (key == "seed") {
        spec.seed = parse_u64_value(key, value);
    } else if (key == "sigma") {
        spec.idiosyncratic_sigma = parse_double_value(key, value);
    } else if (key == "beta") {
        spec.loading.base = parse_double_value(key, value);
    } else if (key == "beta_sin_amplitude") {
        spec.loading.sin_amplitude = parse_double_value(key, value);
    } else if (key == "beta_sin_period") {
        spec.loading.sin_period = parse_double_value(key, value);
    } else if (key == "beta_sin_phase") {
        spec.loading.sin_phase = parse_double_value(key, value);
    } else if (key == "shift") {
        const std::size_t colon = value.find(':');
        if (colon == std::string::npos) {
            throw InvalidSpec("synth: key 'shift': expected MONTH:BETA, got '" + value + "'");
        }
        RegimeShift shift;
        shift.month = static_cast<int>(parse_int_value(key, value.substr(0, colon)));
        shift.beta = parse_double_value(key, value.substr(colon + 1));
        spec.loading.shifts.push_back(shift);
    } else if (key == "start") {
        auto ym = parse_year_month(value);
        if (!ym) throw InvalidSpec("synth: key 'start': bad month '" + value + "'");
        spec.start = *ym;
    } else if (key == "kind") {
        if (value == "price") {
            spec.kind = PanelKind::price;
        } else if (value == "yield") {
            spec.kind = PanelKind::yield_;
        } else {
            throw InvalidSpec("synth: key 'kind': expected price|yield, got '" + value + "'");
        }
    } else {
        return false;
    }
    return true;
}

}  // namespace

SynthConfig parse_synth_config(std::string_view text) {
    SynthSpec spec_a;
    SynthSpec spec_b;
    bool pair_mode = false;
    int phase_offset = 0;
    int coupling_start = 0;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string line(eol == std::string_view::npos ? text.substr(pos)
                                                       : text.substr(pos, eol - pos));
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        line = trim_ws(line);
        if (line.empty() || line.front() == '#') continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidSpec("synth: line " + std::to_string(line_no) +
                              ": expected key=value, got '" + line + "'");
        }
        std::string key = trim_ws(line.substr(0, eq));
        const std::string value = trim_ws(line.substr(eq + 1));

        if (key == "coupling_start") {
            coupling_start = static_cast<int>(parse_int_value(key, value));
            pair_mode = true;
            continue;
        }
        if (key == "phase_offset") {
            phase_offset = static_cast<int>(parse_int_value(key, value));
            pair_mode = true;
            continue;
        }

        bool handled = false;
        if (key.rfind("a.", 0) == 0) {
            handled = apply_key(spec_a, key.substr(2), value);
        } else if (key.rfind("b.", 0) == 0) {
            handled = apply_key(spec_b, key.substr(2), value);
            pair_mode = true;
        } else {
            // Shared keys configure both panels of a pair.
            handled = apply_key(spec_a, key, value);
            if (handled) apply_key(spec_b, key, value);
        }
        if (!handled) {
            throw InvalidSpec("synth: unknown key '" + key + "'");
        }
    }

    SynthConfig cfg;
    cfg.a = std::move(spec_a);
    if (pair_mode) {
        cfg.b = std::move(spec_b);
        cfg.phase_offset = phase_offset;
        cfg.coupling_start = coupling_start;
        validate(cfg.a);
        validate(*cfg.b);
    } else {
        validate(cfg.a);
    }
    return cfg;
}

}  // namespace sysrisk
