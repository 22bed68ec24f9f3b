#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sysrisk/panel.hpp"

namespace sysrisk {

// xoshiro256** seeded through splitmix64. The algorithm and its constants are
// part of the external contract: identical (spec, seed) must give identical
// panels on every platform, so the platform-default engines are off limits.
class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed);

    std::uint64_t next();

    // 53-bit uniform in [0, 1).
    double uniform01();

    // Box-Muller transform; consumes exactly two uniforms per draw.
    double standard_normal();

private:
    std::uint64_t state_[4];
};

// Factor loading applied at a given month index: base level (switchable by
// regime shifts) plus an optional sinusoidal component.
struct RegimeShift {
    int month = 0;  // panel row index; months >= this use the new base
    double beta = 0.0;
};

struct BetaSchedule {
    double base = 0.5;
    double sin_amplitude = 0.0;
    double sin_period = 0.0;  // months; 0 disables the sinusoid
    double sin_phase = 0.0;   // months
    std::vector<RegimeShift> shifts;

    double at(int month) const;
};

// One-factor synthetic panel: returns R_i(t) = beta(t) * F(t) + sigma * Z_i(t)
// with F and Z independent standard normals, levels rebuilt from 100.0 by
// cumulative exponentiation so compute_returns(log_return) inverts exactly.
struct SynthSpec {
    std::size_t n_assets = 10;
    int n_months = 240;  // panel rows; the panel carries n_months - 1 returns
    std::uint64_t seed = 1;
    BetaSchedule loading;
    double idiosyncratic_sigma = 1.0;
    YearMonth start{2000, 1};
    PanelKind kind = PanelKind::price;
};

void validate(const SynthSpec& spec);  // throws InvalidSpec

PanelData generate(const SynthSpec& spec);

// Two panels sharing one factor process after `coupling_start` (a panel row
// index): before it the factors are independent; from it on, panel b's factor
// is panel a's factor delayed by `phase_offset` months. Panel a is identical
// to generate(spec_a). A coupling_start at or beyond the series end produces
// two independent panels.
std::pair<PanelData, PanelData> generate_coupled_pair(const SynthSpec& spec_a,
                                                      const SynthSpec& spec_b,
                                                      int phase_offset,
                                                      int coupling_start);

// Flat key=value synth configuration. Shared keys apply to both panels of a
// pair; `a.` / `b.` prefixes override per panel. `coupling_start` switches to
// pair mode.
//
//   assets=20 months=240 seed=7 sigma=0.5 start=2000-01 kind=price
//   beta=0.2 beta_sin_amplitude=0.45 beta_sin_period=17 beta_sin_phase=0
//   shift=120:0.9            (repeatable)
//   coupling_start=120 phase_offset=5
struct SynthConfig {
    SynthSpec a;
    std::optional<SynthSpec> b;
    int phase_offset = 0;
    int coupling_start = 0;

    bool is_pair() const { return b.has_value(); }
};

SynthConfig parse_synth_config(std::string_view text);

}  // namespace sysrisk
