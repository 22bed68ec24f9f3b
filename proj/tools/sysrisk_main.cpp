// Command-line front end: ingestion -> returns -> rolling spectra -> CARS ->
// signal analysis, emitting plot-ready CSV. Exit codes: 0 success, 1 user or
// data error, 2 internal failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

#include "sysrisk/cars.hpp"
#include "sysrisk/errors.hpp"
#include "sysrisk/panel.hpp"
#include "sysrisk/returns.hpp"
#include "sysrisk/signal.hpp"
#include "sysrisk/synth.hpp"

namespace fs = std::filesystem;
using namespace sysrisk;

namespace {

struct RunOptions {
    std::string input;
    std::string input2;
    std::string operator_name = "log";
    std::string missing = "reject";
    std::string kind = "price";
    int window = 36;
    int top_k = 4;
    int cars_window = 0;  // 0: same as window
    std::string cars_mode = "telescoping";
    int max_lag = 36;
    std::string split = "2010-01";
    std::string out_dir = ".";
    double min_prominence = 0.0;
    int min_separation = 1;
    bool dump_spectra = false;
};

ReturnOperator parse_operator(const std::string& name) {
    if (name == "log") return ReturnOperator::log_return;
    if (name == "diff") return ReturnOperator::first_difference;
    throw Error("unknown operator '" + name + "' (expected log|diff)");
}

MissingPolicy parse_missing(const std::string& name) {
    if (name == "reject") return MissingPolicy::reject;
    if (name == "ffill") return MissingPolicy::forward_fill;
    if (name == "drop") return MissingPolicy::drop_asset;
    throw Error("unknown missing policy '" + name + "' (expected reject|ffill|drop)");
}

PanelKind parse_kind(const std::string& name) {
    if (name == "price") return PanelKind::price;
    if (name == "yield") return PanelKind::yield_;
    throw Error("unknown kind '" + name + "' (expected price|yield)");
}

CarsMode parse_cars_mode(const std::string& name) {
    if (name == "telescoping") return CarsMode::telescoping;
    if (name == "flat") return CarsMode::flat;
    throw Error("unknown cars mode '" + name + "' (expected telescoping|flat)");
}

YearMonth parse_split(const std::string& text) {
    const auto ym = parse_year_month(text);
    if (!ym) throw Error("bad --split month '" + text + "' (expected YYYY-MM)");
    return *ym;
}

RiskConfig risk_config(const RunOptions& opt) {
    RiskConfig cfg;
    cfg.window_len = opt.window;
    cfg.top_k = static_cast<std::size_t>(opt.top_k);
    cfg.cars_window = opt.cars_window;
    cfg.mode = parse_cars_mode(opt.cars_mode);
    return cfg;
}

// Comment block reconstructing the run configuration; every output file
// starts with it so any result is reproducible from its own header.
std::string config_header(const std::string& command, const RunOptions& opt,
                          bool with_risk_fields) {
    std::string h;
    h += "# command=" + command + "\n";
    h += "# input=" + opt.input + "\n";
    if (!opt.input2.empty()) h += "# input2=" + opt.input2 + "\n";
    h += "# kind=" + opt.kind + "\n";
    h += "# operator=" + to_string(parse_operator(opt.operator_name)) + "\n";
    h += "# missing=" + opt.missing + "\n";
    if (with_risk_fields) {
        h += "# window=" + std::to_string(opt.window) + "\n";
        h += "# top_k=" + std::to_string(opt.top_k) + "\n";
        h += "# cars_window=" + std::to_string(risk_config(opt).effective_cars_window()) + "\n";
        h += "# cars_mode=" + opt.cars_mode + "\n";
    }
    h += "# max_lag=" + std::to_string(opt.max_lag) + "\n";
    h += "# split=" + opt.split + "\n";
    h += "# min_prominence=" + format_double(opt.min_prominence) + "\n";
    h += "# min_separation=" + std::to_string(opt.min_separation) + "\n";
    return h;
}

RiskSeries run_pipeline(const std::string& path, const RunOptions& opt) {
    const auto panel = load_panel_csv(path, {parse_kind(opt.kind)}, parse_missing(opt.missing));
    const auto returns = compute_returns(panel, parse_operator(opt.operator_name));
    return risk_series(returns, risk_config(opt));
}

void write_analysis_files(const RiskSeries& risk, const RunOptions& opt,
                          const std::string& command) {
    fs::create_directories(opt.out_dir);
    const auto dir = fs::path(opt.out_dir);

    write_file((dir / "risk_series.csv").string(),
               config_header(command, opt, false) + to_csv(risk));

    const auto peaks = detect_peaks(risk, opt.min_prominence, opt.min_separation);
    write_file((dir / "peaks.csv").string(),
               config_header(command, opt, true) + to_csv(peaks));

    if (opt.dump_spectra) {
        const auto panel =
            load_panel_csv(opt.input, {parse_kind(opt.kind)}, parse_missing(opt.missing));
        const auto returns = compute_returns(panel, parse_operator(opt.operator_name));
        write_file((dir / "spectra.csv").string(),
                   config_header(command, opt, true) +
                       spectra_csv(rolling_eigen(returns, opt.window)));
    }
}

int cmd_analyze(const RunOptions& opt) {
    const auto risk = run_pipeline(opt.input, opt);
    write_analysis_files(risk, opt, "analyze");
    return 0;
}

int cmd_autocorr(const RunOptions& opt) {
    const auto risk = run_pipeline(opt.input, opt);
    write_analysis_files(risk, opt, "autocorr");

    const auto lagcorr = autocorrelation(risk.cars, opt.max_lag);
    const auto period = dominant_period(lagcorr);

    std::string body = config_header("autocorr", opt, true);
    body += "# dominant_period=" + (period ? std::to_string(*period) : std::string("none")) + "\n";
    body += to_csv(lagcorr);
    write_file((fs::path(opt.out_dir) / "autocorr.csv").string(), body);
    return 0;
}

int cmd_crosscorr(const RunOptions& opt) {
    if (opt.input2.empty()) throw Error("crosscorr requires --input2");
    const auto risk_a = run_pipeline(opt.input, opt);
    const auto risk_b = run_pipeline(opt.input2, opt);

    // Align the two CARS series on their common months.
    const TimeSeries cars_a{risk_a.cars_timestamps(), risk_a.cars};
    const TimeSeries cars_b{risk_b.cars_timestamps(), risk_b.cars};
    const YearMonth lo = std::max(cars_a.timestamps.front(), cars_b.timestamps.front());
    const YearMonth hi = std::min(cars_a.timestamps.back(), cars_b.timestamps.back());
    if (hi < lo) {
        throw NoCommonTimestamps("crosscorr: inputs share no months (" +
                                 to_string(cars_a.timestamps.front()) + ".." +
                                 to_string(cars_a.timestamps.back()) + " vs " +
                                 to_string(cars_b.timestamps.front()) + ".." +
                                 to_string(cars_b.timestamps.back()) + ")");
    }
    auto slice = [&](const TimeSeries& s) {
        TimeSeries out;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.timestamps[i] >= lo && s.timestamps[i] <= hi) {
                out.timestamps.push_back(s.timestamps[i]);
                out.values.push_back(s.values[i]);
            }
        }
        return out;
    };
    const auto common_a = slice(cars_a);
    const auto common_b = slice(cars_b);

    const auto split = parse_split(opt.split);
    const auto [before_a, after_a] = split_series(common_a, split);
    const auto [before_b, after_b] = split_series(common_b, split);

    fs::create_directories(opt.out_dir);
    const auto emit = [&](const char* name, const TimeSeries& a, const TimeSeries& b) {
        const auto lagcorr = cross_correlation(a.values, b.values, opt.max_lag);
        std::string body = config_header("crosscorr", opt, true);
        body += "# range=" + to_string(a.timestamps.front()) + ".." +
                to_string(a.timestamps.back()) + "\n";
        body += "# argmax_lag=" + std::to_string(lagcorr.argmax_lag) + "\n";
        body += to_csv(lagcorr);
        write_file((fs::path(opt.out_dir) / name).string(), body);
    };
    emit("crosscorr_before.csv", before_a, before_b);
    emit("crosscorr_after.csv", after_a, after_b);
    return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_path) {
    const auto cfg = parse_synth_config(read_file(spec_path));
    if (cfg.is_pair()) {
        const auto [a, b] =
            generate_coupled_pair(cfg.a, *cfg.b, cfg.phase_offset, cfg.coupling_start);
        fs::path base(out_path);
        const auto stem = base.parent_path() / base.stem();
        const auto ext = base.extension().empty() ? fs::path(".csv") : base.extension();
        write_file(stem.string() + "_a" + ext.string(), to_csv(a));
        write_file(stem.string() + "_b" + ext.string(), to_csv(b));
    } else {
        write_file(out_path, to_csv(generate(cfg.a)));
    }
    return 0;
}

void add_common_options(CLI::App* cmd, RunOptions& opt, bool with_input2) {
    cmd->add_option("--input", opt.input, "panel CSV (date,<asset>,...)")->required();
    if (with_input2) {
        cmd->add_option("--input2", opt.input2, "second panel CSV")->required();
    }
    cmd->add_option("--operator", opt.operator_name, "return operator: log|diff");
    cmd->add_option("--missing", opt.missing, "missing-data policy: reject|ffill|drop");
    cmd->add_option("--kind", opt.kind, "panel kind: price|yield");
    cmd->add_option("--window", opt.window, "correlation window in months");
    cmd->add_option("--top-k", opt.top_k, "eigenvalues in the tracked sum");
    cmd->add_option("--cars-window", opt.cars_window, "memory window (default: --window)");
    cmd->add_option("--cars-mode", opt.cars_mode, "telescoping|flat");
    cmd->add_option("--max-lag", opt.max_lag, "maximum lag for correlation curves");
    cmd->add_option("--split", opt.split, "sample split month YYYY-MM");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--min-prominence", opt.min_prominence, "peak prominence threshold");
    cmd->add_option("--min-separation", opt.min_separation, "minimum months between peaks");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rolling-PCA systemic-risk indicator for monthly asset panels"};
    app.require_subcommand(1);

    RunOptions opt;
    std::string spec_path, synth_out = "panel.csv";

    auto* analyze = app.add_subcommand("analyze", "risk series + peaks from one panel");
    add_common_options(analyze, opt, false);
    analyze->add_flag("--dump-spectra", opt.dump_spectra, "also write per-window eigenvalues");

    auto* autocorr =
        app.add_subcommand("autocorr", "analyze, then autocorrelation of the CARS series");
    add_common_options(autocorr, opt, false);

    auto* crosscorr = app.add_subcommand(
        "crosscorr", "lagged CARS cross-correlation of two panels, split at --split");
    add_common_options(crosscorr, opt, true);

    auto* synth = app.add_subcommand("synth", "generate a synthetic panel from a config file");
    synth->add_option("--spec", spec_path, "key=value synth configuration")->required();
    synth->add_option("--out", synth_out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(opt);
        if (app.got_subcommand(autocorr)) return cmd_autocorr(opt);
        if (app.got_subcommand(crosscorr)) return cmd_crosscorr(opt);
        if (app.got_subcommand(synth)) return cmd_synth(spec_path, synth_out);
        return 2;
    } catch (const Error& e) {
        std::cerr << "sysrisk: error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "sysrisk: internal error: " << e.what() << "\n";
        return 2;
    }
}
