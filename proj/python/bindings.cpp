// Python bindings for the core pipeline: panel ingestion, returns, rolling
// spectra, the CARS indicator, signal analysis and the synthetic generator.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sysrisk/cars.hpp"
#include "sysrisk/errors.hpp"
#include "sysrisk/panel.hpp"
#include "sysrisk/returns.hpp"
#include "sysrisk/signal.hpp"
#include "sysrisk/spectra.hpp"
#include "sysrisk/synth.hpp"

namespace py = pybind11;
using namespace sysrisk;

namespace {

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows[r].assign(m.row(r).begin(), m.row(r).end());
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "rolling-PCA systemic-risk indicator (CARS) for monthly asset panels";

    py::register_exception<Error>(m, "Error");

    py::class_<YearMonth>(m, "YearMonth")
        .def(py::init<int, int>(), py::arg("year"), py::arg("month"))
        .def_readwrite("year", &YearMonth::year)
        .def_readwrite("month", &YearMonth::month)
        .def(py::self == py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def("__str__", [](const YearMonth& ym) { return to_string(ym); })
        .def("__repr__",
             [](const YearMonth& ym) { return "YearMonth(" + to_string(ym) + ")"; });
    m.def("parse_year_month", [](const std::string& text) { return parse_year_month(text); });
    m.def("months_between", &months_between);
    m.def("add_months", &add_months);

    py::enum_<PanelKind>(m, "PanelKind")
        .value("price", PanelKind::price)
        .value("yield_", PanelKind::yield_);
    py::enum_<MissingPolicy>(m, "MissingPolicy")
        .value("reject", MissingPolicy::reject)
        .value("forward_fill", MissingPolicy::forward_fill)
        .value("drop_asset", MissingPolicy::drop_asset);
    py::enum_<ReturnOperator>(m, "ReturnOperator")
        .value("log_return", ReturnOperator::log_return)
        .value("first_difference", ReturnOperator::first_difference);
    py::enum_<CarsMode>(m, "CarsMode")
        .value("telescoping", CarsMode::telescoping)
        .value("flat", CarsMode::flat);

    py::class_<PanelData>(m, "PanelData")
        .def_readonly("asset_ids", &PanelData::asset_ids)
        .def_readonly("timestamps", &PanelData::timestamps)
        .def_readonly("kind", &PanelData::kind)
        .def_property_readonly("values",
                               [](const PanelData& p) { return matrix_rows(p.values); })
        .def_property_readonly("n_assets", &PanelData::n_assets)
        .def_property_readonly("n_months", &PanelData::n_months);

    m.def(
        "parse_csv",
        [](const std::string& text, PanelKind kind) { return parse_csv(text, {kind}); },
        py::arg("text"), py::arg("kind") = PanelKind::price);
    m.def(
        "align_and_fill",
        [](const PanelData& panel, MissingPolicy policy) {
            return align_and_fill(panel, policy);
        },
        py::arg("panel"), py::arg("policy") = MissingPolicy::reject);
    m.def(
        "load_panel_csv",
        [](const std::string& path, PanelKind kind, MissingPolicy policy) {
            return load_panel_csv(path, {kind}, policy);
        },
        py::arg("path"), py::arg("kind") = PanelKind::price,
        py::arg("policy") = MissingPolicy::reject);

    py::class_<ReturnMatrix>(m, "ReturnMatrix")
        .def_readonly("asset_ids", &ReturnMatrix::asset_ids)
        .def_readonly("timestamps", &ReturnMatrix::timestamps)
        .def_readonly("op", &ReturnMatrix::op)
        .def_property_readonly("values",
                               [](const ReturnMatrix& r) { return matrix_rows(r.values); });
    m.def("compute_returns", &compute_returns, py::arg("panel"),
          py::arg("op") = ReturnOperator::log_return);

    py::class_<CorrelationMatrix>(m, "CorrelationMatrix")
        .def_readonly("n", &CorrelationMatrix::n)
        .def_readonly("window_end", &CorrelationMatrix::window_end)
        .def_readonly("window_len", &CorrelationMatrix::window_len)
        .def_property_readonly(
            "entries", [](const CorrelationMatrix& c) { return matrix_rows(c.entries); });
    m.def("correlation", &correlation, py::arg("returns"), py::arg("window_end"),
          py::arg("window_len"));

    py::class_<EigenSpectrum>(m, "EigenSpectrum")
        .def_readonly("eigenvalues", &EigenSpectrum::eigenvalues)
        .def_readonly("window_end", &EigenSpectrum::window_end)
        .def_property_readonly(
            "eigenvectors", [](const EigenSpectrum& s) { return matrix_rows(s.eigenvectors); });
    m.def("eigen_symmetric", &eigen_symmetric);
    m.def("normalized_top_sum", &normalized_top_sum, py::arg("spectrum"), py::arg("k"));

    py::class_<RiskSeriesInput>(m, "RiskSeriesInput")
        .def_readonly("timestamps", &RiskSeriesInput::timestamps)
        .def_readonly("lambda_sum", &RiskSeriesInput::lambda_sum)
        .def_readonly("window_len", &RiskSeriesInput::window_len)
        .def_readonly("top_k", &RiskSeriesInput::top_k)
        .def_readonly("stride", &RiskSeriesInput::stride);
    m.def("rolling_spectra", &rolling_spectra, py::arg("returns"), py::arg("window_len"),
          py::arg("k"), py::arg("stride") = 1);

    m.def(
        "time_derivative",
        [](const std::vector<double>& series) { return time_derivative(series); },
        py::arg("series"));
    m.def(
        "cars",
        [](const std::vector<double>& lambda_dot, int window, CarsMode mode) {
            return cars(lambda_dot, window, mode);
        },
        py::arg("lambda_dot"), py::arg("window"), py::arg("mode") = CarsMode::telescoping);

    py::class_<RiskConfig>(m, "RiskConfig")
        .def(py::init<>())
        .def_readwrite("window_len", &RiskConfig::window_len)
        .def_readwrite("top_k", &RiskConfig::top_k)
        .def_readwrite("cars_window", &RiskConfig::cars_window)
        .def_readwrite("mode", &RiskConfig::mode)
        .def_readwrite("stride", &RiskConfig::stride)
        .def_property_readonly("effective_cars_window", &RiskConfig::effective_cars_window);

    py::class_<RiskSeries>(m, "RiskSeries")
        .def_readonly("timestamps", &RiskSeries::timestamps)
        .def_readonly("lambda_sum", &RiskSeries::lambda_sum)
        .def_readonly("lambda_dot", &RiskSeries::lambda_dot)
        .def_readonly("cars", &RiskSeries::cars)
        .def_readonly("config", &RiskSeries::config)
        .def_property_readonly("cars_timestamps", &RiskSeries::cars_timestamps);
    m.def("risk_series", &risk_series, py::arg("returns"), py::arg("config") = RiskConfig{});

    py::class_<LagCorrelation>(m, "LagCorrelation")
        .def_readonly("lags", &LagCorrelation::lags)
        .def_readonly("values", &LagCorrelation::values)
        .def_readonly("n_effective", &LagCorrelation::n_effective)
        .def_readonly("argmax_lag", &LagCorrelation::argmax_lag)
        .def("value_at", &LagCorrelation::value_at)
        .def("max_value", &LagCorrelation::max_value);
    m.def(
        "autocorrelation",
        [](const std::vector<double>& series, int max_lag) {
            return autocorrelation(series, max_lag);
        },
        py::arg("series"), py::arg("max_lag"));
    m.def(
        "cross_correlation",
        [](const std::vector<double>& a, const std::vector<double>& b, int max_lag) {
            return cross_correlation(a, b, max_lag);
        },
        py::arg("a"), py::arg("b"), py::arg("max_lag"));
    m.def("dominant_period", &dominant_period);

    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init<>())
        .def(py::init([](std::vector<YearMonth> timestamps, std::vector<double> values) {
                 return TimeSeries{std::move(timestamps), std::move(values)};
             }),
             py::arg("timestamps"), py::arg("values"))
        .def_readwrite("timestamps", &TimeSeries::timestamps)
        .def_readwrite("values", &TimeSeries::values);
    m.def("split_series", &split_series, py::arg("series"), py::arg("split"));

    py::class_<Peak>(m, "Peak")
        .def_readonly("month", &Peak::month)
        .def_readonly("value", &Peak::value)
        .def_readonly("prominence", &Peak::prominence);
    py::class_<PeakList>(m, "PeakList").def_readonly("peaks", &PeakList::peaks);
    m.def(
        "detect_peaks",
        [](const RiskSeries& risk, double min_prominence, int min_separation) {
            return detect_peaks(risk, min_prominence, min_separation);
        },
        py::arg("risk"), py::arg("min_prominence") = 0.0, py::arg("min_separation") = 1);
    m.def(
        "detect_peaks_series",
        [](const TimeSeries& series, double min_prominence, int min_separation) {
            return detect_peaks(series, min_prominence, min_separation);
        },
        py::arg("series"), py::arg("min_prominence") = 0.0, py::arg("min_separation") = 1);

    py::class_<Xoshiro256StarStar>(m, "Xoshiro256StarStar")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", &Xoshiro256StarStar::next)
        .def("uniform01", &Xoshiro256StarStar::uniform01)
        .def("standard_normal", &Xoshiro256StarStar::standard_normal);

    py::class_<RegimeShift>(m, "RegimeShift")
        .def(py::init([](int month, double beta) { return RegimeShift{month, beta}; }),
             py::arg("month"), py::arg("beta"))
        .def_readwrite("month", &RegimeShift::month)
        .def_readwrite("beta", &RegimeShift::beta);

    py::class_<BetaSchedule>(m, "BetaSchedule")
        .def(py::init<>())
        .def_readwrite("base", &BetaSchedule::base)
        .def_readwrite("sin_amplitude", &BetaSchedule::sin_amplitude)
        .def_readwrite("sin_period", &BetaSchedule::sin_period)
        .def_readwrite("sin_phase", &BetaSchedule::sin_phase)
        .def_readwrite("shifts", &BetaSchedule::shifts)
        .def("at", &BetaSchedule::at);

    py::class_<SynthSpec>(m, "SynthSpec")
        .def(py::init<>())
        .def_readwrite("n_assets", &SynthSpec::n_assets)
        .def_readwrite("n_months", &SynthSpec::n_months)
        .def_readwrite("seed", &SynthSpec::seed)
        .def_readwrite("loading", &SynthSpec::loading)
        .def_readwrite("idiosyncratic_sigma", &SynthSpec::idiosyncratic_sigma)
        .def_readwrite("start", &SynthSpec::start)
        .def_readwrite("kind", &SynthSpec::kind);
    m.def("generate", &generate);
    m.def("generate_coupled_pair", &generate_coupled_pair, py::arg("spec_a"),
          py::arg("spec_b"), py::arg("phase_offset"), py::arg("coupling_start"));
    m.def("parse_synth_config",
          [](const std::string& text) { return parse_synth_config(text); });

    py::class_<SynthConfig>(m, "SynthConfig")
        .def_readonly("a", &SynthConfig::a)
        .def_readonly("b", &SynthConfig::b)
        .def_readonly("phase_offset", &SynthConfig::phase_offset)
        .def_readonly("coupling_start", &SynthConfig::coupling_start)
        .def_property_readonly("is_pair", &SynthConfig::is_pair);

    // CSV emitters, overloaded on the payload type.
    m.def("to_csv", [](const PanelData& p) { return to_csv(p); });
    m.def("to_csv", [](const ReturnMatrix& r) { return to_csv(r); });
    m.def("to_csv", [](const RiskSeries& r) { return to_csv(r); });
    m.def("to_csv", [](const LagCorrelation& l) { return to_csv(l); });
    m.def("to_csv", [](const PeakList& p) { return to_csv(p); });
    m.def("spectra_csv", &spectra_csv);
    m.def("rolling_eigen", &rolling_eigen, py::arg("returns"), py::arg("window_len"),
          py::arg("stride") = 1);

#ifdef SYSRISK_VERSION
    m.attr("__version__") = SYSRISK_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
