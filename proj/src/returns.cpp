#include "sysrisk/returns.hpp"

#include <cmath>

#include "sysrisk/errors.hpp"

namespace sysrisk {

std::string to_string(ReturnOperator op) {
    return op == ReturnOperator::log_return ? "log_return" : "first_difference";
}

ReturnMatrix compute_returns(const PanelData& panel, ReturnOperator op) {
    const std::size_t T = panel.n_months();
    const std::size_t N = panel.n_assets();
    if (T < 2) throw SeriesTooShort("compute_returns: need at least 2 months, got " +
                                    std::to_string(T));

    if (op == ReturnOperator::log_return) {
        for (std::size_t t = 0; t < T; ++t)
            for (std::size_t i = 0; i < N; ++i)
                if (!(panel.values(t, i) > 0.0)) {
                    throw NonPositiveLevel("compute_returns: asset '" + panel.asset_ids[i] +
                                           "' has non-positive level " +
                                           format_double(panel.values(t, i)) + " at " +
                                           to_string(panel.timestamps[t]));
                }
    }

    ReturnMatrix out;
    out.asset_ids = panel.asset_ids;
    out.timestamps.assign(panel.timestamps.begin() + 1, panel.timestamps.end());
    out.op = op;
    out.values = Matrix(T - 1, N);
    for (std::size_t t = 1; t < T; ++t) {
        for (std::size_t i = 0; i < N; ++i) {
            out.values(t - 1, i) =
                op == ReturnOperator::log_return
                    ? std::log(panel.values(t, i) / panel.values(t - 1, i))
                    : panel.values(t, i) - panel.values(t - 1, i);
        }
    }
    return out;
}

std::string to_csv(const ReturnMatrix& returns) {
    std::string out = "# operator=" + to_string(returns.op) + "\ndate";
    for (const auto& id : returns.asset_ids) {
        out += ',';
        out += id;
    }
    out += '\n';
    for (std::size_t t = 0; t < returns.n_rows(); ++t) {
        out += to_string(returns.timestamps[t]);
        for (std::size_t i = 0; i < returns.n_assets(); ++i) {
            out += ',';
            out += format_double(returns.values(t, i));
        }
        out += '\n';
    }
    return out;
}

}  // namespace sysrisk
