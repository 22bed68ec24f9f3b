#pragma once

#include <string>
#include <vector>

#include "sysrisk/panel.hpp"

namespace sysrisk {

enum class ReturnOperator { log_return, first_difference };

std::string to_string(ReturnOperator op);

// (T-1) x N matrix of returns. Row t spans source months t -> t+1 and is
// stamped with the later month. The operator is recorded so downstream
// output is self-describing.
struct ReturnMatrix {
    std::vector<std::string> asset_ids;
    std::vector<YearMonth> timestamps;  // T-1 entries
    Matrix values;                      // (T-1) x N
    ReturnOperator op = ReturnOperator::log_return;

    std::size_t n_assets() const { return asset_ids.size(); }
    std::size_t n_rows() const { return timestamps.size(); }
};

// log_return:       entry (t,i) = ln(P_i(t+1) / P_i(t))
// first_difference: entry (t,i) = P_i(t+1) - P_i(t)
// log_return requires every panel value strictly positive; the first
// violation is reported as NonPositiveLevel with asset id and month.
ReturnMatrix compute_returns(const PanelData& panel, ReturnOperator op);

// CSV with a `# operator=...` comment line, then `date,<asset...>` rows.
std::string to_csv(const ReturnMatrix& returns);

}  // namespace sysrisk
