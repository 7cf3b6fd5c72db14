#pragma once

#include "spt/marketdata/panel.hpp"

#include <cstddef>

namespace spt::marketdata {

inline constexpr double kDefaultReturnFloor = -0.95;

struct CleanResult
{
    ReturnPanel panel;
    std::size_t replacements = 0;
};

/// Replaces every total return equal to -1 with `floor`, so log(1 + r) stays
/// finite. Everything else is untouched. Requires floor in (-1, 0].
CleanResult clean_panel(const ReturnPanel& panel, double floor = kDefaultReturnFloor);

struct MissingResult
{
    ReturnPanel panel;
    std::size_t affected = 0;
};

/// Resolves missing returns.
///  - drop: the record is removed, so the security is outside that day's universe.
///  - zero: the return becomes 0.
///  - carry_flag: the return becomes 0 and the record is flagged `imputed`.
/// The policy is recorded in the panel metadata.
MissingResult apply_missing_policy(const ReturnPanel& panel, MissingPolicy policy = MissingPolicy::drop);

} // namespace spt::marketdata
