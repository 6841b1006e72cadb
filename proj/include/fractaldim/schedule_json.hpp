#pragma once

#include "fractaldim/digit_fractal.hpp"

#include <json.hpp>

namespace fractaldim {

/// Stable JSON form of a schedule: {"base": d, "kind": "constant"|"blocks"|
/// "partition"|"explicit"|"product", ...kind-specific fields}. Emitting and
/// re-parsing is the identity on the emitted bytes.
nlohmann::ordered_json schedule_to_json(const DigitSchedule& sched);
DigitSchedule schedule_from_json(const nlohmann::json& j);

/// FNV-1a of the canonical dump; used as provenance in reports.
std::string schedule_hash(const DigitSchedule& sched);

} // namespace fractaldim
