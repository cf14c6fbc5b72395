#pragma once

#include <json.hpp>

#include <string>

namespace ptspec {

// Serializes with two-space indentation and every floating-point number printed
// with 17 significant digits, so emitted values round-trip to the exact double.
// Object key order follows insertion order.
std::string dump_json17(const nlohmann::ordered_json& doc);

// "%.17g" rendering of one double (used for CSV cells as well).
std::string format17(double value);

// Current UTC time as ISO 8601, e.g. "2026-08-14T10:00:00Z".
std::string utc_timestamp();

}  // namespace ptspec
