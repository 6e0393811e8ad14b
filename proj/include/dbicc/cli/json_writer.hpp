#pragma once

#include <string>

#include <json.hpp>

namespace dbicc::cli {

/// Serializes `doc` like nlohmann::ordered_json::dump(indent) but prints every
/// floating-point number with 17 significant digits; NaN and Inf become null.
std::string dump_json(const nlohmann::ordered_json& doc, int indent = 2);

}  // namespace dbicc::cli
