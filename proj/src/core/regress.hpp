#pragma once

#include <string>

#include <json.hpp>

namespace mu4::regress {

using json = nlohmann::ordered_json;

/// Runs every regression criterion (optionally filtered by substring match
/// on the criterion name) and returns one row per criterion plus an
/// "all_pass" flag. Every tolerance and threshold is pinned in code.
json run_all(const std::string& filter = "");

}  // namespace mu4::regress
