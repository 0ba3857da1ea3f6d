#pragma once

// Command-line entry point and report serialization.

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "moq/classify.hpp"

namespace moq {

/// Exit codes of run().
enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_usage = 2 };

/// Dispatches classify, tabcanon, verify and enumerate.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

nlohmann::ordered_json report_to_json(const OrbitReport& report);
/// Flat projection of the counting fields, header line included.
std::string report_to_csv(const OrbitReport& report);
std::string report_to_text(const OrbitReport& report);

/// Schema violations of a report document; empty when valid.
std::vector<std::string> validate_report(const nlohmann::json& doc);

/// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace moq
