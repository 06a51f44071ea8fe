#pragma once

#include <string>
#include <vector>

#include "clalg/session.hpp"
#include "json.hpp"

namespace clalg {

inline constexpr const char* kReportSchema = "clalg-report/1";

/// One report per command. `data` keeps its keys in insertion order so the
/// serialized bytes are deterministic.
struct Report {
  nlohmann::ordered_json data;
  bool unknown = false;
  bool resource_abort = false;
};

Report run_command(const SessionScript& s, std::size_t index, const RunOptions& opts);
std::vector<Report> run_session(const SessionScript& s, const RunOptions& opts);

/// 0 = every verdict delivered, 2 = some UNKNOWN, 3 = a resource abort.
int exit_code(const std::vector<Report>& reports);

std::string emit_json(const std::vector<Report>& reports);
std::string emit_text(const std::vector<Report>& reports);

}  // namespace clalg
