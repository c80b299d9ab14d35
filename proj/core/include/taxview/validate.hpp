#pragma once

#include <string>
#include <vector>

#include "taxview/model.hpp"

namespace taxview {

enum class Severity { error, warning };

std::string_view to_string(Severity s) noexcept;

struct Finding {
  Severity severity = Severity::error;
  // Stable machine-readable code, e.g. "multiple-owners".
  std::string code;
  std::string message;
  std::vector<std::string> offending_ids;

  friend auto operator<=>(const Finding&, const Finding&) = default;
};

enum class ValidationStatus { ok, failed };

struct ValidationReport {
  ValidationStatus status = ValidationStatus::ok;
  // Sorted by (severity, code, offending_ids, message).
  std::vector<Finding> findings;

  bool ok() const noexcept { return status == ValidationStatus::ok; }
  std::size_t error_count() const noexcept;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

// Checks the structural invariants of a snapshot. Never throws on bad data;
// every violation becomes a finding. Error codes:
//
//   empty-id, duplicate-component-id, duplicate-owner-id,
//   self-dependency, duplicate-dependency, zero-multiplicity,
//   dangling-dependency-endpoint, dangling-ownership-component,
//   dangling-ownership-owner, unowned-component, multiple-owners,
//   duplicate-ownership, malformed-jurisdiction, evidence-shape,
//   conflicting-explicit-evidence
//
// Warning codes: owner-without-components.
ValidationReport validate_snapshot(const ArchitectureSnapshot& snapshot);

// "error multiple-owners: <message> [id, id]"
std::string format_finding(const Finding& f);

}  // namespace taxview
