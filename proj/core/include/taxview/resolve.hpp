#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxview/model.hpp"

namespace taxview {

enum class ResolverKind { explicit_assignment, member_majority, manager_location };

// One step of the resolution cascade.
//
//   explicit_assignment  decisive iff explicit or questionnaire evidence names
//                        a known jurisdiction; the latest recorded_at wins.
//   member_majority      decisive iff one jurisdiction holds a share >= the
//                        threshold of the latest member_locations evidence.
//   manager_location     decisive iff manager evidence names a known
//                        jurisdiction; the latest recorded_at wins.
struct Resolver {
  static constexpr double kDefaultThreshold = 0.75;

  ResolverKind kind = ResolverKind::explicit_assignment;
  // Only meaningful for member_majority. Must lie in (0.5, 1].
  double threshold = kDefaultThreshold;

  static Resolver explicit_assignment() { return {ResolverKind::explicit_assignment}; }
  static Resolver member_majority(double threshold = kDefaultThreshold) {
    return {ResolverKind::member_majority, threshold};
  }
  static Resolver manager_location() { return {ResolverKind::manager_location}; }

  // "explicit_assignment", "member_majority(0.75)", "manager_location".
  std::string describe() const;

  friend bool operator==(const Resolver&, const Resolver&) = default;
};

using Cascade = std::vector<Resolver>;

// [explicit_assignment, member_majority(0.75), manager_location]
Cascade default_cascade();

// Accepts the describe() spellings; "member_majority" alone uses the default
// threshold. Throws ConfigError.
Resolver parse_resolver(std::string_view text);

// Comma separated, optional surrounding brackets:
// "[explicit_assignment, member_majority(0.8), manager_location]".
Cascade parse_cascade(std::string_view text);

// Throws ConfigError for an empty cascade or a threshold outside (0.5, 1].
void validate_cascade(const Cascade& cascade);

struct Provenance {
  Resolver resolver;
  EvidenceSource source = EvidenceSource::explicit_assignment;
  std::string evidence;
  Date decided_at{};

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Exactly one per owner. `provenance` is empty ("unresolved") iff the
// jurisdiction is UNKNOWN.
struct JurisdictionAssignment {
  OwnerId owner;
  JurisdictionCode jurisdiction;
  std::optional<Provenance> provenance;

  bool resolved() const noexcept { return provenance.has_value(); }
  // Resolver description, or "unresolved".
  std::string provenance_label() const;

  friend bool operator==(const JurisdictionAssignment&,
                         const JurisdictionAssignment&) = default;
};

// Runs the cascade for every owner; output is sorted by owner id.
// Throws ConfigError for an invalid cascade and IntegrityError for evidence
// that validate_snapshot would have rejected (malformed codes, tied
// conflicting explicit assignments).
std::vector<JurisdictionAssignment> resolve_jurisdictions(
    std::span<const Owner> owners, const Cascade& cascade);

struct ResolutionSummary {
  std::size_t resolved_count = 0;
  std::size_t unresolved_count = 0;
  // unresolved / total, 0 when there are no owners.
  double unresolved_ratio = 0.0;
  // Keyed by Resolver::describe().
  std::map<std::string, std::size_t> per_resolver;

  std::size_t total() const noexcept { return resolved_count + unresolved_count; }

  friend bool operator==(const ResolutionSummary&, const ResolutionSummary&) = default;
};

ResolutionSummary resolution_summary(std::span<const JurisdictionAssignment> assignments);

}  // namespace taxview
