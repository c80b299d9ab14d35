#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "taxview/flow_matrix.hpp"
#include "taxview/model.hpp"
#include "taxview/resolve.hpp"

namespace taxview {

struct ScopePolicy {
  std::set<ComponentStatus> include_statuses{ComponentStatus::production};
  bool exclude_individual_owners = true;

  // Throws ConfigError when include_statuses is empty.
  void validate() const;

  friend bool operator==(const ScopePolicy&, const ScopePolicy&) = default;
};

enum class ExclusionReason { non_production, individual_owner };

std::string_view to_string(ExclusionReason r) noexcept;

struct ExcludedComponent {
  ComponentId component;
  ExclusionReason reason = ExclusionReason::non_production;

  friend bool operator==(const ExcludedComponent&, const ExcludedComponent&) = default;
};

struct ExclusionReport {
  // Sorted by component id. A component failing both tests is reported
  // once, as non_production.
  std::vector<ExcludedComponent> excluded_components;
  std::size_t total_components = 0;
  // Edge records removed because an endpoint was excluded.
  std::size_t excluded_edges = 0;
  std::size_t total_edges = 0;
  // Multiplicity-weighted counterpart of excluded_edges.
  std::uint64_t excluded_uses = 0;

  double component_ratio() const noexcept;
  double edge_ratio() const noexcept;

  friend bool operator==(const ExclusionReport&, const ExclusionReport&) = default;
};

struct ScopedSnapshot {
  ArchitectureSnapshot snapshot;
  ExclusionReport exclusions;
};

// Removes components outside the policy together with their incident edges
// and ownership rows. Owners left without any in-scope component are dropped
// as well, so owner statistics describe the scoped view.
ScopedSnapshot apply_scope_filter(const ArchitectureSnapshot& snapshot,
                                  const ScopePolicy& policy);

enum class EdgeClass { domestic, cross_border, unresolved };

std::string_view to_string(EdgeClass c) noexcept;

using OwnershipMap = std::map<ComponentId, OwnerId>;
using JurisdictionMap = std::map<OwnerId, JurisdictionCode>;

OwnershipMap ownership_map(const ArchitectureSnapshot& snapshot);
JurisdictionMap jurisdiction_map(std::span<const JurisdictionAssignment> assignments);

// Edges between components of the same owner are domestic without looking
// at the jurisdiction. Otherwise: unresolved if either side is UNKNOWN,
// domestic if both sides match, cross_border if they differ.
// Throws IntegrityError when an endpoint has no owner or an owner has no
// assignment.
EdgeClass classify_edge(const DependencyEdge& edge, const OwnershipMap& ownership,
                        const JurisdictionMap& jurisdictions);

// Multiplicity-weighted flow matrix of a scoped snapshot. Every known
// jurisdiction of an owner in the snapshot is declared. The cell sum is
// checked against the snapshot's total uses (IntegrityError on mismatch).
JurisdictionFlowMatrix aggregate(const ArchitectureSnapshot& scoped,
                                 std::span<const JurisdictionAssignment> assignments);

struct JurisdictionFlows {
  std::uint64_t outbound = 0;               // row sum: uses made from here
  std::uint64_t inbound = 0;                // column sum: uses of components owned here
  std::uint64_t cross_border_outbound = 0;  // known, off-diagonal
  std::uint64_t cross_border_inbound = 0;

  friend bool operator==(const JurisdictionFlows&, const JurisdictionFlows&) = default;
};

struct ComplianceStats {
  std::string snapshot_id;
  std::uint64_t total_uses = 0;
  std::uint64_t domestic_count = 0;
  std::uint64_t cross_border_count = 0;
  std::uint64_t unresolved_count = 0;
  double domestic_ratio = 0.0;
  double cross_border_ratio = 0.0;
  double unresolved_ratio = 0.0;
  // (cross_border + unresolved) / total: the share of uses that are or may
  // be cross-border.
  double exposure_ratio = 0.0;
  std::map<JurisdictionCode, JurisdictionFlows> per_jurisdiction;
  std::optional<ResolutionSummary> resolution;
  std::optional<ExclusionReport> exclusions;
};

// domestic = known diagonal (+ same-owner UNKNOWN uses);
// cross_border = known off-diagonal;
// unresolved = every other cell in the UNKNOWN row or column.
ComplianceStats compute_stats(const JurisdictionFlowMatrix& matrix,
                              std::optional<ExclusionReport> exclusions = std::nullopt,
                              std::optional<ResolutionSummary> resolution = std::nullopt);

// "total=17 domestic=8 cross_border=9 unresolved=0"
std::string stats_line(const ComplianceStats& stats);

}  // namespace taxview
