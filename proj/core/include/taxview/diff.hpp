#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "taxview/classify.hpp"
#include "taxview/flow_matrix.hpp"
#include "taxview/model.hpp"
#include "taxview/resolve.hpp"

namespace taxview {

struct ComponentChange {
  Component before;
  Component after;
};

struct MultiplicityChange {
  EdgeKey edge;
  std::uint64_t before = 0;
  std::uint64_t after = 0;

  std::int64_t delta() const noexcept {
    return static_cast<std::int64_t>(after) - static_cast<std::int64_t>(before);
  }
};

struct OwnershipChange {
  ComponentId component;
  OwnerId before;
  OwnerId after;
};

struct JurisdictionChange {
  OwnerId owner;
  JurisdictionCode before;
  JurisdictionCode after;
};

// Changes from snapshot `a` to snapshot `b`. Every list is sorted by id/key.
// Component identity is the id alone; a rename shows up in
// components_changed, a re-identified component as remove + add.
struct SnapshotDelta {
  std::string from_snapshot;
  std::string to_snapshot;

  std::vector<Component> components_added;
  std::vector<Component> components_removed;
  std::vector<ComponentChange> components_changed;

  std::vector<DependencyEdge> edges_added;
  std::vector<DependencyEdge> edges_removed;
  std::vector<MultiplicityChange> multiplicity_changes;

  std::vector<OwnerId> owners_added;
  std::vector<OwnerId> owners_removed;
  // Components present in both snapshots whose owner differs.
  std::vector<OwnershipChange> ownership_changes;
  // Owners present in both snapshots whose resolved jurisdiction differs.
  std::vector<JurisdictionChange> jurisdiction_changes;

  // aggregate(b) - aggregate(a) under the same scope policy and cascade.
  MatrixDelta matrix_delta;

  // Components present in both snapshots whose owner changed and whose set
  // of incident edges (including multiplicities) changed as well.
  std::size_t coupled_change_count = 0;

  bool empty() const noexcept;
};

// Both snapshots must be valid; they are analyzed with the same policy and
// cascade.
SnapshotDelta diff_snapshots(const ArchitectureSnapshot& a, const ArchitectureSnapshot& b,
                             const Cascade& cascade, const ScopePolicy& policy = {});

// Replays the component and edge changes of `delta` on `a`. Yields `b`'s
// components and dependencies (canonical order).
ArchitectureSnapshot apply_structural_delta(const ArchitectureSnapshot& a,
                                            const SnapshotDelta& delta);

// Canonical JSON rendering, same conventions as reports.
std::string delta_to_json(const SnapshotDelta& delta);

}  // namespace taxview
