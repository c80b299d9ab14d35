#include "taxview/analysis.hpp"

namespace taxview {

Analysis analyze(const ArchitectureSnapshot& snapshot, const ScopePolicy& policy,
                 const Cascade& cascade) {
  Analysis a;
  auto scoped = apply_scope_filter(snapshot, policy);
  a.scoped = std::move(scoped.snapshot);
  a.exclusions = std::move(scoped.exclusions);
  a.assignments = resolve_jurisdictions(a.scoped.owners, cascade);
  a.resolution = resolution_summary(a.assignments);
  a.matrix = aggregate(a.scoped, a.assignments);
  a.stats = compute_stats(a.matrix, a.exclusions, a.resolution);
  return a;
}

}  // namespace taxview
