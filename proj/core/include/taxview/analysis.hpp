#pragma once

#include <vector>

#include "taxview/classify.hpp"
#include "taxview/model.hpp"
#include "taxview/resolve.hpp"

namespace taxview {

// Everything the views need, computed from one snapshot:
// scope filter -> resolve -> aggregate -> stats.
struct Analysis {
  ArchitectureSnapshot scoped;
  ExclusionReport exclusions;
  std::vector<JurisdictionAssignment> assignments;
  ResolutionSummary resolution;
  JurisdictionFlowMatrix matrix;
  ComplianceStats stats;
};

// Input must have passed validate_snapshot().
Analysis analyze(const ArchitectureSnapshot& snapshot, const ScopePolicy& policy,
                 const Cascade& cascade);

}  // namespace taxview
