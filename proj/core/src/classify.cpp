#include "taxview/classify.hpp"

#include <algorithm>
#include <cstdio>

#include "taxview/errors.hpp"

namespace taxview {

namespace {

double ratio(std::uint64_t part, std::uint64_t whole) {
  return whole == 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(whole);
}

const OwnerId& owner_of(const ComponentId& c, const OwnershipMap& ownership) {
  auto it = ownership.find(c);
  if (it == ownership.end()) {
    throw IntegrityError("component '" + c.str() + "' has no owner");
  }
  return it->second;
}

const JurisdictionCode& jurisdiction_of(const OwnerId& o, const JurisdictionMap& jurisdictions) {
  auto it = jurisdictions.find(o);
  if (it == jurisdictions.end()) {
    throw IntegrityError("owner '" + o.str() + "' has no jurisdiction assignment");
  }
  return it->second;
}

}  // namespace

void ScopePolicy::validate() const {
  if (include_statuses.empty()) throw ConfigError("scope policy includes no status");
}

std::string_view to_string(ExclusionReason r) noexcept {
  return r == ExclusionReason::non_production ? "non_production" : "individual_owner";
}

std::string_view to_string(EdgeClass c) noexcept {
  switch (c) {
    case EdgeClass::domestic:
      return "domestic";
    case EdgeClass::cross_border:
      return "cross_border";
    case EdgeClass::unresolved:
      return "unresolved";
  }
  return {};
}

double ExclusionReport::component_ratio() const noexcept {
  return ratio(excluded_components.size(), total_components);
}

double ExclusionReport::edge_ratio() const noexcept { return ratio(excluded_edges, total_edges); }

ScopedSnapshot apply_scope_filter(const ArchitectureSnapshot& snapshot,
                                  const ScopePolicy& policy) {
  policy.validate();

  std::map<OwnerId, OwnerKind> owner_kinds;
  for (const auto& o : snapshot.owners) owner_kinds.emplace(o.id, o.kind);
  const OwnershipMap ownership = ownership_map(snapshot);

  ScopedSnapshot out;
  ArchitectureSnapshot& scoped = out.snapshot;
  ExclusionReport& report = out.exclusions;
  scoped.id = snapshot.id;
  scoped.taken_at = snapshot.taken_at;
  report.total_components = snapshot.components.size();
  report.total_edges = snapshot.dependencies.size();

  std::set<ComponentId> kept;
  for (const auto& c : snapshot.components) {
    std::optional<ExclusionReason> reason;
    if (!policy.include_statuses.contains(c.status)) {
      reason = ExclusionReason::non_production;
    } else if (policy.exclude_individual_owners) {
      auto o = ownership.find(c.id);
      if (o != ownership.end()) {
        auto k = owner_kinds.find(o->second);
        if (k != owner_kinds.end() && k->second == OwnerKind::individual) {
          reason = ExclusionReason::individual_owner;
        }
      }
    }
    if (reason) {
      report.excluded_components.push_back({c.id, *reason});
    } else {
      kept.insert(c.id);
      scoped.components.push_back(c);
    }
  }
  std::ranges::sort(report.excluded_components, {}, &ExcludedComponent::component);

  for (const auto& e : snapshot.dependencies) {
    if (kept.contains(e.user) && kept.contains(e.owner_component)) {
      scoped.dependencies.push_back(e);
    } else {
      ++report.excluded_edges;
      report.excluded_uses += e.multiplicity;
    }
  }

  std::set<OwnerId> active;
  for (const auto& a : snapshot.ownership) {
    if (kept.contains(a.component)) {
      scoped.ownership.push_back(a);
      active.insert(a.owner);
    }
  }
  for (const auto& o : snapshot.owners) {
    if (active.contains(o.id)) scoped.owners.push_back(o);
  }
  return out;
}

OwnershipMap ownership_map(const ArchitectureSnapshot& snapshot) {
  OwnershipMap m;
  for (const auto& a : snapshot.ownership) m.emplace(a.component, a.owner);
  return m;
}

JurisdictionMap jurisdiction_map(std::span<const JurisdictionAssignment> assignments) {
  JurisdictionMap m;
  for (const auto& a : assignments) m.emplace(a.owner, a.jurisdiction);
  return m;
}

EdgeClass classify_edge(const DependencyEdge& edge, const OwnershipMap& ownership,
                        const JurisdictionMap& jurisdictions) {
  const OwnerId& user_owner = owner_of(edge.user, ownership);
  const OwnerId& used_owner = owner_of(edge.owner_component, ownership);
  if (user_owner == used_owner) return EdgeClass::domestic;
  const auto& from = jurisdiction_of(user_owner, jurisdictions);
  const auto& to = jurisdiction_of(used_owner, jurisdictions);
  if (from.is_unknown() || to.is_unknown()) return EdgeClass::unresolved;
  return from == to ? EdgeClass::domestic : EdgeClass::cross_border;
}

JurisdictionFlowMatrix aggregate(const ArchitectureSnapshot& scoped,
                                 std::span<const JurisdictionAssignment> assignments) {
  const OwnershipMap ownership = ownership_map(scoped);
  const JurisdictionMap jurisdictions = jurisdiction_map(assignments);

  JurisdictionFlowMatrix matrix(scoped.id.str());
  for (const auto& o : scoped.owners) {
    auto it = jurisdictions.find(o.id);
    if (it != jurisdictions.end() && it->second.is_known()) matrix.declare(it->second);
  }

  std::uint64_t expected = 0;
  for (const auto& e : scoped.dependencies) {
    expected += e.multiplicity;
    const OwnerId& user_owner = owner_of(e.user, ownership);
    const OwnerId& used_owner = owner_of(e.owner_component, ownership);
    const auto& from = jurisdiction_of(user_owner, jurisdictions);
    const auto& to = jurisdiction_of(used_owner, jurisdictions);
    if (user_owner == used_owner && from.is_unknown()) {
      matrix.add_same_owner_unknown(e.multiplicity);
    } else {
      matrix.add(from, to, e.multiplicity);
    }
  }
  if (matrix.total() != expected) {
    throw IntegrityError("flow matrix holds " + std::to_string(matrix.total()) +
                         " uses, snapshot has " + std::to_string(expected));
  }
  return matrix;
}

ComplianceStats compute_stats(const JurisdictionFlowMatrix& matrix,
                              std::optional<ExclusionReport> exclusions,
                              std::optional<ResolutionSummary> resolution) {
  ComplianceStats s;
  s.snapshot_id = matrix.snapshot_id();
  for (const auto& code : matrix.jurisdictions()) s.per_jurisdiction[code];

  for (const auto& [key, n] : matrix.cells()) {
    const auto& [user, owner] = key;
    s.total_uses += n;
    auto& out = s.per_jurisdiction[user];
    auto& in = s.per_jurisdiction[owner];
    out.outbound += n;
    in.inbound += n;
    if (user.is_unknown() || owner.is_unknown()) {
      s.unresolved_count += n;
    } else if (user == owner) {
      s.domestic_count += n;
    } else {
      s.cross_border_count += n;
      out.cross_border_outbound += n;
      in.cross_border_inbound += n;
    }
  }
  s.unresolved_count -= matrix.same_owner_unknown();
  s.domestic_count += matrix.same_owner_unknown();

  s.domestic_ratio = ratio(s.domestic_count, s.total_uses);
  s.cross_border_ratio = ratio(s.cross_border_count, s.total_uses);
  s.unresolved_ratio = ratio(s.unresolved_count, s.total_uses);
  s.exposure_ratio = ratio(s.cross_border_count + s.unresolved_count, s.total_uses);
  s.resolution = std::move(resolution);
  s.exclusions = std::move(exclusions);
  return s;
}

std::string stats_line(const ComplianceStats& s) {
  return "total=" + std::to_string(s.total_uses) + " domestic=" + std::to_string(s.domestic_count) +
         " cross_border=" + std::to_string(s.cross_border_count) +
         " unresolved=" + std::to_string(s.unresolved_count);
}

}  // namespace taxview
