#include "taxview/model.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace taxview {

namespace {

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 5> kComponentKinds{
    "microservice", "library", "module", "application", "other"};
constexpr std::array<std::string_view, 3> kComponentStatuses{"production", "experimental",
                                                             "deprecated"};
constexpr std::array<std::string_view, 2> kEdgeKinds{"use", "other"};
constexpr std::array<std::string_view, 3> kOwnerKinds{"team", "individual", "unit"};
constexpr std::array<std::string_view, 4> kEvidenceSources{
    "explicit_assignment", "member_locations", "manager_location", "questionnaire"};

}  // namespace

std::string_view to_string(ComponentKind v) noexcept {
  return kComponentKinds[static_cast<std::size_t>(v)];
}
std::string_view to_string(ComponentStatus v) noexcept {
  return kComponentStatuses[static_cast<std::size_t>(v)];
}
std::string_view to_string(EdgeKind v) noexcept { return kEdgeKinds[static_cast<std::size_t>(v)]; }
std::string_view to_string(OwnerKind v) noexcept { return kOwnerKinds[static_cast<std::size_t>(v)]; }
std::string_view to_string(EvidenceSource v) noexcept {
  return kEvidenceSources[static_cast<std::size_t>(v)];
}

std::optional<ComponentKind> component_kind_from(std::string_view s) noexcept {
  return lookup<ComponentKind>(kComponentKinds, s);
}
std::optional<ComponentStatus> component_status_from(std::string_view s) noexcept {
  return lookup<ComponentStatus>(kComponentStatuses, s);
}
std::optional<EdgeKind> edge_kind_from(std::string_view s) noexcept {
  return lookup<EdgeKind>(kEdgeKinds, s);
}
std::optional<OwnerKind> owner_kind_from(std::string_view s) noexcept {
  return lookup<OwnerKind>(kOwnerKinds, s);
}
std::optional<EvidenceSource> evidence_source_from(std::string_view s) noexcept {
  return lookup<EvidenceSource>(kEvidenceSources, s);
}

bool payload_shape_ok(const LocationEvidence& e) noexcept {
  if (e.source == EvidenceSource::member_locations) return !e.codes.empty();
  return e.codes.size() == 1;
}

ArchitectureSnapshot canonicalize(ArchitectureSnapshot s) {
  std::ranges::sort(s.components, [](const Component& a, const Component& b) {
    return std::tie(a.id, a.name, a.kind, a.status) < std::tie(b.id, b.name, b.kind, b.status);
  });
  std::ranges::sort(s.dependencies, [](const DependencyEdge& a, const DependencyEdge& b) {
    return std::tuple(key_of(a), a.multiplicity) < std::tuple(key_of(b), b.multiplicity);
  });
  for (auto& owner : s.owners) {
    for (auto& ev : owner.location_evidence) {
      if (ev.source == EvidenceSource::member_locations) std::ranges::sort(ev.codes);
    }
    std::ranges::stable_sort(owner.location_evidence,
                             [](const LocationEvidence& a, const LocationEvidence& b) {
                               return std::tie(a.recorded_at, a.source, a.codes) <
                                      std::tie(b.recorded_at, b.source, b.codes);
                             });
  }
  std::ranges::sort(s.owners, [](const Owner& a, const Owner& b) {
    return std::tie(a.id, a.name, a.kind) < std::tie(b.id, b.name, b.kind);
  });
  std::ranges::sort(s.ownership);
  return s;
}

bool equivalent(const ArchitectureSnapshot& a, const ArchitectureSnapshot& b) {
  return canonicalize(a) == canonicalize(b);
}

std::uint64_t total_uses(const ArchitectureSnapshot& snapshot) noexcept {
  std::uint64_t total = 0;
  for (const auto& e : snapshot.dependencies) total += e.multiplicity;
  return total;
}

}  // namespace taxview
