#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taxview/date.hpp"
#include "taxview/jurisdiction.hpp"

namespace taxview {

// Opaque text identifier. Comparison is exact byte equality; no case folding
// or whitespace trimming is ever applied.
template <class Tag>
class Identifier {
 public:
  Identifier() = default;
  explicit Identifier(std::string value) : value_(std::move(value)) {}
  explicit Identifier(std::string_view value) : value_(value) {}
  explicit Identifier(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Identifier&, const Identifier&) = default;

 private:
  std::string value_;
};

struct ComponentIdTag {};
struct OwnerIdTag {};
struct SnapshotIdTag {};

using ComponentId = Identifier<ComponentIdTag>;
using OwnerId = Identifier<OwnerIdTag>;
using SnapshotId = Identifier<SnapshotIdTag>;

enum class ComponentKind { microservice, library, module, application, other };
enum class ComponentStatus { production, experimental, deprecated };
enum class EdgeKind { use, other };
enum class OwnerKind { team, individual, unit };
enum class EvidenceSource {
  explicit_assignment,
  member_locations,
  manager_location,
  questionnaire
};

std::string_view to_string(ComponentKind v) noexcept;
std::string_view to_string(ComponentStatus v) noexcept;
std::string_view to_string(EdgeKind v) noexcept;
std::string_view to_string(OwnerKind v) noexcept;
std::string_view to_string(EvidenceSource v) noexcept;

// Lowercase enum spellings only; nullopt for anything else.
std::optional<ComponentKind> component_kind_from(std::string_view s) noexcept;
std::optional<ComponentStatus> component_status_from(std::string_view s) noexcept;
std::optional<EdgeKind> edge_kind_from(std::string_view s) noexcept;
std::optional<OwnerKind> owner_kind_from(std::string_view s) noexcept;
std::optional<EvidenceSource> evidence_source_from(std::string_view s) noexcept;

struct Component {
  ComponentId id;
  std::string name;
  ComponentKind kind = ComponentKind::other;
  ComponentStatus status = ComponentStatus::production;

  friend bool operator==(const Component&, const Component&) = default;
};

// `user` depends on (uses) `owner_component`. Parallel uses of the same kind
// are folded into `multiplicity`.
struct DependencyEdge {
  ComponentId user;
  ComponentId owner_component;
  EdgeKind kind = EdgeKind::use;
  std::uint64_t multiplicity = 1;

  friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
};

struct EdgeKey {
  ComponentId user;
  ComponentId owner_component;
  EdgeKind kind = EdgeKind::use;

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

inline EdgeKey key_of(const DependencyEdge& e) {
  return {e.user, e.owner_component, e.kind};
}

// One piece of location evidence for an owner.
//
// `codes` holds raw jurisdiction text as recorded by the source system so
// that malformed values survive parsing and show up as validation findings.
// member_locations carries one code per member (a multiset, at least one);
// every other source carries exactly one code. Questionnaire answers are
// treated as explicit assignments by the resolver.
struct LocationEvidence {
  EvidenceSource source = EvidenceSource::explicit_assignment;
  std::vector<std::string> codes;
  Date recorded_at{};

  friend bool operator==(const LocationEvidence&, const LocationEvidence&) = default;
};

bool payload_shape_ok(const LocationEvidence& e) noexcept;

struct Owner {
  OwnerId id;
  std::string name;
  OwnerKind kind = OwnerKind::team;
  std::vector<LocationEvidence> location_evidence;

  friend bool operator==(const Owner&, const Owner&) = default;
};

struct OwnershipAssignment {
  ComponentId component;
  OwnerId owner;

  friend auto operator<=>(const OwnershipAssignment&,
                          const OwnershipAssignment&) = default;
};

struct ArchitectureSnapshot {
  SnapshotId id;
  Date taken_at{};
  std::vector<Component> components;
  std::vector<DependencyEdge> dependencies;
  std::vector<Owner> owners;
  std::vector<OwnershipAssignment> ownership;

  // Member-wise, order-sensitive. Use equivalent() to ignore collection order.
  friend bool operator==(const ArchitectureSnapshot&,
                         const ArchitectureSnapshot&) = default;
};

// Sorts every collection into canonical order: components and owners by id,
// dependencies by (user, owner_component, kind), ownership by
// (component, owner), evidence by (recorded_at, source, codes) with member
// codes sorted.
ArchitectureSnapshot canonicalize(ArchitectureSnapshot snapshot);

// Value equality up to collection order.
bool equivalent(const ArchitectureSnapshot& a, const ArchitectureSnapshot& b);

std::uint64_t total_uses(const ArchitectureSnapshot& snapshot) noexcept;

}  // namespace taxview
