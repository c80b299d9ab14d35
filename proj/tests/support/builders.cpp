#include "support/builders.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <sstream>

namespace taxview::test {

Date day(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

LocationEvidence explicit_evidence(const std::string& code, Date at) {
  return {EvidenceSource::explicit_assignment, {code}, at};
}

LocationEvidence member_evidence(std::vector<std::string> codes, Date at) {
  return {EvidenceSource::member_locations, std::move(codes), at};
}

LocationEvidence manager_evidence(const std::string& code, Date at) {
  return {EvidenceSource::manager_location, {code}, at};
}

SnapshotBuilder::SnapshotBuilder(std::string id) {
  snapshot_.id = SnapshotId(std::move(id));
  snapshot_.taken_at = day(2023, 6, 30);
}

SnapshotBuilder& SnapshotBuilder::team(const std::string& id, const std::string& code,
                                       OwnerKind kind) {
  Owner o{OwnerId(id), id, kind, {}};
  if (!code.empty()) o.location_evidence.push_back(explicit_evidence(code));
  return owner(std::move(o));
}

SnapshotBuilder& SnapshotBuilder::owner(Owner o) {
  snapshot_.owners.push_back(std::move(o));
  return *this;
}

SnapshotBuilder& SnapshotBuilder::component(const std::string& id, const std::string& owner,
                                            ComponentStatus status) {
  snapshot_.components.push_back({ComponentId(id), id, ComponentKind::microservice, status});
  snapshot_.ownership.push_back({ComponentId(id), OwnerId(owner)});
  return *this;
}

SnapshotBuilder& SnapshotBuilder::edge(const std::string& user, const std::string& used,
                                       std::uint64_t multiplicity) {
  snapshot_.dependencies.push_back({ComponentId(user), ComponentId(used), EdgeKind::use, multiplicity});
  return *this;
}

GeneratorParams property_params(std::uint64_t case_index) {
  std::mt19937_64 rng(0x5eed0000 + case_index);
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
  };
  GeneratorParams p;
  p.seed = case_index * 7919 + 13;
  p.component_count = pick(2, 60);
  p.team_count = pick(1, 12);
  p.dependency_density = static_cast<double>(pick(0, 30)) / 10.0;
  p.unresolved_rate = static_cast<double>(pick(0, 10)) / 10.0;
  static const std::vector<std::string> kCodes{"DEU", "FRA", "GBR", "NLD", "SWE", "USA"};
  const auto k = pick(1, kCodes.size());
  for (std::size_t i = 0; i < k; ++i) {
    p.jurisdiction_weights.emplace_back(JurisdictionCode::from_string(kCodes[i]),
                                        1.0 / static_cast<double>(k));
  }
  const double cap = static_cast<double>(p.component_count * (p.component_count - 1));
  p.dependency_density = std::min(p.dependency_density, cap / static_cast<double>(p.component_count));
  return p;
}

ArchitectureSnapshot shuffled(ArchitectureSnapshot s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::ranges::shuffle(s.components, rng);
  std::ranges::shuffle(s.dependencies, rng);
  std::ranges::shuffle(s.owners, rng);
  std::ranges::shuffle(s.ownership, rng);
  for (auto& o : s.owners) {
    std::ranges::shuffle(o.location_evidence, rng);
    for (auto& ev : o.location_evidence) std::ranges::shuffle(ev.codes, rng);
  }
  return s;
}

ArchitectureSnapshot relabeled(const ArchitectureSnapshot& s, const std::string& prefix) {
  ArchitectureSnapshot out = s;
  auto c = [&](const ComponentId& id) { return ComponentId(prefix + id.str()); };
  auto o = [&](const OwnerId& id) { return OwnerId(prefix + id.str()); };
  for (auto& x : out.components) x.id = c(x.id);
  for (auto& x : out.dependencies) {
    x.user = c(x.user);
    x.owner_component = c(x.owner_component);
  }
  for (auto& x : out.owners) x.id = o(x.id);
  for (auto& x : out.ownership) {
    x.component = c(x.component);
    x.owner = o(x.owner);
  }
  return out;
}

ArchitectureSnapshot disjoint_union(const ArchitectureSnapshot& a, const ArchitectureSnapshot& b) {
  ArchitectureSnapshot out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  out.dependencies.insert(out.dependencies.end(), b.dependencies.begin(), b.dependencies.end());
  out.owners.insert(out.owners.end(), b.owners.begin(), b.owners.end());
  out.ownership.insert(out.ownership.end(), b.ownership.begin(), b.ownership.end());
  return out;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("taxview-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

}  // namespace taxview::test
