#include <array>

#include "taxview/errors.hpp"
#include "taxview/generate.hpp"

namespace taxview {

namespace {

struct Subsidiary {
  const char* code;
  const char* legal_entity;
  std::array<int, 3> columns;  // unused slots are -1
};

// Component grid: columns 0-1 Sweden, 3-5 Germany, 7 UK; rows 0-2. Each
// column is owned by one team.
constexpr std::array<Subsidiary, 3> kSubsidiaries{{
    {"SWE", "devnullsoft AB", {0, 1, -1}},
    {"DEU", "devnullsoft GmbH", {3, 4, 5}},
    {"GBR", "devnullsoft Ltd.", {7, -1, -1}},
}};

struct Arrow {
  int from_x, from_y, to_x, to_y;
};

constexpr std::array<Arrow, 17> kArrows{{
    {4, 1, 7, 1}, {3, 2, 1, 1}, {1, 1, 3, 0}, {3, 1, 1, 2}, {3, 1, 4, 0}, {0, 2, 0, 1},
    {1, 0, 0, 1}, {1, 0, 3, 0}, {1, 1, 0, 1}, {1, 2, 0, 2}, {5, 2, 7, 2}, {5, 2, 7, 1},
    {5, 1, 7, 1}, {5, 0, 7, 1}, {7, 1, 7, 0}, {4, 2, 3, 2}, {4, 2, 5, 2},
}};

ComponentId grid_id(int x, int y) {
  return ComponentId("c" + std::to_string(x) + std::to_string(y));
}

const char* team_suffix(int index) {
  static constexpr std::array<const char*, 3> kSuffixes{"a", "b", "c"};
  return kSuffixes[static_cast<std::size_t>(index)];
}

}  // namespace

ArchitectureSnapshot devnullsoft_fixture() {
  using namespace std::chrono;
  const Date as_of{year{2023}, June, day{30}};
  const Date assigned{year{2023}, January, day{1}};

  ArchitectureSnapshot s;
  s.id = SnapshotId("devnullsoft");
  s.taken_at = as_of;

  for (const auto& sub : kSubsidiaries) {
    for (int i = 0; i < 3; ++i) {
      const int x = sub.columns[static_cast<std::size_t>(i)];
      if (x < 0) continue;
      std::string code = sub.code;
      for (auto& ch : code) ch = static_cast<char>(ch - 'A' + 'a');
      OwnerId team(code + "-team-" + team_suffix(i));
      s.owners.push_back({team,
                          std::string(sub.legal_entity) + " team " + team_suffix(i),
                          OwnerKind::team,
                          {{EvidenceSource::explicit_assignment, {sub.code}, assigned}}});
      for (int y = 0; y < 3; ++y) {
        ComponentId id = grid_id(x, y);
        s.components.push_back({id, "component " + std::to_string(x) + "/" + std::to_string(y),
                                ComponentKind::microservice, ComponentStatus::production});
        s.ownership.push_back({id, team});
      }
    }
  }
  for (const auto& a : kArrows) {
    s.dependencies.push_back({grid_id(a.from_x, a.from_y), grid_id(a.to_x, a.to_y)});
  }
  return canonicalize(std::move(s));
}

JurisdictionFlowMatrix casestudy_matrix_fixture() {
  // Rows: component user; columns: component owner; the last entry is N/A.
  static constexpr std::array<const char*, 6> kAxis{"DEU", "GBR", "NLD", "FRA", "USA", "UNKNOWN"};
  static constexpr std::array<std::array<std::uint64_t, 6>, 6> kCells{{
      {2, 2, 0, 0, 0, 4},
      {15, 164, 2, 261, 43, 141},
      {3, 6, 19, 11, 5, 8},
      {24, 108, 21, 4069, 850, 1767},
      {14, 24, 15, 1130, 1648, 642},
      {27, 70, 14, 2283, 970, 2171},
  }};
  JurisdictionFlowMatrix m{std::string(kCasestudyMatrixFixture)};
  for (std::size_t r = 0; r < kAxis.size(); ++r) {
    const auto user = JurisdictionCode::from_string(kAxis[r]);
    m.declare(user);
    for (std::size_t c = 0; c < kAxis.size(); ++c) {
      m.add(user, JurisdictionCode::from_string(kAxis[c]), kCells[r][c]);
    }
  }
  return m;
}

Fixture fixture(std::string_view name) {
  if (name == kDevnullsoftFixture) return devnullsoft_fixture();
  if (name == kCasestudyMatrixFixture) return casestudy_matrix_fixture();
  throw ConfigError("unknown fixture '" + std::string(name) + "' (expected devnullsoft or casestudy_matrix)");
}

}  // namespace taxview
