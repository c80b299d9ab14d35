#include "support/oracles.hpp"

#include <algorithm>

namespace taxview::test {

namespace {

bool known(const std::string& label) { return label != "N/A"; }

std::string owner_of(const ArchitectureSnapshot& s, const ComponentId& c) {
  for (const auto& a : s.ownership) {
    if (a.component == c) return a.owner.str();
  }
  return {};
}

std::string label_of(const OwnerLabels& labels, const std::string& owner) {
  auto it = labels.find(owner);
  return it == labels.end() ? "N/A" : it->second;
}

}  // namespace

Tally resum_published_table() {
  Tally t;
  for (std::size_t r = 0; r < kPublishedAxis.size(); ++r) {
    for (std::size_t c = 0; c < kPublishedAxis.size(); ++c) {
      const auto n = kPublishedTable[r][c];
      t.total += n;
      const bool both_known = known(kPublishedAxis[r]) && known(kPublishedAxis[c]);
      if (!both_known) {
        t.unresolved += n;
      } else if (r == c) {
        t.domestic += n;
      } else {
        t.cross_border += n;
      }
      if (both_known && n > 0) ++t.nonzero_known_cells;
    }
  }
  return t;
}

CellMap published_cells() {
  CellMap out;
  for (std::size_t r = 0; r < kPublishedAxis.size(); ++r) {
    for (std::size_t c = 0; c < kPublishedAxis.size(); ++c) {
      if (kPublishedTable[r][c] > 0) out[{kPublishedAxis[r], kPublishedAxis[c]}] = kPublishedTable[r][c];
    }
  }
  return out;
}

CellMap cells_of(const JurisdictionFlowMatrix& matrix) {
  CellMap out;
  for (const auto& [key, n] : matrix.cells()) {
    if (n > 0) out[{key.first.label(), key.second.label()}] = n;
  }
  return out;
}

OwnerLabels owner_labels(std::span<const JurisdictionAssignment> assignments) {
  OwnerLabels out;
  for (const auto& a : assignments) out[a.owner.str()] = a.jurisdiction.label();
  return out;
}

CellMap brute_force_cells(const ArchitectureSnapshot& scoped, const OwnerLabels& labels) {
  CellMap out;
  for (const auto& e : scoped.dependencies) {
    const auto u = label_of(labels, owner_of(scoped, e.user));
    const auto o = label_of(labels, owner_of(scoped, e.owner_component));
    out[{u, o}] += e.multiplicity;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Tally brute_force_tally(const ArchitectureSnapshot& scoped, const OwnerLabels& labels) {
  Tally t;
  for (const auto& e : scoped.dependencies) {
    const auto uo = owner_of(scoped, e.user);
    const auto oo = owner_of(scoped, e.owner_component);
    const auto u = label_of(labels, uo);
    const auto o = label_of(labels, oo);
    t.total += e.multiplicity;
    if (uo == oo) {
      t.domestic += e.multiplicity;
    } else if (!known(u) || !known(o)) {
      t.unresolved += e.multiplicity;
    } else if (u == o) {
      t.domestic += e.multiplicity;
    } else {
      t.cross_border += e.multiplicity;
    }
  }
  return t;
}

std::string subsidiary_of_column(int x) {
  if (x == 0 || x == 1) return "SWE";
  if (x >= 3 && x <= 5) return "DEU";
  if (x == 7) return "GBR";
  return "?";
}

CellMap tally_devnullsoft_arrows(const ArchitectureSnapshot& snapshot) {
  CellMap out;
  for (const auto& e : snapshot.dependencies) {
    const int from = e.user.str().at(1) - '0';
    const int to = e.owner_component.str().at(1) - '0';
    out[{subsidiary_of_column(from), subsidiary_of_column(to)}] += e.multiplicity;
  }
  return out;
}

CellMap devnullsoft_expected_cells() {
  return {
      {{"SWE", "SWE"}, 4}, {{"SWE", "DEU"}, 2}, {{"DEU", "DEU"}, 3},
      {{"DEU", "SWE"}, 2}, {{"DEU", "GBR"}, 5}, {{"GBR", "GBR"}, 1},
  };
}

std::optional<std::string> majority_oracle(const std::vector<std::string>& members, double theta) {
  if (members.empty()) return std::nullopt;
  for (const auto& candidate : members) {
    if (!known(candidate) || candidate == "UNKNOWN") continue;
    const auto votes = std::count(members.begin(), members.end(), candidate);
    if (static_cast<double>(votes) / static_cast<double>(members.size()) >= theta) return candidate;
  }
  return std::nullopt;
}

}  // namespace taxview::test
