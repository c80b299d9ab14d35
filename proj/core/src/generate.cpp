#include "taxview/generate.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "taxview/errors.hpp"

namespace taxview {

namespace {

std::string padded(std::string_view prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

std::size_t digits_of(std::size_t n) { return std::to_string(n).size(); }

}  // namespace

std::uint64_t GeneratorRng::below(std::uint64_t bound) {
  // Rejection sampling removes the modulo bias.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

double GeneratorRng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<std::pair<JurisdictionCode, double>> GeneratorParams::default_weights() {
  std::vector<std::pair<JurisdictionCode, double>> w;
  for (const char* code : {"DEU", "FRA", "GBR", "NLD", "USA"}) {
    w.emplace_back(*JurisdictionCode::parse(code), 0.2);
  }
  return w;
}

void GeneratorParams::validate() const {
  if (component_count == 0) throw ConfigError("component_count must be positive");
  if (team_count == 0) throw ConfigError("team_count must be positive");
  if (!(unresolved_rate >= 0.0 && unresolved_rate <= 1.0)) {
    throw ConfigError("unresolved_rate must lie in [0, 1]");
  }
  if (!(dependency_density >= 0.0) || !std::isfinite(dependency_density)) {
    throw ConfigError("dependency_density must be finite and non-negative");
  }
  const auto& weights = jurisdiction_weights.empty() ? default_weights() : jurisdiction_weights;
  double sum = 0.0;
  for (const auto& [code, w] : weights) {
    if (code.is_unknown()) throw ConfigError("jurisdiction weights must use known codes");
    if (!(w >= 0.0)) throw ConfigError("jurisdiction weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("jurisdiction weights must sum to 1");
}

ArchitectureSnapshot generate(const GeneratorParams& params) {
  params.validate();
  const auto weights =
      params.jurisdiction_weights.empty() ? GeneratorParams::default_weights() : params.jurisdiction_weights;

  const std::uint64_t n = params.component_count;
  const std::uint64_t capacity = n * (n - 1);
  const double wanted = std::round(params.dependency_density * static_cast<double>(n));
  if (wanted > static_cast<double>(capacity)) {
    throw GenerationError("density " + std::to_string(params.dependency_density) + " needs " +
                          std::to_string(static_cast<std::uint64_t>(wanted)) +
                          " distinct edges, only " + std::to_string(capacity) + " possible");
  }
  const auto edge_count = static_cast<std::uint64_t>(wanted);

  GeneratorRng rng(params.seed);
  ArchitectureSnapshot s;
  s.id = SnapshotId(params.snapshot_id.empty() ? "gen-" + std::to_string(params.seed)
                                               : params.snapshot_id);
  s.taken_at = params.taken_at;

  const std::size_t team_width = digits_of(params.team_count);
  for (std::size_t t = 0; t < params.team_count; ++t) {
    const double pick = rng.unit();
    const double evidence_draw = rng.unit();
    JurisdictionCode code = weights.back().first;
    double acc = 0.0;
    for (const auto& [c, w] : weights) {
      acc += w;
      if (pick < acc) {
        code = c;
        break;
      }
    }
    Owner owner{OwnerId(padded("team-", t, team_width)), padded("Team ", t, team_width),
                OwnerKind::team, {}};
    if (evidence_draw >= params.unresolved_rate) {
      owner.location_evidence.push_back(
          {EvidenceSource::explicit_assignment, {code.str()}, params.taken_at});
    }
    s.owners.push_back(std::move(owner));
  }

  const std::size_t comp_width = digits_of(params.component_count);
  for (std::size_t i = 0; i < params.component_count; ++i) {
    ComponentId id(padded("svc-", i, comp_width));
    s.components.push_back({id, padded("service ", i, comp_width), ComponentKind::microservice,
                            ComponentStatus::production});
    s.ownership.push_back({id, s.owners[rng.below(params.team_count)].id});
  }

  auto add_edge = [&](std::uint64_t user, std::uint64_t used) {
    s.dependencies.push_back(
        {s.components[user].id, s.components[used].id, EdgeKind::use, 1});
  };

  if (edge_count * 2 <= capacity) {
    std::unordered_set<std::uint64_t> taken;
    taken.reserve(edge_count * 2);
    while (s.dependencies.size() < edge_count) {
      const std::uint64_t user = rng.below(n);
      const std::uint64_t used = rng.below(n - 1);
      const std::uint64_t target = used >= user ? used + 1 : used;
      if (taken.insert(user * n + target).second) add_edge(user, target);
    }
  } else {
    // Dense: selection sampling over all ordered pairs keeps the run bounded.
    std::uint64_t remaining_needed = edge_count;
    std::uint64_t remaining_pairs = capacity;
    for (std::uint64_t user = 0; user < n && remaining_needed > 0; ++user) {
      for (std::uint64_t used = 0; used < n && remaining_needed > 0; ++used) {
        if (used == user) continue;
        if (rng.below(remaining_pairs) < remaining_needed) {
          add_edge(user, used);
          --remaining_needed;
        }
        --remaining_pairs;
      }
    }
  }
  return s;
}

}  // namespace taxview
