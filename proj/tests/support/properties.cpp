#include "support/properties.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "support/builders.hpp"
#include "support/oracles.hpp"
#include "taxview/analysis.hpp"
#include "taxview/diff.hpp"
#include "taxview/generate.hpp"
#include "taxview/ingest.hpp"
#include "taxview/validate.hpp"
#include "taxview/views.hpp"

namespace taxview::test {

namespace {

template <class... Args>
std::string describe(std::uint64_t i, Args&&... args) {
  std::ostringstream o;
  o << "case " << i << ": ";
  (o << ... << args);
  return o.str();
}

ArchitectureSnapshot sample(std::uint64_t i) { return generate(property_params(i)); }

Analysis run(const ArchitectureSnapshot& s) { return analyze(s, {}, default_cascade()); }

std::set<std::string> ids(const std::vector<Component>& v) {
  std::set<std::string> out;
  for (const auto& c : v) out.insert(c.id.str());
  return out;
}

std::set<std::string> ids(const std::vector<OwnerId>& v) {
  std::set<std::string> out;
  for (const auto& o : v) out.insert(o.str());
  return out;
}

std::set<std::string> ids(const std::vector<DependencyEdge>& v) {
  std::set<std::string> out;
  for (const auto& e : v) out.insert(e.user.str() + ">" + e.owner_component.str());
  return out;
}

}  // namespace

ArchitectureSnapshot mutate(const ArchitectureSnapshot& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto chance = [&](unsigned pct) { return rng() % 100 < pct; };
  ArchitectureSnapshot out = s;
  out.id = SnapshotId(s.id.str() + "-m");

  std::erase_if(out.dependencies, [&](const DependencyEdge&) { return chance(15); });
  for (auto& e : out.dependencies) {
    if (chance(10)) e.multiplicity += 1 + rng() % 3;
  }

  std::set<std::string> removed;
  for (const auto& c : out.components) {
    if (out.components.size() - removed.size() > 2 && chance(5)) removed.insert(c.id.str());
  }
  std::erase_if(out.components, [&](const Component& c) { return removed.contains(c.id.str()); });
  std::erase_if(out.ownership, [&](const OwnershipAssignment& a) { return removed.contains(a.component.str()); });
  std::erase_if(out.dependencies, [&](const DependencyEdge& e) {
    return removed.contains(e.user.str()) || removed.contains(e.owner_component.str());
  });

  const auto extra = rng() % 4;
  for (std::uint64_t k = 0; k < extra && !out.owners.empty(); ++k) {
    ComponentId id("new-" + std::to_string(seed) + "-" + std::to_string(k));
    out.components.push_back({id, id.str(), ComponentKind::library, ComponentStatus::production});
    out.ownership.push_back({id, out.owners[rng() % out.owners.size()].id});
  }

  for (auto& a : out.ownership) {
    if (chance(8)) a.owner = out.owners[rng() % out.owners.size()].id;
  }
  for (auto& o : out.owners) {
    if (chance(10)) o.location_evidence.clear();
  }

  std::set<std::pair<std::string, std::string>> present;
  for (const auto& e : out.dependencies) present.insert({e.user.str(), e.owner_component.str()});
  const auto n = out.components.size();
  if (n >= 2) {
    const auto adds = rng() % 6;
    for (std::uint64_t k = 0; k < adds; ++k) {
      const auto& u = out.components[rng() % n].id;
      const auto& v = out.components[rng() % n].id;
      if (u == v || !present.insert({u.str(), v.str()}).second) continue;
      out.dependencies.push_back({u, v, EdgeKind::use, 1 + rng() % 3});
    }
  }
  return out;
}

PropertyResult check_generated_validates(std::uint64_t i) {
  const auto s = sample(i);
  const auto r = validate_snapshot(s);
  if (!r.ok()) return describe(i, format_finding(r.findings.front()));
  const auto m = mutate(s, i);
  const auto rm = validate_snapshot(m);
  for (const auto& f : rm.findings) {
    if (f.severity == Severity::error) return describe(i, "mutated: ", format_finding(f));
  }
  return std::nullopt;
}

PropertyResult check_conservation(std::uint64_t i) {
  const auto a = run(mutate(sample(i), i + 1));
  std::uint64_t uses = 0;
  for (const auto& e : a.scoped.dependencies) uses += e.multiplicity;
  std::uint64_t cell_sum = 0;
  for (const auto& [_, n] : a.matrix.cells()) cell_sum += n;
  if (cell_sum != uses || a.matrix.total() != uses) {
    return describe(i, "cell sum ", cell_sum, " vs uses ", uses);
  }
  if (cells_of(a.matrix) != brute_force_cells(a.scoped, owner_labels(a.assignments))) {
    return describe(i, "matrix differs from brute-force aggregation");
  }
  return std::nullopt;
}

PropertyResult check_partition(std::uint64_t i) {
  const auto a = run(mutate(sample(i), i + 2));
  const auto& s = a.stats;
  if (s.domestic_count + s.cross_border_count + s.unresolved_count != s.total_uses) {
    return describe(i, "counts do not add up to ", s.total_uses);
  }
  if (s.total_uses > 0 && std::abs(s.domestic_ratio + s.cross_border_ratio + s.unresolved_ratio - 1.0) > 1e-9) {
    return describe(i, "ratios do not sum to 1");
  }
  const auto t = brute_force_tally(a.scoped, owner_labels(a.assignments));
  if (t.domestic != s.domestic_count || t.cross_border != s.cross_border_count || t.unresolved != s.unresolved_count) {
    return describe(i, "classification differs from oracle: ", t.domestic, "/", t.cross_border, "/", t.unresolved,
                    " vs ", stats_line(s));
  }
  return std::nullopt;
}

PropertyResult check_permutation_invariance(std::uint64_t i) {
  auto s = mutate(sample(i), i + 3);
  if (i % 4 == 0 && !s.dependencies.empty()) s.dependencies.push_back(s.dependencies.front());
  const auto p = shuffled(s, i * 31 + 1);
  const auto vs = validate_snapshot(s), vp = validate_snapshot(p);
  if (vs != vp) return describe(i, "validation report depends on order");
  if (!vs.ok()) return std::nullopt;
  if (!(run(s).matrix == run(p).matrix)) return describe(i, "matrix depends on order");
  if (serialize_bundle(s) != serialize_bundle(p)) return describe(i, "serialization depends on order");
  const auto other = mutate(s, i + 77);
  if (delta_to_json(diff_snapshots(s, other, default_cascade())) !=
      delta_to_json(diff_snapshots(p, shuffled(other, i), default_cascade()))) {
    return describe(i, "diff depends on order");
  }
  return std::nullopt;
}

PropertyResult check_relabeling_invariance(std::uint64_t i) {
  const auto s = sample(i);
  const auto r = relabeled(s, "renamed/");
  if (!(run(s).matrix == run(r).matrix)) return describe(i, "matrix depends on identifiers");
  return std::nullopt;
}

PropertyResult check_additivity(std::uint64_t i) {
  const auto a = sample(i);
  const auto b = relabeled(sample(i + 5000), "z-");
  const auto u = disjoint_union(a, b);
  const auto ma = run(a).matrix, mb = run(b).matrix, mu = run(u).matrix;
  if (!(mu == ma + mb)) return describe(i, "union matrix is not the sum");
  return std::nullopt;
}

PropertyResult check_uncertainty_monotonicity(std::uint64_t i) {
  const auto s = sample(i);
  const auto before = run(s);
  std::mt19937_64 rng(i);
  auto t = s;
  std::vector<std::size_t> resolved;
  for (std::size_t k = 0; k < t.owners.size(); ++k) {
    if (!t.owners[k].location_evidence.empty()) resolved.push_back(k);
  }
  if (resolved.empty()) return std::nullopt;
  t.owners[resolved[rng() % resolved.size()]].location_evidence.clear();
  const auto after = run(t);
  if (after.stats.unresolved_count < before.stats.unresolved_count) {
    return describe(i, "unresolved decreased");
  }
  if (after.stats.domestic_count + after.stats.cross_border_count >
      before.stats.domestic_count + before.stats.cross_border_count) {
    return describe(i, "resolved uses increased");
  }
  return std::nullopt;
}

PropertyResult check_diff_antisymmetry(std::uint64_t i) {
  const auto a = sample(i);
  const auto b = mutate(a, i + 11);
  const auto ab = diff_snapshots(a, b, default_cascade());
  const auto ba = diff_snapshots(b, a, default_cascade());
  if (ids(ab.components_added) != ids(ba.components_removed) ||
      ids(ab.components_removed) != ids(ba.components_added)) {
    return describe(i, "component add/remove not antisymmetric");
  }
  if (ids(ab.edges_added) != ids(ba.edges_removed) || ids(ab.edges_removed) != ids(ba.edges_added)) {
    return describe(i, "edge add/remove not antisymmetric");
  }
  if (ids(ab.owners_added) != ids(ba.owners_removed) || ids(ab.owners_removed) != ids(ba.owners_added)) {
    return describe(i, "owner add/remove not antisymmetric");
  }
  if (ab.multiplicity_changes.size() != ba.multiplicity_changes.size()) {
    return describe(i, "multiplicity changes not symmetric");
  }
  for (const auto& [key, n] : ab.matrix_delta) {
    auto it = ba.matrix_delta.find(key);
    if (it == ba.matrix_delta.end() || it->second != -n) return describe(i, "matrix delta not negated");
  }
  if (ab.matrix_delta.size() != ba.matrix_delta.size()) return describe(i, "matrix delta sizes differ");
  if (!diff_snapshots(a, a, default_cascade()).empty()) return describe(i, "self diff not empty");
  return std::nullopt;
}

PropertyResult check_matrix_delta_consistency(std::uint64_t i) {
  const auto a = sample(i);
  const auto b = mutate(a, i + 13);
  const auto d = diff_snapshots(a, b, default_cascade());
  const auto ra = run(a), rb = run(b);
  auto ca = brute_force_cells(ra.scoped, owner_labels(ra.assignments));
  auto cb = brute_force_cells(rb.scoped, owner_labels(rb.assignments));
  std::map<std::pair<std::string, std::string>, std::int64_t> expected;
  for (const auto& [k, n] : cb) expected[k] += static_cast<std::int64_t>(n);
  for (const auto& [k, n] : ca) expected[k] -= static_cast<std::int64_t>(n);
  std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
  std::map<std::pair<std::string, std::string>, std::int64_t> reported;
  for (const auto& [k, n] : d.matrix_delta) reported[{k.first.label(), k.second.label()}] = n;
  if (expected != reported) return describe(i, "reported matrix delta differs from recomputation");
  return std::nullopt;
}

PropertyResult check_bucket_partition(std::uint64_t i) {
  std::mt19937_64 rng(i + 99);
  std::vector<std::uint64_t> bounds;
  std::uint64_t b = 2 + rng() % 20;
  const auto k = 1 + rng() % 5;
  for (std::uint64_t j = 0; j < k; ++j) {
    bounds.push_back(b);
    b += 1 + rng() % 200;
  }
  const BucketScheme scheme(bounds);
  if (scheme.index_of(0)) return describe(i, "zero got a bucket");
  for (std::uint64_t n = 1; n <= bounds.back() + 50; ++n) {
    std::size_t hits = 0;
    for (std::size_t j = 0; j < scheme.bucket_count(); ++j) {
      const std::uint64_t lo = j == 0 ? 1 : bounds[j - 1];
      const bool unbounded = j + 1 == scheme.bucket_count();
      if (n >= lo && (unbounded || n < bounds[j])) ++hits;
    }
    const auto idx = scheme.index_of(n);
    if (hits != 1 || !idx) return describe(i, "count ", n, " in ", hits, " buckets");
    const std::uint64_t lo = *idx == 0 ? 1 : bounds[*idx - 1];
    if (n < lo || (*idx < bounds.size() && n >= bounds[*idx])) return describe(i, "count ", n, " misplaced");
    if (scheme.label_for(n) != scheme.label(*idx)) return describe(i, "label mismatch for ", n);
  }
  return std::nullopt;
}

PropertyResult check_round_trip(std::uint64_t i) {
  const auto s = mutate(sample(i), i + 17);
  const auto doc = serialize_bundle(s);
  const auto parsed = parse_bundle(doc);
  if (!equivalent(parsed, s)) return describe(i, "parse(serialize(s)) != s");
  if (serialize_bundle(parsed) != doc) return describe(i, "serialize(parse(d)) != d");
  const auto csv = emit_table(run(s).matrix, TableFormat::csv);
  if (csv != emit_table(run(parsed).matrix, TableFormat::csv)) return describe(i, "views differ after round trip");
  return std::nullopt;
}

}  // namespace taxview::test
