#include "taxview/diff.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "taxview/analysis.hpp"

namespace taxview {

namespace {

using ordered_json = nlohmann::ordered_json;

// Incident edges of one component, keyed with multiplicity.
using Incidence = std::map<EdgeKey, std::uint64_t>;

std::map<ComponentId, Incidence> incidence(const ArchitectureSnapshot& s) {
  std::map<ComponentId, Incidence> out;
  for (const auto& e : s.dependencies) {
    out[e.user][key_of(e)] += e.multiplicity;
    out[e.owner_component][key_of(e)] += e.multiplicity;
  }
  return out;
}

ordered_json component_json(const Component& c) {
  return ordered_json{{"id", c.id.str()},
                      {"name", c.name},
                      {"kind", to_string(c.kind)},
                      {"status", to_string(c.status)}};
}

ordered_json edge_json(const DependencyEdge& e) {
  return ordered_json{{"user", e.user.str()},
                      {"owner_component", e.owner_component.str()},
                      {"kind", to_string(e.kind)},
                      {"multiplicity", e.multiplicity}};
}

}  // namespace

bool SnapshotDelta::empty() const noexcept {
  return components_added.empty() && components_removed.empty() && components_changed.empty() &&
         edges_added.empty() && edges_removed.empty() && multiplicity_changes.empty() &&
         owners_added.empty() && owners_removed.empty() && ownership_changes.empty() &&
         jurisdiction_changes.empty() && matrix_delta.empty() && coupled_change_count == 0;
}

SnapshotDelta diff_snapshots(const ArchitectureSnapshot& a, const ArchitectureSnapshot& b,
                             const Cascade& cascade, const ScopePolicy& policy) {
  SnapshotDelta d;
  d.from_snapshot = a.id.str();
  d.to_snapshot = b.id.str();

  std::map<ComponentId, const Component*> ca, cb;
  for (const auto& c : a.components) ca.emplace(c.id, &c);
  for (const auto& c : b.components) cb.emplace(c.id, &c);
  for (const auto& [id, c] : cb) {
    auto it = ca.find(id);
    if (it == ca.end()) {
      d.components_added.push_back(*c);
    } else if (!(*it->second == *c)) {
      d.components_changed.push_back({*it->second, *c});
    }
  }
  for (const auto& [id, c] : ca) {
    if (!cb.contains(id)) d.components_removed.push_back(*c);
  }

  std::map<EdgeKey, std::uint64_t> ea, eb;
  for (const auto& e : a.dependencies) ea[key_of(e)] += e.multiplicity;
  for (const auto& e : b.dependencies) eb[key_of(e)] += e.multiplicity;
  for (const auto& [key, m] : eb) {
    auto it = ea.find(key);
    if (it == ea.end()) {
      d.edges_added.push_back({key.user, key.owner_component, key.kind, m});
    } else if (it->second != m) {
      d.multiplicity_changes.push_back({key, it->second, m});
    }
  }
  for (const auto& [key, m] : ea) {
    if (!eb.contains(key)) d.edges_removed.push_back({key.user, key.owner_component, key.kind, m});
  }

  std::set<OwnerId> oa, ob;
  for (const auto& o : a.owners) oa.insert(o.id);
  for (const auto& o : b.owners) ob.insert(o.id);
  std::ranges::set_difference(ob, oa, std::back_inserter(d.owners_added));
  std::ranges::set_difference(oa, ob, std::back_inserter(d.owners_removed));

  const OwnershipMap own_a = ownership_map(a);
  const OwnershipMap own_b = ownership_map(b);
  for (const auto& [component, owner] : own_b) {
    auto it = own_a.find(component);
    if (it != own_a.end() && it->second != owner) {
      d.ownership_changes.push_back({component, it->second, owner});
    }
  }

  const auto ja = jurisdiction_map(resolve_jurisdictions(a.owners, cascade));
  const auto jb = jurisdiction_map(resolve_jurisdictions(b.owners, cascade));
  for (const auto& [owner, code] : jb) {
    auto it = ja.find(owner);
    if (it != ja.end() && it->second != code) {
      d.jurisdiction_changes.push_back({owner, it->second, code});
    }
  }

  const Analysis before = analyze(a, policy, cascade);
  const Analysis after = analyze(b, policy, cascade);
  d.matrix_delta = matrix_delta(before.matrix, after.matrix);

  const auto inc_a = incidence(a);
  const auto inc_b = incidence(b);
  static const Incidence kNone;
  for (const auto& change : d.ownership_changes) {
    auto ia = inc_a.find(change.component);
    auto ib = inc_b.find(change.component);
    const Incidence& x = ia == inc_a.end() ? kNone : ia->second;
    const Incidence& y = ib == inc_b.end() ? kNone : ib->second;
    if (x != y) ++d.coupled_change_count;
  }
  return d;
}

ArchitectureSnapshot apply_structural_delta(const ArchitectureSnapshot& a,
                                            const SnapshotDelta& delta) {
  std::map<ComponentId, Component> components;
  for (const auto& c : a.components) components.emplace(c.id, c);
  for (const auto& c : delta.components_removed) components.erase(c.id);
  for (const auto& c : delta.components_added) components.insert_or_assign(c.id, c);
  for (const auto& ch : delta.components_changed) components.insert_or_assign(ch.after.id, ch.after);

  std::map<EdgeKey, std::uint64_t> edges;
  for (const auto& e : a.dependencies) edges[key_of(e)] += e.multiplicity;
  for (const auto& e : delta.edges_removed) edges.erase(key_of(e));
  for (const auto& e : delta.edges_added) edges[key_of(e)] = e.multiplicity;
  for (const auto& m : delta.multiplicity_changes) edges[m.edge] = m.after;

  ArchitectureSnapshot out;
  out.id = SnapshotId(delta.to_snapshot);
  out.taken_at = a.taken_at;
  for (auto& [_, c] : components) out.components.push_back(std::move(c));
  for (const auto& [k, m] : edges) out.dependencies.push_back({k.user, k.owner_component, k.kind, m});
  return out;
}

std::string delta_to_json(const SnapshotDelta& d) {
  ordered_json doc;
  doc["from_snapshot"] = d.from_snapshot;
  doc["to_snapshot"] = d.to_snapshot;

  ordered_json components;
  components["added"] = ordered_json::array();
  for (const auto& c : d.components_added) components["added"].push_back(component_json(c));
  components["removed"] = ordered_json::array();
  for (const auto& c : d.components_removed) components["removed"].push_back(component_json(c));
  components["changed"] = ordered_json::array();
  for (const auto& c : d.components_changed) {
    components["changed"].push_back(
        ordered_json{{"before", component_json(c.before)}, {"after", component_json(c.after)}});
  }
  doc["components"] = std::move(components);

  ordered_json edges;
  edges["added"] = ordered_json::array();
  for (const auto& e : d.edges_added) edges["added"].push_back(edge_json(e));
  edges["removed"] = ordered_json::array();
  for (const auto& e : d.edges_removed) edges["removed"].push_back(edge_json(e));
  edges["multiplicity_changes"] = ordered_json::array();
  for (const auto& m : d.multiplicity_changes) {
    edges["multiplicity_changes"].push_back(ordered_json{{"user", m.edge.user.str()},
                                                         {"owner_component", m.edge.owner_component.str()},
                                                         {"kind", to_string(m.edge.kind)},
                                                         {"before", m.before},
                                                         {"after", m.after},
                                                         {"delta", m.delta()}});
  }
  doc["dependencies"] = std::move(edges);

  ordered_json owners;
  owners["added"] = ordered_json::array();
  for (const auto& o : d.owners_added) owners["added"].push_back(o.str());
  owners["removed"] = ordered_json::array();
  for (const auto& o : d.owners_removed) owners["removed"].push_back(o.str());
  doc["owners"] = std::move(owners);

  doc["ownership_changes"] = ordered_json::array();
  for (const auto& c : d.ownership_changes) {
    doc["ownership_changes"].push_back(ordered_json{
        {"component", c.component.str()}, {"before", c.before.str()}, {"after", c.after.str()}});
  }
  doc["jurisdiction_changes"] = ordered_json::array();
  for (const auto& c : d.jurisdiction_changes) {
    doc["jurisdiction_changes"].push_back(ordered_json{
        {"owner", c.owner.str()}, {"before", c.before.str()}, {"after", c.after.str()}});
  }
  doc["matrix_delta"] = ordered_json::array();
  for (const auto& [key, n] : d.matrix_delta) {
    doc["matrix_delta"].push_back(ordered_json{
        {"user", key.first.str()}, {"owner", key.second.str()}, {"delta", n}});
  }
  doc["coupled_change_count"] = d.coupled_change_count;
  return doc.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

}  // namespace taxview
