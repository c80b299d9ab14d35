#include "taxview/ingest.hpp"

#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "taxview/errors.hpp"

namespace taxview {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be rejected.
class ObjectReader {
 public:
  ObjectReader(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) throw SchemaError(path_or_root(), "expected an object");
  }

  const json& required(const std::string& key) {
    auto it = value_.find(key);
    if (it == value_.end()) throw SchemaError(path_or_root(), "missing field '" + key + "'");
    seen_.insert(key);
    return *it;
  }

  const json* optional(const std::string& key) {
    auto it = value_.find(key);
    if (it == value_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  std::string string(const std::string& key) {
    const json& v = required(key);
    if (!v.is_string()) throw SchemaError(child(key), "expected a string");
    return v.get<std::string>();
  }

  const json& array(const std::string& key) {
    const json& v = required(key);
    if (!v.is_array()) throw SchemaError(child(key), "expected an array");
    return v;
  }

  Date date(const std::string& key) {
    auto text = string(key);
    auto d = parse_date(text);
    if (!d) throw SchemaError(child(key), "invalid ISO-8601 date '" + text + "'");
    return *d;
  }

  template <class E>
  E enumeration(const std::string& key, std::optional<E> (*convert)(std::string_view) noexcept) {
    auto text = string(key);
    auto v = convert(text);
    if (!v) throw SchemaError(child(key), "unknown " + key + " value '" + text + "'");
    return *v;
  }

  std::string child(const std::string& key) const { return path_ + "/" + key; }

  void finish() const {
    for (const auto& [key, _] : value_.items()) {
      if (!seen_.contains(key)) throw SchemaError(child(key), "unknown field '" + key + "'");
    }
  }

 private:
  std::string path_or_root() const { return path_.empty() ? "/" : path_; }

  const json& value_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string indexed(const std::string& base, std::size_t i) {
  return base + "/" + std::to_string(i);
}

Component read_component(const json& v, const std::string& path) {
  ObjectReader r(v, path);
  Component c;
  c.id = ComponentId(r.string("id"));
  c.name = r.string("name");
  c.kind = r.enumeration<ComponentKind>("kind", component_kind_from);
  c.status = r.enumeration<ComponentStatus>("status", component_status_from);
  r.finish();
  return c;
}

DependencyEdge read_edge(const json& v, const std::string& path) {
  ObjectReader r(v, path);
  DependencyEdge e;
  e.user = ComponentId(r.string("user"));
  e.owner_component = ComponentId(r.string("owner_component"));
  e.kind = r.enumeration<EdgeKind>("kind", edge_kind_from);
  if (const json* m = r.optional("multiplicity")) {
    // nlohmann parses non-negative integers as unsigned.
    if (!m->is_number_unsigned() || m->get<std::uint64_t>() == 0) {
      throw SchemaError(r.child("multiplicity"), "expected a positive integer");
    }
    e.multiplicity = m->get<std::uint64_t>();
  }
  r.finish();
  return e;
}

LocationEvidence read_evidence(const json& v, const std::string& path) {
  ObjectReader r(v, path);
  LocationEvidence ev;
  ev.source = r.enumeration<EvidenceSource>("source", evidence_source_from);
  if (ev.source == EvidenceSource::member_locations) {
    const json& members = r.array("members");
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!members[i].is_string()) {
        throw SchemaError(indexed(r.child("members"), i), "expected a string");
      }
      ev.codes.push_back(members[i].get<std::string>());
    }
  } else {
    ev.codes.push_back(r.string("jurisdiction"));
  }
  ev.recorded_at = r.date("recorded_at");
  r.finish();
  return ev;
}

Owner read_owner(const json& v, const std::string& path) {
  ObjectReader r(v, path);
  Owner o;
  o.id = OwnerId(r.string("id"));
  o.name = r.string("name");
  o.kind = r.enumeration<OwnerKind>("kind", owner_kind_from);
  const json& evidence = r.array("location_evidence");
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    o.location_evidence.push_back(read_evidence(evidence[i], indexed(r.child("location_evidence"), i)));
  }
  r.finish();
  return o;
}

OwnershipAssignment read_ownership(const json& v, const std::string& path) {
  ObjectReader r(v, path);
  OwnershipAssignment a{ComponentId(r.string("component")), OwnerId(r.string("owner"))};
  r.finish();
  return a;
}

ArchitectureSnapshot read_snapshot(const json& doc) {
  ObjectReader r(doc, "");
  const json& version = r.required("schema_version");
  if (!version.is_number_integer()) throw SchemaError("/schema_version", "expected an integer");
  if (version.get<long long>() != kBundleSchemaVersion) {
    throw UnsupportedVersionError(version.get<long long>());
  }

  ArchitectureSnapshot s;
  s.id = SnapshotId(r.string("snapshot_id"));
  s.taken_at = r.date("taken_at");

  const json& components = r.array("components");
  for (std::size_t i = 0; i < components.size(); ++i) {
    s.components.push_back(read_component(components[i], indexed("/components", i)));
  }
  const json& deps = r.array("dependencies");
  for (std::size_t i = 0; i < deps.size(); ++i) {
    s.dependencies.push_back(read_edge(deps[i], indexed("/dependencies", i)));
  }
  const json& owners = r.array("owners");
  for (std::size_t i = 0; i < owners.size(); ++i) {
    s.owners.push_back(read_owner(owners[i], indexed("/owners", i)));
  }
  const json& ownership = r.array("ownership");
  for (std::size_t i = 0; i < ownership.size(); ++i) {
    s.ownership.push_back(read_ownership(ownership[i], indexed("/ownership", i)));
  }
  r.finish();
  return s;
}

ordered_json evidence_json(const LocationEvidence& ev) {
  ordered_json j;
  j["source"] = to_string(ev.source);
  if (ev.source == EvidenceSource::member_locations) {
    j["members"] = ev.codes;
  } else {
    j["jurisdiction"] = ev.codes.empty() ? std::string() : ev.codes.front();
  }
  j["recorded_at"] = format_date(ev.recorded_at);
  return j;
}

}  // namespace

ArchitectureSnapshot parse_bundle(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  try {
    return read_snapshot(doc);
  } catch (const json::exception& e) {
    throw SchemaError("", e.what());
  }
}

std::string serialize_bundle(const ArchitectureSnapshot& snapshot) {
  const ArchitectureSnapshot s = canonicalize(snapshot);

  ordered_json doc;
  doc["schema_version"] = kBundleSchemaVersion;
  doc["snapshot_id"] = s.id.str();
  doc["taken_at"] = format_date(s.taken_at);

  doc["components"] = ordered_json::array();
  for (const auto& c : s.components) {
    ordered_json j;
    j["id"] = c.id.str();
    j["name"] = c.name;
    j["kind"] = to_string(c.kind);
    j["status"] = to_string(c.status);
    doc["components"].push_back(std::move(j));
  }
  doc["dependencies"] = ordered_json::array();
  for (const auto& e : s.dependencies) {
    ordered_json j;
    j["user"] = e.user.str();
    j["owner_component"] = e.owner_component.str();
    j["kind"] = to_string(e.kind);
    j["multiplicity"] = e.multiplicity;
    doc["dependencies"].push_back(std::move(j));
  }
  doc["owners"] = ordered_json::array();
  for (const auto& o : s.owners) {
    ordered_json j;
    j["id"] = o.id.str();
    j["name"] = o.name;
    j["kind"] = to_string(o.kind);
    j["location_evidence"] = ordered_json::array();
    for (const auto& ev : o.location_evidence) j["location_evidence"].push_back(evidence_json(ev));
    doc["owners"].push_back(std::move(j));
  }
  doc["ownership"] = ordered_json::array();
  for (const auto& a : s.ownership) {
    ordered_json j;
    j["component"] = a.component.str();
    j["owner"] = a.owner.str();
    doc["ownership"].push_back(std::move(j));
  }
  return doc.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

namespace {

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (const auto& f : fields) out += (out.empty() ? "" : ",") + f;
  return out;
}

std::vector<detail::CsvRow> read_table(std::string_view text, const std::string& name,
                                       const std::vector<std::string>& header) {
  auto rows = detail::read_csv(text);
  if (rows.empty()) throw SchemaError(name + ": line 1", "missing header");
  if (rows.front().fields != header) {
    throw SchemaError(name + ": line " + std::to_string(rows.front().line),
                      "expected header '" + join(header) + "'");
  }
  for (const auto& row : rows) {
    if (row.fields.size() != header.size()) {
      throw SchemaError(name + ": line " + std::to_string(row.line),
                        "expected " + std::to_string(header.size()) + " fields, got " +
                            std::to_string(row.fields.size()));
    }
    for (const auto& f : row.fields) {
      if (f.empty()) {
        throw SchemaError(name + ": line " + std::to_string(row.line), "empty field");
      }
    }
  }
  rows.erase(rows.begin());
  return rows;
}

std::vector<std::string> edge_header(std::string_view text) {
  auto rows = detail::read_csv(text);
  if (rows.empty()) throw SchemaError("edges: line 1", "missing header");
  const auto& h = rows.front().fields;
  static const std::vector<std::vector<std::string>> accepted{
      {"user", "owner_component"},
      {"user", "owner_component", "kind"},
      {"user", "owner_component", "multiplicity"},
      {"user", "owner_component", "kind", "multiplicity"},
  };
  for (const auto& candidate : accepted) {
    if (h == candidate) return candidate;
  }
  throw SchemaError("edges: line " + std::to_string(rows.front().line),
                    "expected header 'user,owner_component[,kind][,multiplicity]'");
}

std::uint64_t parse_multiplicity(const std::string& text, const std::string& loc) {
  std::uint64_t v = 0;
  if (text.empty() || text.size() > 19) throw SchemaError(loc, "invalid multiplicity '" + text + "'");
  for (char c : text) {
    if (c < '0' || c > '9') throw SchemaError(loc, "invalid multiplicity '" + text + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (v == 0) throw SchemaError(loc, "multiplicity must be positive");
  return v;
}

}  // namespace

ArchitectureSnapshot assemble_from_csv(const CsvInputs& inputs, Date taken_at, SnapshotId id) {
  ArchitectureSnapshot s;
  s.id = id.empty() ? SnapshotId("csv-" + format_date(taken_at)) : std::move(id);
  s.taken_at = taken_at;

  const auto header = edge_header(inputs.edges);
  const auto kind_col = std::ranges::find(header, "kind") - header.begin();
  const auto mult_col = std::ranges::find(header, "multiplicity") - header.begin();

  std::map<EdgeKey, std::uint64_t> edges;
  std::set<ComponentId> components;
  for (const auto& row : read_table(inputs.edges, "edges", header)) {
    const std::string loc = "edges: line " + std::to_string(row.line);
    EdgeKey key{ComponentId(row.fields[0]), ComponentId(row.fields[1]), EdgeKind::use};
    if (static_cast<std::size_t>(kind_col) < header.size()) {
      auto kind = edge_kind_from(row.fields[kind_col]);
      if (!kind) throw SchemaError(loc, "unknown kind value '" + row.fields[kind_col] + "'");
      key.kind = *kind;
    }
    std::uint64_t m = 1;
    if (static_cast<std::size_t>(mult_col) < header.size()) {
      m = parse_multiplicity(row.fields[mult_col], loc);
    }
    components.insert(key.user);
    components.insert(key.owner_component);
    edges[key] += m;
  }

  std::map<ComponentId, OwnerId> owner_of;
  std::set<OwnerId> owners;
  for (const auto& row : read_table(inputs.ownership, "ownership", {"component", "owner"})) {
    const std::string loc = "ownership: line " + std::to_string(row.line);
    ComponentId component(row.fields[0]);
    OwnerId owner(row.fields[1]);
    if (!components.contains(component)) {
      throw ReferenceError("dangling-reference",
                           loc + ": component '" + component.str() +
                               "' does not appear in the edge list");
    }
    auto [it, inserted] = owner_of.emplace(component, owner);
    if (!inserted && it->second != owner) {
      throw ReferenceError("multiple-owners", loc + ": component '" + component.str() +
                                                  "' is owned by both '" + it->second.str() +
                                                  "' and '" + owner.str() + "'");
    }
    owners.insert(owner);
  }

  std::map<OwnerId, JurisdictionCode> jurisdiction_of;
  for (const auto& row :
       read_table(inputs.jurisdictions, "jurisdictions", {"owner", "jurisdiction"})) {
    const std::string loc = "jurisdictions: line " + std::to_string(row.line);
    OwnerId owner(row.fields[0]);
    const std::string& text = row.fields[1];
    std::optional<JurisdictionCode> code;
    if (text == JurisdictionCode::kTableLabel) {
      code = JurisdictionCode::unknown();
    } else if (is_alpha3(text)) {
      code = JurisdictionCode::parse(text);
    }
    if (!code) {
      throw SchemaError(loc, "malformed jurisdiction '" + text + "' (expected alpha-3 or N/A)");
    }
    auto [it, inserted] = jurisdiction_of.emplace(owner, *code);
    if (!inserted && it->second != *code) {
      throw SchemaError(loc, "owner '" + owner.str() + "' listed with two jurisdictions");
    }
    owners.insert(owner);
  }

  for (const auto& c : components) {
    s.components.push_back({c, c.str(), ComponentKind::other, ComponentStatus::production});
  }
  for (const auto& [key, m] : edges) {
    s.dependencies.push_back({key.user, key.owner_component, key.kind, m});
  }
  for (const auto& o : owners) {
    Owner owner{o, o.str(), OwnerKind::team, {}};
    if (auto it = jurisdiction_of.find(o); it != jurisdiction_of.end()) {
      owner.location_evidence.push_back(
          {EvidenceSource::explicit_assignment, {it->second.str()}, taken_at});
    }
    s.owners.push_back(std::move(owner));
  }
  for (const auto& [c, o] : owner_of) s.ownership.push_back({c, o});
  return s;
}

}  // namespace taxview
