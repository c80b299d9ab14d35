#include "taxview/views.hpp"

#include <algorithm>
#include <charconv>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "taxview/errors.hpp"

namespace taxview {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string dump(const ordered_json& j) {
  return j.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<JurisdictionCode> table_axis(const JurisdictionFlowMatrix& matrix) {
  auto axis = matrix.known_jurisdictions();
  axis.push_back(JurisdictionCode::unknown());
  return axis;
}

std::string md_row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) {
    out += ' ';
    for (char ch : c) {
      if (ch == '|') out += '\\';
      out += ch;
    }
    out += " |";
  }
  out += '\n';
  return out;
}

std::string md_rule(std::size_t columns, bool numeric_after_first) {
  std::string out = "|";
  for (std::size_t i = 0; i < columns; ++i) {
    out += (numeric_after_first && i > 0) ? "---:|" : "---|";
  }
  out += '\n';
  return out;
}

std::string render(TableFormat format, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows, bool numeric) {
  std::string out;
  if (format == TableFormat::csv) {
    out += detail::csv_line(header);
    for (const auto& r : rows) out += detail::csv_line(r);
  } else {
    out += md_row(header);
    out += md_rule(header.size(), numeric);
    for (const auto& r : rows) out += md_row(r);
  }
  return out;
}

ordered_json matrix_json(const JurisdictionFlowMatrix& matrix) {
  const auto axis = table_axis(matrix);
  ordered_json j;
  j["jurisdictions"] = ordered_json::array();
  for (const auto& c : axis) j["jurisdictions"].push_back(c.str());
  j["cells"] = ordered_json::array();
  for (const auto& user : axis) {
    ordered_json row = ordered_json::array();
    for (const auto& owner : axis) row.push_back(matrix.at(user, owner));
    j["cells"].push_back(std::move(row));
  }
  j["total"] = matrix.total();
  j["same_owner_unknown"] = matrix.same_owner_unknown();
  return j;
}

ordered_json exclusions_json(const ExclusionReport& r) {
  ordered_json j;
  j["total_components"] = r.total_components;
  j["excluded_component_count"] = r.excluded_components.size();
  j["component_ratio"] = r.component_ratio();
  j["total_edges"] = r.total_edges;
  j["excluded_edges"] = r.excluded_edges;
  j["edge_ratio"] = r.edge_ratio();
  j["excluded_uses"] = r.excluded_uses;
  j["excluded_components"] = ordered_json::array();
  for (const auto& c : r.excluded_components) {
    j["excluded_components"].push_back(
        ordered_json{{"component", c.component.str()}, {"reason", to_string(c.reason)}});
  }
  return j;
}

ordered_json resolution_json(const ResolutionSummary& r) {
  ordered_json j;
  j["owners"] = r.total();
  j["resolved"] = r.resolved_count;
  j["unresolved"] = r.unresolved_count;
  j["unresolved_ratio"] = r.unresolved_ratio;
  j["per_resolver"] = ordered_json::object();
  for (const auto& [name, n] : r.per_resolver) j["per_resolver"][name] = n;
  return j;
}

ordered_json stats_json(const ComplianceStats& s) {
  ordered_json j;
  j["snapshot_id"] = s.snapshot_id;
  j["total_uses"] = s.total_uses;
  j["domestic"] = s.domestic_count;
  j["cross_border"] = s.cross_border_count;
  j["unresolved"] = s.unresolved_count;
  j["ratios"] = ordered_json{{"domestic", s.domestic_ratio},
                             {"cross_border", s.cross_border_ratio},
                             {"unresolved", s.unresolved_ratio},
                             {"exposure", s.exposure_ratio}};
  j["per_jurisdiction"] = ordered_json::array();
  for (const auto& [code, f] : s.per_jurisdiction) {
    j["per_jurisdiction"].push_back(ordered_json{{"jurisdiction", code.str()},
                                                 {"outbound", f.outbound},
                                                 {"inbound", f.inbound},
                                                 {"cross_border_outbound", f.cross_border_outbound},
                                                 {"cross_border_inbound", f.cross_border_inbound}});
  }
  j["resolution"] = s.resolution ? resolution_json(*s.resolution) : ordered_json(nullptr);
  j["exclusions"] = s.exclusions ? exclusions_json(*s.exclusions) : ordered_json(nullptr);
  return j;
}

std::string provenance_date(const JurisdictionAssignment& a) {
  return a.provenance ? format_date(a.provenance->decided_at) : std::string();
}

std::string provenance_evidence(const JurisdictionAssignment& a) {
  return a.provenance ? a.provenance->evidence : std::string();
}

}  // namespace

BucketScheme::BucketScheme() : boundaries_{10, 100} {}

BucketScheme::BucketScheme(std::vector<std::uint64_t> boundaries)
    : boundaries_(std::move(boundaries)) {
  if (boundaries_.empty()) throw ConfigError("bucket scheme needs at least one boundary");
  if (boundaries_.front() < 2) throw ConfigError("first bucket boundary must be at least 2");
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (boundaries_[i] <= boundaries_[i - 1]) {
      throw ConfigError("bucket boundaries must be strictly ascending");
    }
  }
}

BucketScheme BucketScheme::parse(std::string_view text) {
  if (text == "default") return BucketScheme();
  std::vector<std::uint64_t> bounds;
  while (true) {
    auto comma = text.find(',');
    auto part = text.substr(0, comma);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || end != part.data() + part.size()) {
      throw ConfigError("invalid bucket boundary '" + std::string(part) + "'");
    }
    bounds.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return BucketScheme(std::move(bounds));
}

std::optional<std::size_t> BucketScheme::index_of(std::uint64_t count) const noexcept {
  if (count == 0) return std::nullopt;
  return static_cast<std::size_t>(std::ranges::upper_bound(boundaries_, count) -
                                  boundaries_.begin());
}

std::string BucketScheme::label(std::size_t index) const {
  const std::uint64_t lower = index == 0 ? 1 : boundaries_[index - 1];
  const std::string upper =
      index < boundaries_.size() ? std::to_string(boundaries_[index]) : std::string("∞");
  return "[" + std::to_string(lower) + "," + upper + ")";
}

std::string BucketScheme::label_for(std::uint64_t count) const {
  auto i = index_of(count);
  return i ? label(*i) : std::string();
}

std::string BucketScheme::describe() const {
  std::string out;
  for (auto b : boundaries_) out += (out.empty() ? "" : ",") + std::to_string(b);
  return out;
}

BucketedMatrix bucketize(const JurisdictionFlowMatrix& matrix, const BucketScheme& scheme) {
  BucketedMatrix out;
  out.jurisdictions = matrix.jurisdictions();
  for (const auto& user : out.jurisdictions) {
    for (const auto& owner : out.jurisdictions) {
      out.labels[{user, owner}] = scheme.label_for(matrix.at(user, owner));
    }
  }
  return out;
}

std::string emit_graph(const JurisdictionFlowMatrix& matrix, const GraphOptions& options) {
  std::uint64_t omitted_unresolved = 0;
  std::uint64_t omitted_domestic = 0;
  std::set<JurisdictionCode> nodes;
  std::vector<std::pair<JurisdictionPair, std::uint64_t>> edges;
  for (const auto& [key, n] : matrix.cells()) {
    const auto& [user, owner] = key;
    if (user.is_unknown() || owner.is_unknown()) {
      omitted_unresolved += n;
      continue;
    }
    nodes.insert(user);
    nodes.insert(owner);
    if (user == owner && !options.include_domestic) {
      omitted_domestic += n;
      continue;
    }
    edges.emplace_back(key, n);
  }

  std::string out;
  out += "// jurisdiction flow graph: component user jurisdiction -> component owner jurisdiction\n";
  if (!matrix.snapshot_id().empty()) out += "// snapshot: " + matrix.snapshot_id() + "\n";
  out += "// omitted uses with unresolved jurisdiction: " + std::to_string(omitted_unresolved) + "\n";
  if (!options.include_domestic) {
    out += "// omitted domestic uses: " + std::to_string(omitted_domestic) + "\n";
  }
  if (options.buckets) out += "// labels: count intervals " + options.buckets->describe() + "\n";
  out += "digraph jurisdictions {\n";
  for (const auto& n : nodes) out += "  " + dot_quote(n.str()) + ";\n";
  for (const auto& [key, n] : edges) {
    const std::string label = options.buckets ? options.buckets->label_for(n) : std::to_string(n);
    out += "  " + dot_quote(key.first.str()) + " -> " + dot_quote(key.second.str()) +
           " [label=" + dot_quote(label) + "];\n";
  }
  out += "}\n";
  return out;
}

std::string_view to_string(TableFormat f) noexcept {
  return f == TableFormat::csv ? "csv" : "markdown";
}

std::string emit_table(const JurisdictionFlowMatrix& matrix, TableFormat format) {
  const auto axis = table_axis(matrix);
  std::vector<std::string> header{"user\\owner"};
  for (const auto& c : axis) header.push_back(c.label());
  std::vector<std::vector<std::string>> rows;
  for (const auto& user : axis) {
    std::vector<std::string> row{user.label()};
    for (const auto& owner : axis) row.push_back(std::to_string(matrix.at(user, owner)));
    rows.push_back(std::move(row));
  }
  return render(format, header, rows, true);
}

RegisterTables build_registers(const ArchitectureSnapshot& snapshot,
                               std::span<const JurisdictionAssignment> assignments) {
  RegisterTables t;
  t.snapshot_id = snapshot.id.str();
  const OwnershipMap ownership = ownership_map(snapshot);
  std::map<OwnerId, std::size_t> counts;
  for (const auto& c : snapshot.components) {
    auto it = ownership.find(c.id);
    if (it == ownership.end()) throw IntegrityError("component '" + c.id.str() + "' has no owner");
    t.components.push_back({c.id, c.name, c.kind, c.status, it->second});
    ++counts[it->second];
  }
  std::ranges::sort(t.components, {}, &ComponentRegisterRow::component);

  std::map<OwnerId, const JurisdictionAssignment*> by_owner;
  for (const auto& a : assignments) by_owner.emplace(a.owner, &a);
  for (const auto& o : snapshot.owners) {
    auto it = by_owner.find(o.id);
    if (it == by_owner.end()) {
      throw IntegrityError("owner '" + o.id.str() + "' has no jurisdiction assignment");
    }
    t.owners.push_back({o.id, o.name, o.kind, counts[o.id], *it->second});
  }
  std::ranges::sort(t.owners, {}, &OwnerRegisterRow::owner);
  return t;
}

RenderedRegisters render_registers(const RegisterTables& tables, TableFormat format) {
  std::vector<std::vector<std::string>> components;
  for (const auto& r : tables.components) {
    components.push_back({r.component.str(), r.name, std::string(to_string(r.kind)),
                          std::string(to_string(r.status)), r.owner.str()});
  }
  std::vector<std::vector<std::string>> owners;
  for (const auto& r : tables.owners) {
    owners.push_back({r.owner.str(), r.name, std::string(to_string(r.kind)),
                      std::to_string(r.component_count), r.assignment.jurisdiction.label(),
                      r.assignment.provenance_label(), provenance_date(r.assignment),
                      provenance_evidence(r.assignment)});
  }
  return {
      render(format, {"component", "name", "kind", "status", "owner"}, components, false),
      render(format,
             {"owner", "name", "kind", "components", "jurisdiction", "provenance", "decided_at",
              "evidence"},
             owners, false),
  };
}

RenderedRegisters emit_registers(const ArchitectureSnapshot& snapshot,
                                 std::span<const JurisdictionAssignment> assignments,
                                 TableFormat format) {
  return render_registers(build_registers(snapshot, assignments), format);
}

std::string stats_to_json(const ComplianceStats& stats) { return dump(stats_json(stats)); }

std::string matrix_to_json(const JurisdictionFlowMatrix& matrix) {
  return dump(matrix_json(matrix));
}

std::string emit_report(const ComplianceStats& stats, const JurisdictionFlowMatrix& matrix,
                        const RegisterTables& registers, const ReportMetadata& metadata) {
  const auto mismatch = [&](std::string_view what, const std::string& id) {
    throw ConsistencyError(std::string(what) + " belong to snapshot '" + id +
                           "', report is for '" + metadata.snapshot_id + "'");
  };
  if (stats.snapshot_id != metadata.snapshot_id) mismatch("statistics", stats.snapshot_id);
  if (matrix.snapshot_id() != metadata.snapshot_id) mismatch("flow matrix", matrix.snapshot_id());
  if (registers.snapshot_id != metadata.snapshot_id) mismatch("registers", registers.snapshot_id);

  ordered_json doc;
  doc["report_version"] = 1;
  doc["tool"] = ordered_json{{"name", "taxview"}, {"version", metadata.tool_version}};
  doc["snapshot"] = ordered_json{
      {"id", metadata.snapshot_id},
      {"taken_at", metadata.taken_at ? ordered_json(format_date(*metadata.taken_at))
                                     : ordered_json(nullptr)},
      {"input", metadata.input}};

  ordered_json statuses = ordered_json::array();
  for (auto s : metadata.policy.include_statuses) statuses.push_back(to_string(s));
  ordered_json resolvers = ordered_json::array();
  for (const auto& r : metadata.cascade) resolvers.push_back(r.describe());
  doc["configuration"] = ordered_json{
      {"scope", ordered_json{{"include_statuses", statuses},
                             {"exclude_individual_owners", metadata.policy.exclude_individual_owners}}},
      {"resolvers", resolvers},
      {"graph", ordered_json{{"buckets", metadata.graph.buckets
                                             ? ordered_json(metadata.graph.buckets->describe())
                                             : ordered_json(nullptr)},
                             {"include_domestic", metadata.graph.include_domestic}}},
      {"table_format", to_string(metadata.table_format)}};

  doc["structure"] = ordered_json{{"matrix", matrix_json(matrix)},
                                  {"graph_dot", emit_graph(matrix, metadata.graph)}};

  ordered_json components = ordered_json::array();
  for (const auto& r : registers.components) {
    components.push_back(ordered_json{{"component", r.component.str()},
                                      {"name", r.name},
                                      {"kind", to_string(r.kind)},
                                      {"status", to_string(r.status)},
                                      {"owner", r.owner.str()}});
  }
  doc["licensing_entities"] = ordered_json{{"components", components}};

  ordered_json owners = ordered_json::array();
  for (const auto& r : registers.owners) {
    ordered_json provenance(nullptr);
    if (const auto& p = r.assignment.provenance) {
      provenance = ordered_json{{"resolver", p->resolver.describe()},
                                {"source", to_string(p->source)},
                                {"evidence", p->evidence},
                                {"decided_at", format_date(p->decided_at)}};
    }
    owners.push_back(ordered_json{{"owner", r.owner.str()},
                                  {"name", r.name},
                                  {"kind", to_string(r.kind)},
                                  {"components", r.component_count},
                                  {"jurisdiction", r.assignment.jurisdiction.str()},
                                  {"provenance", provenance}});
  }
  doc["locations"] = ordered_json{{"owners", owners}};
  doc["statistics"] = stats_json(stats);
  return dump(doc);
}

}  // namespace taxview
