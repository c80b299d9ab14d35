#include "taxview/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace taxview {

namespace {

class FindingSink {
 public:
  void error(std::string code, std::string message, std::vector<std::string> ids = {}) {
    add(Severity::error, std::move(code), std::move(message), std::move(ids));
  }
  void warning(std::string code, std::string message, std::vector<std::string> ids = {}) {
    add(Severity::warning, std::move(code), std::move(message), std::move(ids));
  }

  ValidationReport finish() && {
    std::ranges::sort(findings_, [](const Finding& a, const Finding& b) {
      return std::tie(a.severity, a.code, a.offending_ids, a.message) <
             std::tie(b.severity, b.code, b.offending_ids, b.message);
    });
    ValidationReport report;
    report.findings = std::move(findings_);
    report.status = std::ranges::any_of(report.findings,
                                        [](const Finding& f) {
                                          return f.severity == Severity::error;
                                        })
                        ? ValidationStatus::failed
                        : ValidationStatus::ok;
    return report;
  }

 private:
  void add(Severity s, std::string code, std::string message, std::vector<std::string> ids) {
    findings_.push_back({s, std::move(code), std::move(message), std::move(ids)});
  }

  std::vector<Finding> findings_;
};

void check_evidence(const Owner& owner, FindingSink& sink) {
  // Latest explicit-class evidence per owner; ties with different codes are
  // ambiguous and must be fixed at the source.
  std::optional<Date> latest;
  std::set<std::string> latest_codes;

  for (const auto& ev : owner.location_evidence) {
    if (!payload_shape_ok(ev)) {
      sink.error("evidence-shape",
                 "owner '" + owner.id.str() + "' has " + std::string(to_string(ev.source)) +
                     " evidence with " + std::to_string(ev.codes.size()) + " codes",
                 {owner.id.str()});
      continue;
    }
    bool codes_ok = true;
    for (const auto& code : ev.codes) {
      if (!JurisdictionCode::parse(code)) {
        codes_ok = false;
        sink.error("malformed-jurisdiction",
                   "owner '" + owner.id.str() + "' has malformed jurisdiction code '" + code +
                       "' in " + std::string(to_string(ev.source)) + " evidence",
                   {owner.id.str()});
      }
    }
    if (!codes_ok) continue;
    bool explicit_class = ev.source == EvidenceSource::explicit_assignment ||
                          ev.source == EvidenceSource::questionnaire;
    if (!explicit_class) continue;
    if (!latest || ev.recorded_at > *latest) {
      latest = ev.recorded_at;
      latest_codes = {ev.codes.front()};
    } else if (ev.recorded_at == *latest) {
      latest_codes.insert(ev.codes.front());
    }
  }
  if (latest_codes.size() > 1) {
    std::string codes;
    for (const auto& c : latest_codes) codes += (codes.empty() ? "" : ", ") + c;
    sink.error("conflicting-explicit-evidence",
               "owner '" + owner.id.str() + "' has conflicting explicit assignments (" + codes +
                   ") recorded on " + format_date(*latest),
               {owner.id.str()});
  }
}

}  // namespace

std::string_view to_string(Severity s) noexcept {
  return s == Severity::error ? "error" : "warning";
}

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(std::ranges::count_if(
      findings, [](const Finding& f) { return f.severity == Severity::error; }));
}

ValidationReport validate_snapshot(const ArchitectureSnapshot& snapshot) {
  FindingSink sink;

  if (snapshot.id.empty()) sink.error("empty-id", "snapshot id is empty");

  std::map<ComponentId, std::size_t> component_counts;
  for (const auto& c : snapshot.components) ++component_counts[c.id];
  for (const auto& [id, n] : component_counts) {
    if (id.empty()) sink.error("empty-id", "component with empty id");
    if (n > 1) {
      sink.error("duplicate-component-id",
                 "component id '" + id.str() + "' appears " + std::to_string(n) + " times",
                 {id.str()});
    }
  }

  std::map<OwnerId, std::size_t> owner_counts;
  for (const auto& o : snapshot.owners) ++owner_counts[o.id];
  for (const auto& [id, n] : owner_counts) {
    if (id.empty()) sink.error("empty-id", "owner with empty id");
    if (n > 1) {
      sink.error("duplicate-owner-id",
                 "owner id '" + id.str() + "' appears " + std::to_string(n) + " times",
                 {id.str()});
    }
  }

  std::map<EdgeKey, std::size_t> edge_counts;
  for (const auto& e : snapshot.dependencies) {
    std::vector<std::string> ids{e.user.str(), e.owner_component.str()};
    if (e.user == e.owner_component) {
      sink.error("self-dependency", "component '" + e.user.str() + "' depends on itself",
                 {e.user.str()});
    }
    if (e.multiplicity == 0) {
      sink.error("zero-multiplicity",
                 "dependency " + e.user.str() + " -> " + e.owner_component.str() +
                     " has multiplicity 0",
                 ids);
    }
    for (const auto* end : {&e.user, &e.owner_component}) {
      if (!component_counts.contains(*end)) {
        sink.error("dangling-dependency-endpoint",
                   "dependency " + e.user.str() + " -> " + e.owner_component.str() +
                       " references unknown component '" + end->str() + "'",
                   ids);
      }
    }
    ++edge_counts[key_of(e)];
  }
  for (const auto& [key, n] : edge_counts) {
    if (n > 1) {
      sink.error("duplicate-dependency",
                 "dependency " + key.user.str() + " -> " + key.owner_component.str() + " (" +
                     std::string(to_string(key.kind)) + ") listed " + std::to_string(n) +
                     " times; use multiplicity",
                 {key.user.str(), key.owner_component.str()});
    }
  }

  std::map<ComponentId, std::vector<OwnerId>> owners_of;
  std::map<OwnerId, std::size_t> owned_counts;
  for (const auto& a : snapshot.ownership) {
    if (!component_counts.contains(a.component)) {
      sink.error("dangling-ownership-component",
                 "ownership references unknown component '" + a.component.str() + "'",
                 {a.component.str(), a.owner.str()});
    }
    if (!owner_counts.contains(a.owner)) {
      sink.error("dangling-ownership-owner",
                 "ownership of '" + a.component.str() + "' references unknown owner '" +
                     a.owner.str() + "'",
                 {a.component.str(), a.owner.str()});
    }
    owners_of[a.component].push_back(a.owner);
    ++owned_counts[a.owner];
  }
  for (auto& [component, owners] : owners_of) {
    std::ranges::sort(owners);
    auto dup = std::ranges::adjacent_find(owners);
    if (dup != owners.end()) {
      sink.error("duplicate-ownership",
                 "component '" + component.str() + "' assigned to '" + dup->str() +
                     "' more than once",
                 {component.str(), dup->str()});
    }
    auto [first, last] = std::ranges::unique(owners);
    owners.erase(first, last);
    if (owners.size() > 1) {
      std::vector<std::string> ids{component.str()};
      for (const auto& o : owners) ids.push_back(o.str());
      sink.error("multiple-owners",
                 "component '" + component.str() + "' has " + std::to_string(owners.size()) +
                     " owners",
                 std::move(ids));
    }
  }
  for (const auto& [id, _] : component_counts) {
    if (!owners_of.contains(id)) {
      sink.error("unowned-component", "component '" + id.str() + "' has no owner", {id.str()});
    }
  }

  for (const auto& owner : snapshot.owners) {
    check_evidence(owner, sink);
    if (!owned_counts.contains(owner.id)) {
      sink.warning("owner-without-components",
                   "owner '" + owner.id.str() + "' owns no component", {owner.id.str()});
    }
  }

  return std::move(sink).finish();
}

std::string format_finding(const Finding& f) {
  std::string out = std::string(to_string(f.severity)) + " " + f.code + ": " + f.message;
  if (!f.offending_ids.empty()) {
    out += " [";
    for (std::size_t i = 0; i < f.offending_ids.size(); ++i) {
      if (i) out += ", ";
      out += f.offending_ids[i];
    }
    out += "]";
  }
  return out;
}

}  // namespace taxview
