#include "taxview/resolve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "taxview/errors.hpp"

namespace taxview {

namespace {

std::string format_threshold(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

JurisdictionCode checked_code(const Owner& owner, const std::string& text) {
  auto code = JurisdictionCode::parse(text);
  if (!code) {
    throw IntegrityError("owner '" + owner.id.str() + "' has malformed jurisdiction code '" +
                         text + "'");
  }
  return *code;
}

// Latest single-code evidence among `sources`. Ties on the date must agree.
std::optional<Provenance> resolve_latest(const Owner& owner, const Resolver& resolver,
                                         std::initializer_list<EvidenceSource> sources,
                                         JurisdictionCode& out) {
  const LocationEvidence* best = nullptr;
  JurisdictionCode best_code;
  for (const auto& ev : owner.location_evidence) {
    if (std::ranges::find(sources, ev.source) == sources.end()) continue;
    if (ev.codes.size() != 1) {
      throw IntegrityError("owner '" + owner.id.str() + "' has malformed " +
                           std::string(to_string(ev.source)) + " evidence");
    }
    auto code = checked_code(owner, ev.codes.front());
    if (best == nullptr || ev.recorded_at > best->recorded_at) {
      best = &ev;
      best_code = code;
    } else if (ev.recorded_at == best->recorded_at) {
      if (code != best_code) {
        throw IntegrityError("owner '" + owner.id.str() +
                             "' has conflicting location evidence recorded on " +
                             format_date(ev.recorded_at));
      }
      if (ev.source < best->source) best = &ev;
    }
  }
  if (best == nullptr || best_code.is_unknown()) return std::nullopt;
  out = best_code;
  return Provenance{resolver, best->source,
                    best_code.str() + " (" + std::string(to_string(best->source)) +
                        ", recorded " + format_date(best->recorded_at) + ")",
                    best->recorded_at};
}

std::optional<Provenance> resolve_majority(const Owner& owner, const Resolver& resolver,
                                           JurisdictionCode& out) {
  std::optional<Date> latest;
  for (const auto& ev : owner.location_evidence) {
    if (ev.source != EvidenceSource::member_locations) continue;
    if (!latest || ev.recorded_at > *latest) latest = ev.recorded_at;
  }
  if (!latest) return std::nullopt;

  std::map<JurisdictionCode, std::size_t> counts;
  std::size_t members = 0;
  for (const auto& ev : owner.location_evidence) {
    if (ev.source != EvidenceSource::member_locations || ev.recorded_at != *latest) continue;
    for (const auto& text : ev.codes) {
      ++counts[checked_code(owner, text)];
      ++members;
    }
  }
  if (members == 0) return std::nullopt;

  const JurisdictionCode* leader = nullptr;
  std::size_t leader_count = 0;
  for (const auto& [code, n] : counts) {
    if (code.is_known() && n > leader_count) {
      leader = &code;
      leader_count = n;
    }
  }
  if (leader == nullptr) return std::nullopt;
  const double share = static_cast<double>(leader_count) / static_cast<double>(members);
  if (share < resolver.threshold) return std::nullopt;

  out = *leader;
  return Provenance{resolver, EvidenceSource::member_locations,
                    leader->str() + " " + std::to_string(leader_count) + "/" +
                        std::to_string(members) + " members (share " + format_threshold(share) +
                        " >= " + format_threshold(resolver.threshold) +
                        "); approximated from member locations, recorded " +
                        format_date(*latest),
                    *latest};
}

JurisdictionAssignment resolve_owner(const Owner& owner, const Cascade& cascade) {
  for (const auto& resolver : cascade) {
    JurisdictionCode code;
    std::optional<Provenance> provenance;
    switch (resolver.kind) {
      case ResolverKind::explicit_assignment:
        provenance = resolve_latest(
            owner, resolver,
            {EvidenceSource::explicit_assignment, EvidenceSource::questionnaire}, code);
        break;
      case ResolverKind::member_majority:
        provenance = resolve_majority(owner, resolver, code);
        break;
      case ResolverKind::manager_location:
        provenance =
            resolve_latest(owner, resolver, {EvidenceSource::manager_location}, code);
        break;
    }
    if (provenance) return {owner.id, code, std::move(provenance)};
  }
  return {owner.id, JurisdictionCode::unknown(), std::nullopt};
}

}  // namespace

std::string Resolver::describe() const {
  switch (kind) {
    case ResolverKind::explicit_assignment:
      return "explicit_assignment";
    case ResolverKind::member_majority:
      return "member_majority(" + format_threshold(threshold) + ")";
    case ResolverKind::manager_location:
      return "manager_location";
  }
  return {};
}

Cascade default_cascade() {
  return {Resolver::explicit_assignment(), Resolver::member_majority(),
          Resolver::manager_location()};
}

Resolver parse_resolver(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = trim(text.substr(1, text.size() - 2));
  }
  if (text == "explicit_assignment") return Resolver::explicit_assignment();
  if (text == "manager_location") return Resolver::manager_location();
  if (text == "member_majority") return Resolver::member_majority();
  constexpr std::string_view prefix = "member_majority(";
  if (text.starts_with(prefix) && text.ends_with(')')) {
    auto arg = trim(text.substr(prefix.size(), text.size() - prefix.size() - 1));
    double theta = 0;
    auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), theta);
    if (ec != std::errc{} || end != arg.data() + arg.size()) {
      throw ConfigError("invalid member_majority threshold '" + std::string(arg) + "'");
    }
    Resolver r = Resolver::member_majority(theta);
    validate_cascade({r});
    return r;
  }
  throw ConfigError("unknown resolver '" + std::string(text) + "'");
}

Cascade parse_cascade(std::string_view text) {
  text = trim(text);
  if (text.starts_with('[') && text.ends_with(']')) text = text.substr(1, text.size() - 2);
  Cascade cascade;
  while (!trim(text).empty()) {
    auto comma = text.find(',');
    cascade.push_back(parse_resolver(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  validate_cascade(cascade);
  return cascade;
}

void validate_cascade(const Cascade& cascade) {
  if (cascade.empty()) throw ConfigError("resolver cascade is empty");
  for (const auto& r : cascade) {
    if (r.kind != ResolverKind::member_majority) continue;
    if (!std::isfinite(r.threshold) || r.threshold <= 0.5 || r.threshold > 1.0) {
      throw ConfigError("member_majority threshold must lie in (0.5, 1], got " +
                        format_threshold(r.threshold));
    }
  }
}

std::string JurisdictionAssignment::provenance_label() const {
  return provenance ? provenance->resolver.describe() : std::string("unresolved");
}

std::vector<JurisdictionAssignment> resolve_jurisdictions(std::span<const Owner> owners,
                                                          const Cascade& cascade) {
  validate_cascade(cascade);
  std::vector<JurisdictionAssignment> out;
  out.reserve(owners.size());
  for (const auto& owner : owners) out.push_back(resolve_owner(owner, cascade));
  std::ranges::stable_sort(out, {}, &JurisdictionAssignment::owner);
  return out;
}

ResolutionSummary resolution_summary(std::span<const JurisdictionAssignment> assignments) {
  ResolutionSummary s;
  for (const auto& a : assignments) {
    if (a.resolved()) {
      ++s.resolved_count;
      ++s.per_resolver[a.provenance->resolver.describe()];
    } else {
      ++s.unresolved_count;
    }
  }
  if (s.total() > 0) {
    s.unresolved_ratio =
        static_cast<double>(s.unresolved_count) / static_cast<double>(s.total());
  }
  return s;
}

}  // namespace taxview
