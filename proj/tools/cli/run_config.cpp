#include "cli/run_config.hpp"

#include "taxview/errors.hpp"

namespace taxview::cli {

std::string_view to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::dot:
      return "dot";
    case OutputFormat::csv:
      return "csv";
    case OutputFormat::markdown:
      return "markdown";
    case OutputFormat::json:
      return "json";
  }
  return {};
}

RunConfig make_run_config(const RawOptions& raw) {
  RunConfig cfg;

  if (!raw.include_statuses.empty()) {
    cfg.policy.include_statuses.clear();
    for (const auto& s : raw.include_statuses) {
      auto status = component_status_from(s);
      if (!status) throw ConfigError("unknown status '" + s + "' in --include-statuses");
      cfg.policy.include_statuses.insert(*status);
    }
  }
  cfg.policy.exclude_individual_owners = !raw.keep_individual_owners;
  cfg.policy.validate();

  if (raw.resolvers.empty()) {
    cfg.cascade = default_cascade();
  } else {
    for (const auto& r : raw.resolvers) cfg.cascade.push_back(parse_resolver(r));
  }
  validate_cascade(cfg.cascade);

  if (raw.buckets != "none" && !raw.buckets.empty()) {
    cfg.graph.buckets = BucketScheme::parse(raw.buckets);
  }
  cfg.graph.include_domestic = !raw.no_domestic;

  if (!raw.format.empty()) {
    for (auto f : {OutputFormat::dot, OutputFormat::csv, OutputFormat::markdown, OutputFormat::json}) {
      if (raw.format == to_string(f)) cfg.format = f;
    }
    if (!cfg.format) throw ConfigError("unknown --format '" + raw.format + "'");
  }
  cfg.out_dir = raw.out_dir;
  return cfg;
}

}  // namespace taxview::cli
