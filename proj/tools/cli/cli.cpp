#include "cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "cli/run_config.hpp"
#include "taxview/analysis.hpp"
#include "taxview/diff.hpp"
#include "taxview/errors.hpp"
#include "taxview/generate.hpp"
#include "taxview/ingest.hpp"
#include "taxview/validate.hpp"
#include "taxview/version.hpp"
#include "taxview/views.hpp"

namespace taxview::cli {

namespace {

namespace fs = std::filesystem;

class InputError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError("error while reading '" + path + "'");
  return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream o(path, std::ios::binary | std::ios::trunc);
  if (!o) throw InputError("cannot write '" + path.string() + "'");
  o.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!o) throw InputError("error while writing '" + path.string() + "'");
}

std::string percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", ratio * 100.0);
  return buf;
}

void print_summary(const ComplianceStats& s, std::ostream& out) {
  out << stats_line(s) << "\n";
  out << "ratios: domestic=" << percent(s.domestic_ratio)
      << " cross_border=" << percent(s.cross_border_ratio)
      << " unresolved=" << percent(s.unresolved_ratio)
      << " cross_border_or_unresolved=" << percent(s.exposure_ratio) << "\n";
  if (s.resolution) {
    const auto& r = *s.resolution;
    out << "owners: total=" << r.total() << " resolved=" << r.resolved_count
        << " unresolved=" << r.unresolved_count << " (" << percent(r.unresolved_ratio) << ")";
    for (const auto& [name, n] : r.per_resolver) out << " " << name << "=" << n;
    out << "\n";
  }
  if (s.exclusions) {
    const auto& x = *s.exclusions;
    out << "excluded: components=" << x.excluded_components.size() << "/" << x.total_components
        << " (" << percent(x.component_ratio()) << ") edges=" << x.excluded_edges << "/"
        << x.total_edges << "\n";
  }
}

ArchitectureSnapshot load_bundle(const std::string& path) { return parse_bundle(read_file(path)); }

// Validates and prints findings; returns false when the snapshot failed.
bool check(const ArchitectureSnapshot& snapshot, std::ostream& out) {
  auto report = validate_snapshot(snapshot);
  if (report.ok()) return true;
  for (const auto& f : report.findings) out << format_finding(f) << "\n";
  out << "status=failed\n";
  return false;
}

// The data behind one report: either a full snapshot analysis or a bare
// matrix (the aggregate-only fixture).
struct ViewInputs {
  std::string snapshot_id;
  std::optional<Date> taken_at;
  std::string input;
  JurisdictionFlowMatrix matrix;
  ComplianceStats stats;
  RegisterTables registers;
};

std::optional<ViewInputs> prepare(const std::string& bundle, const std::string& fixture_name,
                                  const RunConfig& cfg, std::ostream& out) {
  if (bundle.empty() == fixture_name.empty()) {
    throw ConfigError("give either a bundle path or --fixture");
  }
  ArchitectureSnapshot snapshot;
  std::string input;
  if (!fixture_name.empty()) {
    auto f = fixture(fixture_name);
    input = "fixture:" + fixture_name;
    if (auto* m = std::get_if<JurisdictionFlowMatrix>(&f)) {
      ViewInputs v;
      v.snapshot_id = m->snapshot_id();
      v.input = input;
      v.matrix = *m;
      v.stats = compute_stats(v.matrix);
      v.registers.snapshot_id = v.snapshot_id;
      return v;
    }
    snapshot = std::get<ArchitectureSnapshot>(std::move(f));
  } else {
    snapshot = load_bundle(bundle);
    input = bundle;
  }
  if (!check(snapshot, out)) return std::nullopt;

  Analysis a = analyze(snapshot, cfg.policy, cfg.cascade);
  ViewInputs v;
  v.snapshot_id = snapshot.id.str();
  v.taken_at = snapshot.taken_at;
  v.input = input;
  v.registers = build_registers(a.scoped, a.assignments);
  v.matrix = std::move(a.matrix);
  v.stats = std::move(a.stats);
  return v;
}

int cmd_validate(const std::string& bundle, std::ostream& out) {
  auto snapshot = load_bundle(bundle);
  auto report = validate_snapshot(snapshot);
  for (const auto& f : report.findings) out << format_finding(f) << "\n";
  out << (report.ok() ? "status=ok" : "status=failed") << "\n";
  return report.ok() ? kExitOk : kExitDomainFailure;
}

int cmd_report(const std::string& bundle, const std::string& fixture_name, const RunConfig& cfg,
               std::ostream& out) {
  if (cfg.format && *cfg.format != OutputFormat::csv && *cfg.format != OutputFormat::markdown) {
    throw ConfigError("report writes tables as csv or markdown, not " +
                      std::string(to_string(*cfg.format)));
  }
  auto v = prepare(bundle, fixture_name, cfg, out);
  if (!v) return kExitDomainFailure;

  ReportMetadata meta;
  meta.snapshot_id = v->snapshot_id;
  meta.taken_at = v->taken_at;
  meta.input = v->input;
  meta.tool_version = kVersion;
  meta.policy = cfg.policy;
  meta.cascade = cfg.cascade;
  meta.graph = cfg.graph;
  meta.table_format = cfg.table_format();

  const std::string ext = cfg.table_format() == TableFormat::csv ? ".csv" : ".md";
  const auto registers = render_registers(v->registers, cfg.table_format());
  const std::vector<std::pair<fs::path, std::string>> files{
      {cfg.out_dir / "view.dot", emit_graph(v->matrix, cfg.graph)},
      {cfg.out_dir / ("view" + ext), emit_table(v->matrix, cfg.table_format())},
      {cfg.out_dir / ("registers" + ext), registers.components},
      {cfg.out_dir / ("owners" + ext), registers.owners},
      {cfg.out_dir / "report.json", emit_report(v->stats, v->matrix, v->registers, meta)},
  };
  for (const auto& [path, content] : files) write_file(path, content);

  print_summary(v->stats, out);
  for (const auto& [path, _] : files) out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int cmd_stats(const std::string& bundle, const std::string& fixture_name, const RunConfig& cfg,
              std::ostream& out) {
  auto v = prepare(bundle, fixture_name, cfg, out);
  if (!v) return kExitDomainFailure;
  if (cfg.format == OutputFormat::json) {
    out << stats_to_json(v->stats);
  } else {
    print_summary(v->stats, out);
  }
  return kExitOk;
}

int cmd_diff(const std::string& from, const std::string& to, bool out_dir_given,
             const RunConfig& cfg, std::ostream& out) {
  auto a = load_bundle(from);
  auto b = load_bundle(to);
  if (!check(a, out) || !check(b, out)) return kExitDomainFailure;
  auto delta = diff_snapshots(a, b, cfg.cascade, cfg.policy);
  const std::string json = delta_to_json(delta);
  if (out_dir_given) write_file(cfg.out_dir / "delta.json", json);
  if (cfg.format == OutputFormat::json) {
    out << json;
    return kExitOk;
  }
  std::int64_t matrix_change = 0;
  for (const auto& [_, n] : delta.matrix_delta) matrix_change += n < 0 ? -n : n;
  out << (delta.empty() ? "no changes" : "changes") << ": " << delta.from_snapshot << " -> "
      << delta.to_snapshot << "\n";
  out << "components: +" << delta.components_added.size() << " -"
      << delta.components_removed.size() << " ~" << delta.components_changed.size() << "\n";
  out << "dependencies: +" << delta.edges_added.size() << " -" << delta.edges_removed.size()
      << " multiplicity_changes=" << delta.multiplicity_changes.size() << "\n";
  out << "owners: +" << delta.owners_added.size() << " -" << delta.owners_removed.size()
      << " ownership_changes=" << delta.ownership_changes.size()
      << " jurisdiction_changes=" << delta.jurisdiction_changes.size()
      << " coupled_changes=" << delta.coupled_change_count << "\n";
  out << "matrix: changed_cells=" << delta.matrix_delta.size()
      << " absolute_change=" << matrix_change << "\n";
  return kExitOk;
}

struct GenOptions {
  GeneratorParams params;
  std::vector<std::string> weights;
  std::string taken_at;
  std::string output;
};

std::vector<std::pair<JurisdictionCode, double>> parse_weights(const std::vector<std::string>& items) {
  std::vector<std::pair<JurisdictionCode, double>> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("weight '" + item + "' is not CODE=probability");
    auto code = JurisdictionCode::parse(item.substr(0, eq));
    if (!code || code->is_unknown()) throw ConfigError("invalid jurisdiction in weight '" + item + "'");
    double w = 0;
    const char* begin = item.data() + eq + 1;
    const char* end = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(begin, end, w);
    if (ec != std::errc{} || ptr != end) throw ConfigError("invalid probability in weight '" + item + "'");
    out.emplace_back(*code, w);
  }
  return out;
}

int cmd_gen(GenOptions opts, std::ostream& out) {
  if (!opts.weights.empty()) opts.params.jurisdiction_weights = parse_weights(opts.weights);
  if (!opts.taken_at.empty()) {
    auto d = parse_date(opts.taken_at);
    if (!d) throw ConfigError("invalid --taken-at '" + opts.taken_at + "'");
    opts.params.taken_at = *d;
  }
  const auto snapshot = generate(opts.params);
  const std::string bundle = serialize_bundle(snapshot);
  if (opts.output.empty()) {
    out << bundle;
  } else {
    write_file(opts.output, bundle);
    out << "generated " << snapshot.id.str() << ": components=" << snapshot.components.size()
        << " owners=" << snapshot.owners.size() << " dependencies=" << snapshot.dependencies.size()
        << " algorithm=" << kGeneratorAlgorithm << "\n";
  }
  return kExitOk;
}

int cmd_fixture(const std::string& name, const RunConfig& cfg, std::ostream& out) {
  auto f = fixture(name);
  if (auto* m = std::get_if<JurisdictionFlowMatrix>(&f)) {
    switch (cfg.format.value_or(OutputFormat::csv)) {
      case OutputFormat::json:
        out << matrix_to_json(*m);
        break;
      case OutputFormat::dot:
        out << emit_graph(*m, cfg.graph);
        break;
      default:
        out << emit_table(*m, cfg.table_format());
    }
    return kExitOk;
  }
  const auto& snapshot = std::get<ArchitectureSnapshot>(f);
  const auto format = cfg.format.value_or(OutputFormat::json);
  if (format == OutputFormat::json) {
    out << serialize_bundle(snapshot);
    return kExitOk;
  }
  auto a = analyze(snapshot, cfg.policy, cfg.cascade);
  out << (format == OutputFormat::dot ? emit_graph(a.matrix, cfg.graph)
                                      : emit_table(a.matrix, cfg.table_format()));
  return kExitOk;
}

struct AssembleOptions {
  std::string edges, ownership, jurisdictions, taken_at, snapshot_id, output;
};

int cmd_assemble(const AssembleOptions& o, std::ostream& out) {
  auto d = parse_date(o.taken_at);
  if (!d) throw ConfigError("invalid --taken-at '" + o.taken_at + "'");
  const std::string edges = read_file(o.edges);
  const std::string ownership = read_file(o.ownership);
  const std::string jurisdictions = read_file(o.jurisdictions);
  auto snapshot = assemble_from_csv({edges, ownership, jurisdictions}, *d, SnapshotId(o.snapshot_id));
  const std::string bundle = serialize_bundle(snapshot);
  if (o.output.empty()) {
    out << bundle;
  } else {
    write_file(o.output, bundle);
    out << "assembled " << snapshot.id.str() << ": components=" << snapshot.components.size()
        << " owners=" << snapshot.owners.size() << " dependencies=" << snapshot.dependencies.size()
        << "\n";
  }
  return kExitOk;
}

constexpr const char* kCsvHelp =
    "Builds a bundle from edges.csv (user,owner_component[,kind][,multiplicity]), "
    "ownership.csv (component,owner) and jurisdictions.csv (owner,jurisdiction; alpha-3 or N/A). "
    "Components default to kind=other, status=production so they pass the default scope; "
    "owners default to kind=team.";

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jurisdiction-level architecture views of component reuse for tax compliance",
               "taxview"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML config file; command-line flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RawOptions raw;
  app.add_option("--resolvers", raw.resolvers,
                 "Resolver cascade, e.g. explicit_assignment,member_majority(0.75),manager_location")
      ->delimiter(',');
  app.add_option("--include-statuses", raw.include_statuses,
                 "Component statuses in scope (default: production)")
      ->delimiter(',');
  app.add_flag("--keep-individual-owners", raw.keep_individual_owners,
               "Keep components owned by individuals (excluded by default)");
  app.add_option("--buckets", raw.buckets, "Graph labels: none, default (10,100), or b1,b2,...")
      ->capture_default_str();
  app.add_flag("--no-domestic", raw.no_domestic, "Drop domestic self-loops from the graph");
  app.add_option("--format", raw.format, "Output format: dot, csv, markdown, json");
  auto* out_dir_opt = app.add_option("--out-dir", raw.out_dir, "Directory for written artifacts")
                          ->capture_default_str();

  std::string bundle, fixture_name, second_bundle;

  auto* validate = app.add_subcommand("validate", "Check a snapshot bundle; exit 1 on findings");
  validate->fallthrough();
  validate->add_option("bundle", bundle, "Snapshot bundle (JSON)")->required();

  auto* report = app.add_subcommand(
      "report", "Write view.dot, view.csv, registers.csv, owners.csv and report.json");
  report->fallthrough();
  report->add_option("bundle", bundle, "Snapshot bundle (JSON)");
  report->add_option("--fixture", fixture_name, "Built-in fixture: devnullsoft, casestudy_matrix");

  auto* stats = app.add_subcommand("stats", "Print compliance statistics");
  stats->fallthrough();
  stats->add_option("bundle", bundle, "Snapshot bundle (JSON)");
  stats->add_option("--fixture", fixture_name, "Built-in fixture: devnullsoft, casestudy_matrix");

  auto* diff = app.add_subcommand("diff", "Compare two snapshot bundles");
  diff->fallthrough();
  diff->add_option("from", bundle, "Earlier snapshot bundle")->required();
  diff->add_option("to", second_bundle, "Later snapshot bundle")->required();

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "Generate a deterministic synthetic snapshot");
  gen->fallthrough();
  gen->add_option("--components", gen_opts.params.component_count, "Component count")
      ->capture_default_str();
  gen->add_option("--teams", gen_opts.params.team_count, "Team count")->capture_default_str();
  gen->add_option("--weights", gen_opts.weights,
                  "Jurisdiction weights, e.g. DEU=0.5,SWE=0.5 (default: five equal)")
      ->delimiter(',');
  gen->add_option("--unresolved-rate", gen_opts.params.unresolved_rate,
                  "Probability that a team has no location evidence")
      ->capture_default_str();
  gen->add_option("--density", gen_opts.params.dependency_density, "Expected edges per component")
      ->capture_default_str();
  gen->add_option("--seed", gen_opts.params.seed, "Random seed")->capture_default_str();
  gen->add_option("--snapshot-id", gen_opts.params.snapshot_id, "Snapshot id (default gen-<seed>)");
  gen->add_option("--taken-at", gen_opts.taken_at, "Snapshot date, YYYY-MM-DD (default 2023-06-30)");
  gen->add_option("-o,--output", gen_opts.output, "Output file (default: standard output)");

  std::string fixture_arg;
  auto* fix = app.add_subcommand("fixture", "Print a built-in fixture");
  fix->fallthrough();
  fix->add_option("name", fixture_arg, "devnullsoft (bundle) or casestudy_matrix (table)")
      ->required();

  AssembleOptions asm_opts;
  auto* assemble = app.add_subcommand("assemble", "Assemble a bundle from CSV tables");
  assemble->fallthrough();
  assemble->footer(kCsvHelp);
  assemble->add_option("--edges", asm_opts.edges, "Edge list CSV")->required();
  assemble->add_option("--ownership", asm_opts.ownership, "Ownership CSV")->required();
  assemble->add_option("--jurisdictions", asm_opts.jurisdictions, "Jurisdiction CSV")->required();
  assemble->add_option("--taken-at", asm_opts.taken_at, "Snapshot date, YYYY-MM-DD")->required();
  assemble->add_option("--snapshot-id", asm_opts.snapshot_id, "Snapshot id (default csv-<date>)");
  assemble->add_option("-o,--output", asm_opts.output, "Output file (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputFailure;
  }

  try {
    const RunConfig cfg = make_run_config(raw);
    if (*validate) return cmd_validate(bundle, out);
    if (*report) return cmd_report(bundle, fixture_name, cfg, out);
    if (*stats) return cmd_stats(bundle, fixture_name, cfg, out);
    if (*diff) return cmd_diff(bundle, second_bundle, out_dir_opt->count() > 0, cfg, out);
    if (*gen) return cmd_gen(std::move(gen_opts), out);
    if (*fix) return cmd_fixture(fixture_arg, cfg, out);
    if (*assemble) return cmd_assemble(asm_opts, out);
  } catch (const ConsistencyError& e) {
    err << "taxview: " << e.what() << "\n";
    return kExitDomainFailure;
  } catch (const IntegrityError& e) {
    err << "taxview: " << e.what() << "\n";
    return kExitDomainFailure;
  } catch (const ParseError& e) {
    err << "taxview: parse error at byte " << e.offset() << ": " << e.what() << "\n";
    return kExitInputFailure;
  } catch (const Error& e) {
    err << "taxview: " << e.what() << "\n";
    return kExitInputFailure;
  }
  return kExitInputFailure;
}

}  // namespace taxview::cli
