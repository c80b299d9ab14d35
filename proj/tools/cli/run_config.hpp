#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "taxview/classify.hpp"
#include "taxview/resolve.hpp"
#include "taxview/views.hpp"

namespace taxview::cli {

// Raw option values as they arrive from flags or the config file.
struct RawOptions {
  std::vector<std::string> resolvers;
  std::vector<std::string> include_statuses;
  bool keep_individual_owners = false;
  std::string buckets = "none";
  bool no_domestic = false;
  std::string format;
  std::string out_dir = ".";
};

enum class OutputFormat { dot, csv, markdown, json };

struct RunConfig {
  ScopePolicy policy;
  Cascade cascade;
  GraphOptions graph;
  std::optional<OutputFormat> format;
  std::filesystem::path out_dir;

  TableFormat table_format() const {
    return format == OutputFormat::markdown ? TableFormat::markdown : TableFormat::csv;
  }
};

// Throws ConfigError on any invalid value.
RunConfig make_run_config(const RawOptions& raw);

std::string_view to_string(OutputFormat f) noexcept;

}  // namespace taxview::cli
