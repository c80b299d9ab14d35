#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxview/classify.hpp"
#include "taxview/flow_matrix.hpp"
#include "taxview/model.hpp"
#include "taxview/resolve.hpp"

namespace taxview {

// Half-open count intervals [1,b1), [b1,b2), ..., [b_last,inf).
class BucketScheme {
 public:
  // [10, 100]
  BucketScheme();
  // Throws ConfigError unless boundaries are non-empty, strictly ascending,
  // and the first is at least 2.
  explicit BucketScheme(std::vector<std::uint64_t> boundaries);

  // "default" or a comma separated boundary list, e.g. "10,100".
  static BucketScheme parse(std::string_view text);

  const std::vector<std::uint64_t>& boundaries() const noexcept { return boundaries_; }
  std::size_t bucket_count() const noexcept { return boundaries_.size() + 1; }

  // Index of the bucket holding `count`, nullopt for zero.
  std::optional<std::size_t> index_of(std::uint64_t count) const noexcept;
  // "[1,10)", "[100,∞)". Empty for zero.
  std::string label_for(std::uint64_t count) const;
  std::string label(std::size_t index) const;
  // "10,100"
  std::string describe() const;

  friend bool operator==(const BucketScheme&, const BucketScheme&) = default;

 private:
  std::vector<std::uint64_t> boundaries_;
};

// Cell labels for every cell of matrix.jurisdictions() squared; zero cells
// map to "".
struct BucketedMatrix {
  std::vector<JurisdictionCode> jurisdictions;
  std::map<JurisdictionPair, std::string> labels;
};

BucketedMatrix bucketize(const JurisdictionFlowMatrix& matrix, const BucketScheme& scheme);

struct GraphOptions {
  std::optional<BucketScheme> buckets;
  bool include_domestic = true;

  friend bool operator==(const GraphOptions&, const GraphOptions&) = default;
};

// Graphviz DOT. Nodes are known jurisdictions with a nonzero known-known
// cell; edges are the nonzero known-known cells, user -> owner. UNKNOWN never
// appears; the header comment records how many uses were left out.
std::string emit_graph(const JurisdictionFlowMatrix& matrix, const GraphOptions& options = {});

enum class TableFormat { csv, markdown };

std::string_view to_string(TableFormat f) noexcept;

// Square table over the known jurisdictions plus a final N/A row and column,
// rows = user jurisdiction, columns = owner jurisdiction.
std::string emit_table(const JurisdictionFlowMatrix& matrix, TableFormat format);

struct ComponentRegisterRow {
  ComponentId component;
  std::string name;
  ComponentKind kind = ComponentKind::other;
  ComponentStatus status = ComponentStatus::production;
  OwnerId owner;
};

struct OwnerRegisterRow {
  OwnerId owner;
  std::string name;
  OwnerKind kind = OwnerKind::team;
  std::size_t component_count = 0;
  JurisdictionAssignment assignment;
};

struct RegisterTables {
  std::string snapshot_id;
  std::vector<ComponentRegisterRow> components;  // by component id
  std::vector<OwnerRegisterRow> owners;          // by owner id
};

// Throws IntegrityError when an owner has no assignment.
RegisterTables build_registers(const ArchitectureSnapshot& snapshot,
                               std::span<const JurisdictionAssignment> assignments);

struct RenderedRegisters {
  std::string components;
  std::string owners;
};

RenderedRegisters render_registers(const RegisterTables& tables, TableFormat format);

RenderedRegisters emit_registers(const ArchitectureSnapshot& snapshot,
                                 std::span<const JurisdictionAssignment> assignments,
                                 TableFormat format);

struct ReportMetadata {
  std::string snapshot_id;
  std::optional<Date> taken_at;
  // Bundle path or fixture name.
  std::string input;
  std::string tool_version;
  ScopePolicy policy;
  Cascade cascade;
  GraphOptions graph;
  TableFormat table_format = TableFormat::csv;
};

// Canonical JSON report. Throws ConsistencyError when the inputs do not all
// come from metadata.snapshot_id.
std::string emit_report(const ComplianceStats& stats, const JurisdictionFlowMatrix& matrix,
                        const RegisterTables& registers, const ReportMetadata& metadata);

// Stats as canonical JSON (also embedded in the report).
std::string stats_to_json(const ComplianceStats& stats);

// Matrix as canonical JSON: {"jurisdictions": [...], "cells": [[...], ...]}.
std::string matrix_to_json(const JurisdictionFlowMatrix& matrix);

}  // namespace taxview
