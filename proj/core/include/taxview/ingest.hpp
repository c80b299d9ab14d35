#pragma once

#include <string>
#include <string_view>

#include "taxview/model.hpp"

namespace taxview {

inline constexpr int kBundleSchemaVersion = 1;

// Parses a snapshot bundle (UTF-8 JSON, schema_version 1). Only the
// interchange schema is enforced here; run validate_snapshot() afterwards.
//
// Throws ParseError (syntax, with byte offset), UnsupportedVersionError, or
// SchemaError (with JSON pointer). Unknown fields are rejected at every level.
ArchitectureSnapshot parse_bundle(std::string_view document);

// Canonical bundle: fixed key order, canonicalized collections, two-space
// indentation, trailing newline. Equivalent snapshots serialize to identical
// bytes.
std::string serialize_bundle(const ArchitectureSnapshot& snapshot);

struct CsvInputs {
  // user,owner_component[,kind][,multiplicity]
  std::string_view edges;
  // component,owner
  std::string_view ownership;
  // owner,jurisdiction   (jurisdiction is alpha-3 or N/A)
  std::string_view jurisdictions;
};

// Builds a snapshot from the three tabular inputs. Components are
// synthesized from ids in the edge and ownership files (kind=other,
// status=production); owners from the ownership and jurisdiction files
// (kind=team). Each jurisdiction row becomes explicit_assignment evidence
// recorded at `taken_at`; N/A becomes explicit UNKNOWN. Repeated edge rows
// with the same (user, owner_component, kind) are folded into multiplicity.
//
// Throws SchemaError for bad headers, rows, or codes; ReferenceError
// ("dangling-reference") when an ownership row names a component that no
// edge mentions; ReferenceError ("multiple-owners") when a component is
// listed under two owners.
ArchitectureSnapshot assemble_from_csv(const CsvInputs& inputs, Date taken_at,
                                       SnapshotId id = {});

}  // namespace taxview
