#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "taxview/jurisdiction.hpp"

namespace taxview {

using JurisdictionPair = std::pair<JurisdictionCode, JurisdictionCode>;

// Dependency uses aggregated by (user jurisdiction, owner jurisdiction).
//
// Rows are the jurisdiction of the using component's owner, columns the
// jurisdiction of the used component's owner. Only nonzero cells are stored.
// A jurisdiction may be declared without any cell so that resolved owners
// without cross-jurisdiction traffic still get a row.
//
// Uses between two components of the same UNKNOWN owner land in the
// (UNKNOWN, UNKNOWN) cell like any other unresolved use, but are also counted
// in same_owner_unknown(): compute_stats() treats them as domestic.
class JurisdictionFlowMatrix {
 public:
  JurisdictionFlowMatrix() = default;
  explicit JurisdictionFlowMatrix(std::string snapshot_id)
      : snapshot_id_(std::move(snapshot_id)) {}

  // Id of the snapshot the counts were taken from; metadata only, ignored by
  // operator==.
  const std::string& snapshot_id() const noexcept { return snapshot_id_; }
  void set_snapshot_id(std::string id) { snapshot_id_ = std::move(id); }

  void declare(const JurisdictionCode& code);
  void add(const JurisdictionCode& user, const JurisdictionCode& owner,
           std::uint64_t count = 1);
  void add_same_owner_unknown(std::uint64_t count = 1);

  std::uint64_t at(const JurisdictionCode& user, const JurisdictionCode& owner) const;

  // Sorted: known codes in byte order, UNKNOWN last (if present).
  std::vector<JurisdictionCode> jurisdictions() const;
  std::vector<JurisdictionCode> known_jurisdictions() const;
  bool has_unknown() const;

  const std::map<JurisdictionPair, std::uint64_t>& cells() const noexcept { return cells_; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t same_owner_unknown() const noexcept { return same_owner_unknown_; }
  bool empty() const noexcept { return cells_.empty() && declared_.empty(); }

  JurisdictionFlowMatrix& operator+=(const JurisdictionFlowMatrix& other);

  friend bool operator==(const JurisdictionFlowMatrix& a,
                         const JurisdictionFlowMatrix& b) {
    return a.declared_ == b.declared_ && a.cells_ == b.cells_ &&
           a.same_owner_unknown_ == b.same_owner_unknown_;
  }

 private:
  std::string snapshot_id_;
  std::set<JurisdictionCode> declared_;
  std::map<JurisdictionPair, std::uint64_t> cells_;
  std::uint64_t total_ = 0;
  std::uint64_t same_owner_unknown_ = 0;
};

JurisdictionFlowMatrix operator+(JurisdictionFlowMatrix a, const JurisdictionFlowMatrix& b);

// Nonzero signed cell differences, after - before.
using MatrixDelta = std::map<JurisdictionPair, std::int64_t>;

MatrixDelta matrix_delta(const JurisdictionFlowMatrix& before,
                         const JurisdictionFlowMatrix& after);

}  // namespace taxview
