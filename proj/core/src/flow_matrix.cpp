#include "taxview/flow_matrix.hpp"

#include <algorithm>

namespace taxview {

void JurisdictionFlowMatrix::declare(const JurisdictionCode& code) { declared_.insert(code); }

void JurisdictionFlowMatrix::add(const JurisdictionCode& user, const JurisdictionCode& owner,
                                 std::uint64_t count) {
  if (count == 0) return;
  declared_.insert(user);
  declared_.insert(owner);
  cells_[{user, owner}] += count;
  total_ += count;
}

void JurisdictionFlowMatrix::add_same_owner_unknown(std::uint64_t count) {
  if (count == 0) return;
  add(JurisdictionCode::unknown(), JurisdictionCode::unknown(), count);
  same_owner_unknown_ += count;
}

std::uint64_t JurisdictionFlowMatrix::at(const JurisdictionCode& user,
                                         const JurisdictionCode& owner) const {
  auto it = cells_.find({user, owner});
  return it == cells_.end() ? 0 : it->second;
}

std::vector<JurisdictionCode> JurisdictionFlowMatrix::jurisdictions() const {
  return {declared_.begin(), declared_.end()};
}

std::vector<JurisdictionCode> JurisdictionFlowMatrix::known_jurisdictions() const {
  std::vector<JurisdictionCode> out;
  for (const auto& c : declared_) {
    if (c.is_known()) out.push_back(c);
  }
  return out;
}

bool JurisdictionFlowMatrix::has_unknown() const {
  return declared_.contains(JurisdictionCode::unknown());
}

JurisdictionFlowMatrix& JurisdictionFlowMatrix::operator+=(const JurisdictionFlowMatrix& other) {
  declared_.insert(other.declared_.begin(), other.declared_.end());
  for (const auto& [key, n] : other.cells_) cells_[key] += n;
  total_ += other.total_;
  same_owner_unknown_ += other.same_owner_unknown_;
  return *this;
}

JurisdictionFlowMatrix operator+(JurisdictionFlowMatrix a, const JurisdictionFlowMatrix& b) {
  a += b;
  return a;
}

MatrixDelta matrix_delta(const JurisdictionFlowMatrix& before,
                         const JurisdictionFlowMatrix& after) {
  MatrixDelta delta;
  for (const auto& [key, n] : after.cells()) delta[key] += static_cast<std::int64_t>(n);
  for (const auto& [key, n] : before.cells()) delta[key] -= static_cast<std::int64_t>(n);
  std::erase_if(delta, [](const auto& kv) { return kv.second == 0; });
  return delta;
}

}  // namespace taxview
