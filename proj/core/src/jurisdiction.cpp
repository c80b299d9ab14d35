#include "taxview/jurisdiction.hpp"

#include "taxview/errors.hpp"

namespace taxview {

bool is_alpha3(std::string_view text) noexcept {
  if (text.size() != 3) return false;
  for (char c : text) {
    if (c < 'A' || c > 'Z') return false;
  }
  return true;
}

std::optional<JurisdictionCode> JurisdictionCode::parse(std::string_view text) {
  if (text == kUnknownText) return unknown();
  if (!is_alpha3(text)) return std::nullopt;
  return JurisdictionCode(std::string(text));
}

JurisdictionCode JurisdictionCode::from_string(std::string_view text) {
  if (auto code = parse(text)) return *code;
  throw SchemaError("", "malformed jurisdiction code '" + std::string(text) +
                            "' (expected ISO 3166-1 alpha-3 or UNKNOWN)");
}

std::string JurisdictionCode::str() const {
  return is_unknown() ? std::string(kUnknownText) : code_;
}

std::string JurisdictionCode::label() const {
  return is_unknown() ? std::string(kTableLabel) : code_;
}

std::strong_ordering operator<=>(const JurisdictionCode& a, const JurisdictionCode& b) {
  if (a.is_unknown() != b.is_unknown()) {
    return a.is_unknown() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.code_ <=> b.code_;
}

}  // namespace taxview
