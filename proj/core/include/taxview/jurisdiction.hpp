#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace taxview {

/// A taxing jurisdiction: an ISO 3166-1 alpha-3 country code, or UNKNOWN.
///
/// Only the shape is checked (three uppercase ASCII letters); the code list
/// itself is not embedded. Ordering puts known codes in byte order and
/// UNKNOWN last, which is the row/column order of every rendered matrix.
class JurisdictionCode {
 public:
  static constexpr std::string_view kUnknownText = "UNKNOWN";
  static constexpr std::string_view kTableLabel = "N/A";

  // Defaults to UNKNOWN.
  JurisdictionCode() = default;

  static JurisdictionCode unknown() { return {}; }

  // Accepts "UNKNOWN" or three uppercase letters.
  static std::optional<JurisdictionCode> parse(std::string_view text);

  // Like parse(), throwing SchemaError on malformed input.
  static JurisdictionCode from_string(std::string_view text);

  bool is_unknown() const noexcept { return code_.empty(); }
  bool is_known() const noexcept { return !code_.empty(); }

  // "UNKNOWN" for the unknown jurisdiction.
  std::string str() const;

  // "N/A" for the unknown jurisdiction.
  std::string label() const;

  friend bool operator==(const JurisdictionCode&, const JurisdictionCode&) = default;
  friend std::strong_ordering operator<=>(const JurisdictionCode& a,
                                          const JurisdictionCode& b);

 private:
  explicit JurisdictionCode(std::string code) : code_(std::move(code)) {}

  std::string code_;
};

bool is_alpha3(std::string_view text) noexcept;

}  // namespace taxview
