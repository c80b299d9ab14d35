#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "taxview/flow_matrix.hpp"
#include "taxview/model.hpp"

namespace taxview {

// Identifies the random stream below. Changing how draws are made or in
// which order requires bumping this tag; golden tests pin its output.
inline constexpr std::string_view kGeneratorAlgorithm = "mt19937_64/v1";

struct GeneratorParams {
  std::size_t component_count = 100;
  std::size_t team_count = 10;
  // Probability per jurisdiction; must be known codes summing to 1.
  std::vector<std::pair<JurisdictionCode, double>> jurisdiction_weights;
  // Probability that a team gets no location evidence at all.
  double unresolved_rate = 0.0;
  // Expected edges per component; edge count = round(density * components).
  double dependency_density = 2.0;
  std::uint64_t seed = 1;
  Date taken_at{std::chrono::year{2023}, std::chrono::June, std::chrono::day{30}};
  // Defaults to "gen-<seed>".
  std::string snapshot_id;

  // DEU, FRA, GBR, NLD, USA, equally weighted.
  static std::vector<std::pair<JurisdictionCode, double>> default_weights();

  // Throws ConfigError.
  void validate() const;
};

// Deterministic synthetic snapshot. Draw order under kGeneratorAlgorithm:
// per team (jurisdiction, evidence-present), per component (owner), then
// edges. Components are production microservices owned by teams; edges are
// distinct `use` pairs without self-loops, multiplicity 1.
//
// Throws ConfigError for invalid params and GenerationError when the edge
// count exceeds n*(n-1).
ArchitectureSnapshot generate(const GeneratorParams& params);

// 64-bit Mersenne Twister with portable bounded-integer and unit-interval
// mappings (the std distributions are implementation-defined).
class GeneratorRng {
 public:
  explicit GeneratorRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1) with 53 bits.
  double unit();

 private:
  std::mt19937_64 engine_;
};

// Fictional three-subsidiary enterprise: 18 components in six team-owned
// columns (two Swedish, three German, one British), 17 dependencies of which
// 9 cross a border.
ArchitectureSnapshot devnullsoft_fixture();

// Published aggregate of the case-study system; raw edges are not
// available, so only the matrix exists.
JurisdictionFlowMatrix casestudy_matrix_fixture();

using Fixture = std::variant<ArchitectureSnapshot, JurisdictionFlowMatrix>;

inline constexpr std::string_view kDevnullsoftFixture = "devnullsoft";
inline constexpr std::string_view kCasestudyMatrixFixture = "casestudy_matrix";

// Throws ConfigError for an unknown name.
Fixture fixture(std::string_view name);

}  // namespace taxview
