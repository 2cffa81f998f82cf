#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "rgrad/numeric.hpp"
#include "rgrad/pi_series.hpp"

namespace rgrad {

inline constexpr std::size_t kDefaultMaxBits = 1u << 16;

/// A level of a delta-chain inside some ambient group G. Small levels carry a
/// full stage (presentation, tables); deeper ones are only known through their
/// index and exact ratios, which is enough for every inequality the engine
/// checks.
struct DeltaNode {
  std::size_t level = 0;
  std::uint64_t prime = 0;
  FactoredIndex index;
  /// Certified (L - 1) / index for the deficiency lower bound L of the node.
  Rational excess_ratio;
  /// (rank - 1) / index when the node is known to be a free group.
  std::optional<Rational> free_ratio;
  std::optional<PiChainStage> stage;

  [[nodiscard]] bool materialized() const { return stage.has_value(); }
  [[nodiscard]] std::optional<BigInt> index_value(std::size_t max_bits) const {
    return index.value(max_bits);
  }
  /// L = excess_ratio * index + 1, when it fits.
  [[nodiscard]] std::optional<BigInt> lower_bound(std::size_t max_bits) const;
  [[nodiscard]] std::optional<BigInt> free_rank(std::size_t max_bits) const;
};

/// Wraps a built stage; the ratios come from its ledger and presentation.
DeltaNode node_from_stage(PiChainStage stage);

/// The next level at prime p. Builds a stage while the cumulative index stays
/// within limits.max_index, otherwise continues symbolically: a free node of
/// rank R has index multiplied by p^R and keeps both ratios; anything else
/// without a presentation cannot be continued (BudgetExhausted).
DeltaNode next_node(const DeltaNode& parent, std::uint64_t p, const ChainLimits& limits,
                    std::size_t max_bits = kDefaultMaxBits, const CancelToken& cancel = {});

/// dim over F_p of the node's H_1 with F_p coefficients, or the best certified
/// lower bound for it.
struct RankModP {
  std::optional<BigInt> value;
  /// (value - 1) / index, exact even when value is too large to write down.
  Rational excess_ratio;
  /// "presentation", "free_rank" or "ledger_bound".
  std::string source;
};

RankModP node_rank_mod_p(const DeltaNode& node, std::uint64_t p,
                         std::size_t max_bits = kDefaultMaxBits);

}  // namespace rgrad
