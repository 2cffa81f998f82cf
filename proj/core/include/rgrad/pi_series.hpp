#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgrad/cancel.hpp"
#include "rgrad/coset_table.hpp"
#include "rgrad/presentation.hpp"
#include "rgrad/tietze.hpp"

namespace rgrad {

enum class PiMode { all_distinct, constant_p, mixed };

std::string_view to_string(PiMode m);

/// A finite prefix (p_1, p_2, ...) of a sequence of primes.
class PiSequence {
 public:
  PiSequence() = default;
  /// Throws InputError on a non-prime entry.
  explicit PiSequence(std::vector<std::uint64_t> primes);

  /// "2,3,5" or "(2,3,5)".
  static PiSequence parse(std::string_view text);

  [[nodiscard]] const std::vector<std::uint64_t>& primes() const { return primes_; }
  [[nodiscard]] std::size_t size() const { return primes_.size(); }
  /// p_i for i >= 1.
  [[nodiscard]] std::uint64_t at(std::size_t i) const;
  /// A prefix of length one, or with every entry equal, counts as constant;
  /// otherwise all-distinct or mixed.
  [[nodiscard]] PiMode mode() const { return mode_; }
  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<std::uint64_t> primes_;
  PiMode mode_ = PiMode::all_distinct;
};

struct ChainLimits {
  /// Largest cumulative index [G : delta_i] that gets a coset table.
  std::size_t max_index = 1'000'000;
  std::size_t simplify_budget = kDefaultSimplifyBudget;
};

/// One level of the chain G = delta_0 >= delta_1 >= ... with everything
/// needed to continue it: a presentation of delta_i, its table inside
/// delta_{i-1} and inside G, and for every edge of the cumulative table a word
/// in delta_i's generators. Rewriting a word of G that starts and ends at
/// coset 0 edge by edge gives the same element of delta_i.
struct PiChainStage {
  std::size_t level = 0;
  std::uint64_t prime = 0;
  Presentation presentation;
  CosetTable relative_table;
  CosetTable cumulative_table;
  /// Indexed by cumulative coset * d_G + positive generator of G.
  std::vector<Word> edge_words;
  std::uint64_t relative_index = 1;
  std::uint64_t cumulative_index = 1;
  /// rank_mod_p of the previous stage's presentation.
  std::size_t rank_exponent = 0;
  /// Reidemeister-Schreier counts before cleanup.
  std::size_t raw_generator_count = 0;
  std::size_t raw_relator_count = 0;
  DeficiencyLedgerEntry ledger;

  [[nodiscard]] const Word& edge(Coset c, std::uint32_t g) const {
    return edge_words[c * cumulative_table.generator_count() + g];
  }
};

/// Level 0: G itself, with the one-coset tables.
PiChainStage base_stage(const Presentation& g, const DeficiencyLedgerEntry& ledger);
PiChainStage base_stage(const Presentation& g);

/// [delta_{i-1}, delta_{i-1}] delta_{i-1}^p as the kernel of the map onto
/// F_p^rank, built from the regular action of that vector space. Throws
/// BudgetExhausted when the cumulative index would exceed the limit.
PiChainStage delta_step(const PiChainStage& parent, std::uint64_t p,
                        const ChainLimits& limits = {}, const CancelToken& cancel = {});

/// Single step from a presentation: level 1 of its chain.
PiChainStage delta_step(const Presentation& g, std::uint64_t p, const ChainLimits& limits = {},
                        const CancelToken& cancel = {});

/// Replaces a stage's presentation by an equivalent one: `images` maps each
/// old generator to a word in the new generators; edge words follow.
PiChainStage with_presentation(PiChainStage stage, Presentation replacement,
                               const std::vector<Word>& images,
                               const DeficiencyLedgerEntry& ledger);

struct PiChain {
  PiChainStage base;
  /// Levels 1..n, in order.
  std::vector<PiChainStage> stages;
  /// Set when a level could not be built; earlier levels are kept.
  std::optional<std::size_t> failed_level;
  std::string failure;

  [[nodiscard]] std::size_t depth() const { return stages.size(); }
  /// Level 0 is the base.
  [[nodiscard]] const PiChainStage& level(std::size_t i) const;
};

/// Requires depth <= pi.size(). Budget failures stop the chain and are
/// reported in the result.
PiChain pi_chain(const Presentation& g, const PiSequence& pi, std::size_t depth,
                 const ChainLimits& limits = {}, const CancelToken& cancel = {});

/// Order of w in G / delta_level (1 at level 0).
std::uint64_t order_mod_delta(const PiChain& chain, const Word& w, std::size_t level);

struct StageCheck {
  std::size_t level = 0;
  bool pass = true;
  std::vector<std::string> failures;
};

struct GradedPrefixReport {
  std::vector<StageCheck> stages;
  [[nodiscard]] bool pass() const;
  /// Level of the first failing stage, if any.
  [[nodiscard]] std::optional<std::size_t> first_failure() const;
};

/// Independent checks per stage: relators of G act trivially, delta_i sits in
/// delta_{i-1} with the predicted index, p-th powers and commutators of
/// delta_{i-1}'s generators land in delta_i, and delta_i is normal in G.
GradedPrefixReport verify_graded_prefix(const PiChain& chain);

/// Deterministic JSON array, one object per level >= 1.
std::string chain_dump_json(const PiChain& chain);
/// The same objects, compact, one per line.
std::string chain_dump_lines(const PiChain& chain);

}  // namespace rgrad
