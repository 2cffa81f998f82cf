#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgrad/cancel.hpp"
#include "rgrad/numeric.hpp"
#include "rgrad/pi_series.hpp"
#include "rgrad/presentation.hpp"
#include "rgrad/symbolic_chain.hpp"

namespace rgrad {

struct EngineBudgets {
  std::size_t max_elements = 16;
  std::size_t max_delta_depth = 4;
  std::size_t max_index = 1'000'000;
  std::size_t stabilization_window = 2;
  /// Largest integer written out in full; bigger ones stay factored.
  std::size_t max_bits = kDefaultMaxBits;
  std::size_t simplify_budget = kDefaultSimplifyBudget;

  [[nodiscard]] ChainLimits chain_limits() const { return {max_index, simplify_budget}; }

  bool operator==(const EngineBudgets&) const = default;
};

struct EngineConfig {
  Presentation seed;
  /// Lower bound for the deficiency of the seed group; at most d - r of the
  /// seed presentation, which witnesses it.
  BigInt asserted_deficiency;
  PiSequence pi;
  Rational epsilon;
  EngineBudgets budgets;

  /// r = L(G) - 1 - epsilon
  [[nodiscard]] Rational r() const;
  /// Throws InputError: L >= 2, 0 < epsilon < 1, r > 0, L <= d - r(seed),
  /// nonempty prime sequence, positive window.
  void validate() const;
};

/// Freely reduced words in ShortLex order: by length, then letter by letter
/// with x0 < x0^-1 < x1 < x1^-1 < ... The empty word comes first.
class ShortLexCursor {
 public:
  ShortLexCursor() = default;
  explicit ShortLexCursor(std::size_t generator_count) : generators_(generator_count) {}

  /// Next word; nullopt only for the rank-0 group after the empty word.
  std::optional<Word> next();
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  bool advance(std::size_t length);

  std::size_t generators_ = 0;
  std::size_t position_ = 0;
  bool started_ = false;
  std::vector<std::uint32_t> codes_;
};

std::vector<Word> enumerate_elements(std::size_t generator_count, std::size_t count);

enum class StepCase { initial, extend, kill };
std::string_view to_string(StepCase c);

struct OrderObservation {
  std::size_t level = 0;
  std::optional<std::uint64_t> order;
  bool operator==(const OrderObservation&) const = default;
};

struct Classification {
  enum class Kind { finite, unresolved } kind = Kind::unresolved;
  /// "identity", "proven-finite", "heuristic-stable" or "unresolved".
  std::string reason;
  /// Order at the stabilized level, or the order bound from a relator.
  std::optional<std::uint64_t> m;
  std::optional<std::size_t> level;
  std::vector<OrderObservation> observed;
};

struct KillingLevel {
  std::size_t n = 0;
  std::uint64_t m = 0;
};

struct LedgerRecord {
  Rational excess_ratio;
  std::optional<BigInt> lower_bound;
  Derivation derivation = Derivation::asserted_input;
  std::optional<long long> witness_deficiency;
  std::optional<std::string> witness_hash;

  bool operator==(const LedgerRecord&) const = default;
};

struct Ineq8Record {
  Rational lhs;
  Rational rhs;
  bool holds = false;

  bool operator==(const Ineq8Record&) const = default;
};

struct Ineq9Record {
  std::optional<BigInt> dA;
  Rational dA_excess_ratio;
  std::string dA_source;
  std::optional<BigInt> lhs;
  std::optional<Rational> rhs;
  Rational lhs_normalized;
  Rational rhs_normalized;
  bool holds = false;

  bool operator==(const Ineq9Record&) const = default;
};

struct StageRecord {
  std::size_t k = 0;
  std::optional<std::size_t> element_index;
  std::optional<std::string> word;
  StepCase step = StepCase::initial;
  std::string reason;
  std::size_t n = 0;
  std::optional<std::uint64_t> m;
  std::string presentation_hash;
  std::size_t relator_count = 0;
  FactoredIndex index;
  std::optional<BigInt> index_decimal;
  LedgerRecord ledger;
  std::optional<Ineq8Record> ineq8;
  Ineq9Record ineq9;
  std::vector<OrderObservation> observed_orders;
  /// Kill steps: the killed power fixes the origin at level n.
  std::optional<bool> cond_c;
  /// Kill steps: the new group's own chain reproduces the level-n table.
  std::optional<bool> index_identity;

  bool operator==(const StageRecord&) const = default;
};

struct AssumptionRecord {
  std::size_t k = 0;
  std::size_t element_index = 0;
  std::string word;
  std::string reason;

  bool operator==(const AssumptionRecord&) const = default;
};

struct KilledRecord {
  std::size_t k = 0;
  std::string word;
  std::uint64_t m = 0;
  std::size_t n = 0;

  bool operator==(const KilledRecord&) const = default;
};

struct BudgetReport {
  std::size_t elements_processed = 0;
  bool complete = false;
  std::string stop_reason;

  bool operator==(const BudgetReport&) const = default;
};

struct Certificate {
  std::string format = "rgrad-certificate/1";
  std::string presentation_hash;
  BigInt asserted_deficiency;
  std::vector<std::uint64_t> primes;
  Rational epsilon;
  Rational r;
  EngineBudgets budgets;
  std::vector<StageRecord> records;
  std::vector<AssumptionRecord> assumptions;
  BudgetReport budget;
  std::vector<KilledRecord> killed;
  Rational lower_bound;
  std::string scope;
};

/// Text stating what the bound covers; part of every certificate.
std::string_view conclusion_scope();

struct EngineState {
  std::size_t k = 0;
  Presentation group;
  std::size_t n = 0;
  /// D_k = delta_{n_k}(G_k), together with a witness presentation while
  /// small enough.
  DeltaNode d;
  ShortLexCursor cursor;
  std::size_t elements_processed = 0;
};

class Engine {
 public:
  explicit Engine(EngineConfig config, CancelToken cancel = {});

  /// Processes elements until max_elements or a budget/cancel stop.
  void run();
  /// Processes one element; false once nothing more can be done.
  bool step();

  /// Rebuilds the state by replaying a checkpointed certificate; every
  /// regenerated record must match. Throws InputError on a mismatch.
  void resume(const Certificate& checkpoint);

  [[nodiscard]] const EngineState& state() const { return state_; }
  [[nodiscard]] const Certificate& certificate() const { return cert_; }
  [[nodiscard]] const EngineConfig& config() const { return config_; }

  /// Levels n_k+1 .. max_delta_depth of the current group's chain, built
  /// from D_k as far as possible (missing entries are absent levels).
  const std::vector<DeltaNode>& levels();

  Classification classify_order(const Word& w);
  std::optional<KillingLevel> find_killing_level(const Word& w);
  void apply_case1(const Word& w, const std::string& reason);
  void apply_case2(const Word& w, const KillingLevel& kl);

 private:
  void begin();
  void finish(bool complete, std::string reason);
  StageRecord make_record(StepCase c, std::string reason);
  std::uint64_t prime_at(std::size_t level) const { return config_.pi.at(level); }

  EngineConfig config_;
  CancelToken cancel_;
  EngineState state_;
  Certificate cert_;
  std::optional<std::vector<DeltaNode>> levels_;
  bool done_ = false;
};

/// Convenience: validate, run, return the certificate.
Certificate run_engine(const EngineConfig& config, const CancelToken& cancel = {});

std::string certificate_to_json(const Certificate& cert);
/// Throws InputError on malformed or non-canonical input.
Certificate certificate_from_json(std::string_view text);

struct VerifyReport {
  bool pass = false;
  std::optional<std::size_t> first_bad_record;
  std::string message;
};

/// Replays the certificate against the config without using any of its
/// recorded values, then compares field by field.
VerifyReport verify_certificate(std::string_view certificate_json, const EngineConfig& config);

/// Builds the config a certificate claims to echo, for a given seed.
EngineConfig config_from_certificate(const Certificate& cert, const Presentation& seed);

}  // namespace rgrad
