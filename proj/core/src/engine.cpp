#include "rgrad/engine.hpp"

#include <numeric>

#include "rgrad/errors.hpp"
#include "rgrad/linalg.hpp"
#include "rgrad/rewriting.hpp"
#include "rgrad/tietze.hpp"

namespace rgrad {

Rational EngineConfig::r() const {
  Rational v = Rational(asserted_deficiency) - 1 - epsilon;
  v.canonicalize();
  return v;
}

void EngineConfig::validate() const {
  if (asserted_deficiency < 2) {
    throw InputError("asserted deficiency must be at least 2, got " +
                     asserted_deficiency.get_str());
  }
  if (asserted_deficiency > BigInt(static_cast<long>(presentation_deficiency(seed)))) {
    throw InputError("asserted deficiency " + asserted_deficiency.get_str() +
                     " exceeds d - r = " + std::to_string(presentation_deficiency(seed)) +
                     " of the seed presentation");
  }
  if (!(epsilon > 0 && epsilon < 1)) {
    throw InputError("epsilon must lie strictly between 0 and 1, got " +
                     format_rational(epsilon));
  }
  if (r() <= 0) throw InputError("r = L - 1 - epsilon must be positive");
  if (pi.size() == 0) throw InputError("the prime sequence is empty");
  if (budgets.stabilization_window == 0) throw InputError("stabilization window must be positive");
  if (budgets.max_bits < 64) throw InputError("max_bits must be at least 64");
}

std::optional<Word> ShortLexCursor::next() {
  ++position_;
  if (!started_) {
    started_ = true;
    return Word{};
  }
  const std::size_t width = 2 * generators_;
  if (width == 0) return std::nullopt;
  if (codes_.empty() || !advance(codes_.size())) {
    codes_.assign(codes_.size() + 1, 0);
  }
  std::vector<Letter> letters;
  for (auto c : codes_) letters.push_back(Letter::from_code(c));
  return Word::reduce(letters);
}

bool ShortLexCursor::advance(std::size_t length) {
  const std::uint32_t width = static_cast<std::uint32_t>(2 * generators_);
  for (std::size_t i = length; i-- > 0;) {
    std::uint32_t c = codes_[i] + 1;
    while (c < width && i > 0 && c == (codes_[i - 1] ^ 1u)) ++c;
    if (c >= width) continue;
    codes_[i] = c;
    for (std::size_t j = i + 1; j < length; ++j) codes_[j] = (codes_[j - 1] ^ 1u) == 0 ? 1 : 0;
    return true;
  }
  return false;
}

std::vector<Word> enumerate_elements(std::size_t generator_count, std::size_t count) {
  ShortLexCursor cur(generator_count);
  std::vector<Word> out;
  while (out.size() < count) {
    auto w = cur.next();
    if (!w) break;
    out.push_back(std::move(*w));
  }
  return out;
}

std::string_view to_string(StepCase c) {
  switch (c) {
    case StepCase::initial: return "initial";
    case StepCase::extend: return "extend";
    case StepCase::kill: return "kill";
  }
  return "initial";
}

std::string_view conclusion_scope() {
  return "Every recorded subgroup D_k satisfies d(A_k) - 1 > r [G_k : D_k] exactly. The bound "
         "r on the rank gradient of the limit group is conditional: it also needs every "
         "processed element to have finite order in the limit, which finite data cannot "
         "confirm for elements listed under assumptions, and it says nothing about elements "
         "beyond the processed prefix.";
}

namespace {

Rational canon(Rational q) {
  q.canonicalize();
  return q;
}

Derivation node_derivation(const DeltaNode& n) {
  if (n.stage) return n.stage->ledger.derivation;
  return Derivation::finite_index_transfer;
}

}  // namespace

Engine::Engine(EngineConfig config, CancelToken cancel)
    : config_(std::move(config)), cancel_(std::move(cancel)) {
  config_.validate();
  begin();
}

void Engine::begin() {
  state_ = EngineState{};
  state_.group = config_.seed;
  DeficiencyLedgerEntry ledger = asserted_ledger(config_.seed);
  ledger.lower_bound = config_.asserted_deficiency;
  state_.d = node_from_stage(base_stage(config_.seed, ledger));
  state_.cursor = ShortLexCursor(config_.seed.generator_count());
  levels_.reset();
  done_ = false;

  cert_ = Certificate{};
  cert_.presentation_hash = presentation_hash(config_.seed);
  cert_.asserted_deficiency = config_.asserted_deficiency;
  cert_.primes = config_.pi.primes();
  cert_.epsilon = canon(config_.epsilon);
  cert_.r = config_.r();
  cert_.budgets = config_.budgets;
  cert_.lower_bound = cert_.r;
  cert_.scope = std::string(conclusion_scope());
  try {
    cert_.records.push_back(make_record(StepCase::initial, "seed"));
  } catch (const BudgetExhausted& e) {
    finish(false, std::string("budget-exhausted: ") + e.what());
  }
}

void Engine::finish(bool complete, std::string reason) {
  cert_.budget.elements_processed = state_.elements_processed;
  cert_.budget.complete = complete;
  cert_.budget.stop_reason = std::move(reason);
  done_ = true;
}

StageRecord Engine::make_record(StepCase c, std::string reason) {
  const std::size_t bits = config_.budgets.max_bits;
  const Rational r = config_.r();
  const DeltaNode& d = state_.d;
  StageRecord rec;
  rec.k = state_.k;
  rec.step = c;
  rec.reason = std::move(reason);
  rec.n = state_.n;
  rec.presentation_hash = presentation_hash(state_.group);
  rec.relator_count = state_.group.relator_count();
  rec.index = d.index;
  rec.index_decimal = d.index_value(bits);
  rec.ledger.excess_ratio = canon(d.excess_ratio);
  rec.ledger.lower_bound = d.lower_bound(bits);
  rec.ledger.derivation = node_derivation(d);
  if (d.stage) {
    rec.ledger.witness_deficiency = d.stage->ledger.witness_deficiency;
    rec.ledger.witness_hash = d.stage->ledger.witness_hash;
  }
  // condition (b), in ratio form
  if (!(d.excess_ratio > r)) {
    throw InvariantViolation("condition (b) fails at step " + std::to_string(state_.k));
  }
  const RankModP rk = node_rank_mod_p(d, prime_at(state_.n + 1), bits);
  Ineq9Record& q = rec.ineq9;
  q.dA = rk.value;
  q.dA_excess_ratio = canon(rk.excess_ratio);
  q.dA_source = rk.source;
  if (rk.value) q.lhs = *rk.value - 1;
  if (rec.index_decimal) q.rhs = canon(r * Rational(*rec.index_decimal));
  q.lhs_normalized = q.dA_excess_ratio;
  q.rhs_normalized = r;
  q.holds = q.lhs_normalized > q.rhs_normalized;
  if (q.lhs && q.rhs && (Rational(*q.lhs) > *q.rhs) != q.holds) {
    throw InvariantViolation("the deficiency inequality disagrees with its normalized form");
  }
  if (!q.holds) throw InvariantViolation("the deficiency inequality fails at step " + std::to_string(state_.k));
  return rec;
}

const std::vector<DeltaNode>& Engine::levels() {
  if (levels_) return *levels_;
  levels_.emplace();
  const std::size_t top = std::min(config_.budgets.max_delta_depth, config_.pi.size());
  const DeltaNode* parent = &state_.d;
  for (std::size_t j = state_.n + 1; j <= top; ++j) {
    try {
      levels_->push_back(next_node(*parent, prime_at(j), config_.budgets.chain_limits(),
                                   config_.budgets.max_bits, cancel_));
    } catch (const BudgetExhausted&) {
      cancel_.check();
      break;
    }
    parent = &levels_->back();
  }
  return *levels_;
}

Classification Engine::classify_order(const Word& w) {
  Classification c;
  if (w.empty()) {
    c.kind = Classification::Kind::finite;
    c.reason = "identity";
    c.m = 1;
    return c;
  }
  const std::size_t top = std::min(config_.budgets.max_delta_depth, config_.pi.size());
  const auto& lv = levels();
  std::vector<std::uint64_t> known;
  for (std::size_t j = state_.n + 1; j <= top; ++j) {
    OrderObservation o{j, std::nullopt};
    const std::size_t i = j - state_.n - 1;
    if (i < lv.size() && lv[i].stage) {
      o.order = order_in_quotient(lv[i].stage->cumulative_table, w);
      known.push_back(*o.order);
    }
    c.observed.push_back(o);
  }
  for (const auto& rel : state_.group.relators()) {
    auto [root, e] = primitive_root(rel);
    if (auto t = cyclic_power_of(w, root); t && *t != 0) {
      const auto a = static_cast<std::uint64_t>(*t < 0 ? -*t : *t);
      c.kind = Classification::Kind::finite;
      c.reason = "proven-finite";
      c.m = e / std::gcd(static_cast<std::uint64_t>(e), a);
      return c;
    }
  }
  const std::size_t s = config_.budgets.stabilization_window;
  if (known.size() >= s &&
      std::all_of(known.end() - static_cast<long>(s), known.end(),
                  [&](std::uint64_t v) { return v == known.back(); })) {
    c.kind = Classification::Kind::finite;
    c.reason = "heuristic-stable";
    c.m = known.back();
    c.level = state_.n + known.size();
    return c;
  }
  c.reason = "unresolved";
  return c;
}

std::optional<KillingLevel> Engine::find_killing_level(const Word& w) {
  const Rational r = config_.r();
  const auto& lv = levels();
  for (const auto& node : lv) {
    if (!node.stage) break;
    const std::uint64_t m = order_in_quotient(node.stage->cumulative_table, w);
    if (state_.d.excess_ratio > r + Rational(1, m)) return KillingLevel{node.level, m};
  }
  return std::nullopt;
}

void Engine::apply_case1(const Word& w, const std::string& reason) {
  const std::size_t n1 = state_.n + 1;
  const auto& lv = levels();
  DeltaNode node = !lv.empty() ? lv.front()
                                : next_node(state_.d, prime_at(n1), config_.budgets.chain_limits(),
                                            config_.budgets.max_bits, cancel_);
  EngineState next = state_;
  next.k += 1;
  next.n = n1;
  next.d = std::move(node);
  std::swap(state_, next);
  try {
    StageRecord rec = make_record(StepCase::extend, reason);
    rec.element_index = next.elements_processed;
    rec.word = format_word(w, config_.seed);
    cert_.records.push_back(std::move(rec));
  } catch (...) {
    std::swap(state_, next);
    throw;
  }
  levels_.reset();
}

void Engine::apply_case2(const Word& w, const KillingLevel& kl) {
  const auto& lv = levels();
  const std::size_t i = kl.n - state_.n - 1;
  if (i >= lv.size() || !lv[i].stage) throw ContractError("apply_case2: level is not built");
  const PiChainStage& stage = *lv[i].stage;
  const Rational r = config_.r();
  const Rational rho = state_.d.excess_ratio;
  const Word gm = w.power(static_cast<long long>(kl.m));
  const bool cond_c = word_action(stage.cumulative_table, 0, gm) == 0;
  if (!cond_c) throw InvariantViolation("killed power does not lie in the chosen level");

  Presentation group = state_.group.with_relator(gm);
  DeltaNode node;
  std::optional<bool> identity;
  if (group == state_.group) {
    node = lv[i];
  } else {
    const std::vector<Word> extra =
        pushdown_normal_closure(EdgeRewriter(stage.cumulative_table, stage.edge_words), w, kl.m);
    if (extra.size() * kl.m != stage.cumulative_index) {
      throw InvariantViolation("pushdown produced the wrong number of relators");
    }
    SimplifyResult simp = tietze_simplify_tracked(stage.presentation.with_relators(extra),
                                                  config_.budgets.simplify_budget, cancel_);
    const Rational rho2 = canon(rho - Rational(1, kl.m));
    DeficiencyLedgerEntry ledger;
    ledger.lower_bound =
        Rational(rho2 * Rational(BigInt(static_cast<unsigned long>(stage.cumulative_index)))).get_num() + 1;
    ledger.derivation = Derivation::power_kill_transfer;
    ledger.witness_hash = presentation_hash(simp.presentation);
    ledger.witness_deficiency = presentation_deficiency(simp.presentation);
    if (BigInt(static_cast<long>(ledger.witness_deficiency)) < ledger.lower_bound) {
      throw InvariantViolation("killed witness does not reach its ledger bound");
    }
    PiChainStage ns = with_presentation(stage, simp.presentation, simp.generator_images, ledger);
    ns.cumulative_table = CosetTable(ns.cumulative_table.generator_count(),
                                     ns.cumulative_table.entries(), {}, presentation_hash(group));
    if (!check_table(ns.cumulative_table, group).empty()) {
      throw InvariantViolation("level table is not a table of the new group");
    }
    const PiChain scratch =
        pi_chain(group, config_.pi, kl.n, config_.budgets.chain_limits(), cancel_);
    if (scratch.failed_level) throw BudgetExhausted(scratch.failure);
    identity = scratch.level(kl.n).cumulative_table.entries() == ns.cumulative_table.entries();
    if (!*identity) throw InvariantViolation("index identity fails after killing");
    node = node_from_stage(std::move(ns));
  }
  if (!(node.excess_ratio > r)) throw InvariantViolation("condition (b) fails after killing");

  EngineState next = state_;
  next.k += 1;
  next.group = std::move(group);
  next.n = kl.n;
  next.d = std::move(node);
  std::swap(state_, next);
  try {
    StageRecord rec = make_record(StepCase::kill, "order-grows");
    rec.element_index = next.elements_processed;
    rec.word = format_word(w, config_.seed);
    rec.m = kl.m;
    rec.ineq8 = Ineq8Record{canon(rho), canon(r + Rational(1, kl.m)), true};
    rec.cond_c = cond_c;
    rec.index_identity = identity;
    cert_.records.push_back(std::move(rec));
    cert_.killed.push_back({state_.k, *cert_.records.back().word, kl.m, kl.n});
  } catch (...) {
    std::swap(state_, next);
    throw;
  }
  levels_.reset();
}

bool Engine::step() {
  if (done_) return false;
  if (state_.elements_processed >= config_.budgets.max_elements) {
    finish(true, "max_elements");
    return false;
  }
  const std::size_t records_before = cert_.records.size();
  const std::size_t assumptions_before = cert_.assumptions.size();
  try {
    cancel_.check();
    const ShortLexCursor saved = state_.cursor;
    auto w = state_.cursor.next();
    if (!w) {
      finish(true, "enumeration exhausted");
      return false;
    }
    try {
      Classification c = classify_order(*w);
      auto log = [&](std::string reason) {
        cert_.assumptions.push_back({state_.k + 1, state_.elements_processed,
                                     format_word(*w, config_.seed), std::move(reason)});
      };
      if (c.kind == Classification::Kind::finite) {
        if (c.reason == "heuristic-stable") {
          log("order " + std::to_string(*c.m) + " stable over the last " +
              std::to_string(config_.budgets.stabilization_window) + " levels; treated as finite");
        }
        apply_case1(*w, c.reason);
      } else if (auto kl = find_killing_level(*w)) {
        apply_case2(*w, *kl);
      } else {
        log("no killing level within the depth and index budgets; treated as finite");
        apply_case1(*w, "fallback");
      }
      cert_.records.back().observed_orders = std::move(c.observed);
    } catch (...) {
      state_.cursor = saved;
      throw;
    }
    ++state_.elements_processed;
    return true;
  } catch (const Error& e) {
    cert_.records.resize(records_before);
    cert_.assumptions.resize(assumptions_before);
    if (cancel_.cancelled()) {
      finish(false, "cancelled");
    } else if (dynamic_cast<const BudgetExhausted*>(&e)) {
      finish(false, std::string("budget-exhausted: ") + e.what());
    } else {
      finish(false, std::string("invariant-violation: ") + e.what());
    }
    return false;
  }
}

void Engine::run() {
  while (step()) {
  }
}

void Engine::resume(const Certificate& checkpoint) {
  begin();
  EngineBudgets mine = config_.budgets;
  EngineBudgets theirs = checkpoint.budgets;
  mine.max_elements = theirs.max_elements = 0;
  if (checkpoint.presentation_hash != cert_.presentation_hash ||
      checkpoint.asserted_deficiency != cert_.asserted_deficiency ||
      checkpoint.primes != cert_.primes || checkpoint.epsilon != cert_.epsilon ||
      !(mine == theirs)) {
    throw InputError("checkpoint was produced under a different configuration");
  }
  if (checkpoint.records.empty() || cert_.records.empty() ||
      !(checkpoint.records[0] == cert_.records[0])) {
    throw InputError("checkpoint diverges at record 0");
  }
  for (std::size_t i = 1; i < checkpoint.records.size(); ++i) {
    if (!step() || !(cert_.records[i] == checkpoint.records[i])) {
      throw InputError("checkpoint diverges at record " + std::to_string(i));
    }
  }
}

Certificate run_engine(const EngineConfig& config, const CancelToken& cancel) {
  Engine e(config, cancel);
  e.run();
  return e.certificate();
}

EngineConfig config_from_certificate(const Certificate& cert, const Presentation& seed) {
  if (presentation_hash(seed) != cert.presentation_hash) {
    throw InputError("presentation does not match the certificate's hash");
  }
  EngineConfig c;
  c.seed = seed;
  c.asserted_deficiency = cert.asserted_deficiency;
  c.pi = PiSequence(cert.primes);
  c.epsilon = cert.epsilon;
  c.budgets = cert.budgets;
  return c;
}

}  // namespace rgrad
