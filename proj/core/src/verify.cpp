#include <map>
#include <numeric>

#include "certificate_internal.hpp"
#include "rgrad/engine.hpp"
#include "rgrad/errors.hpp"
#include "rgrad/linalg.hpp"
#include "rgrad/rewriting.hpp"
#include "rgrad/tietze.hpp"

namespace rgrad {

namespace {

struct Failure {
  std::optional<std::size_t> record;
  std::string message;
};

[[noreturn]] void fail_at(std::optional<std::size_t> record, const std::string& message) {
  throw Failure{record, message};
}

Rational canon(Rational q) {
  q.canonicalize();
  return q;
}

// Plain odometer over all letter strings of each length, keeping the freely
// reduced ones. Slower than the engine's cursor and written separately.
class WordStream {
 public:
  explicit WordStream(std::size_t d) : width_(static_cast<std::uint32_t>(2 * d)) {}

  Word next() {
    if (!started_) {
      started_ = true;
      return Word{};
    }
    do {
      bump();
    } while (!reduced());
    std::vector<Letter> ls;
    for (auto c : digits_) ls.push_back(Letter::from_code(c));
    return Word::reduce(ls);
  }

 private:
  void bump() {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < width_) return;
      digits_[i] = 0;
    }
    digits_.insert(digits_.begin(), 0);
  }
  bool reduced() const {
    for (std::size_t i = 1; i < digits_.size(); ++i) {
      if ((digits_[i] ^ 1u) == digits_[i - 1]) return false;
    }
    return true;
  }

  std::uint32_t width_;
  bool started_ = false;
  std::vector<std::uint32_t> digits_;
};

class Replay {
 public:
  explicit Replay(const EngineConfig& cfg) : cfg_(cfg), r_(cfg.r()), words_(cfg.seed.generator_count()) {
    group_ = cfg.seed;
    DeficiencyLedgerEntry ledger = asserted_ledger(cfg.seed);
    ledger.lower_bound = cfg.asserted_deficiency;
    witness_ = node_from_stage(base_stage(cfg.seed, ledger));
    rho_ = Rational(cfg.asserted_deficiency - 1);
    derivation_ = Derivation::asserted_input;
  }

  StageRecord initial() { return record(StepCase::initial, "seed"); }

  struct Step {
    StageRecord record;
    std::optional<AssumptionRecord> assumption;
    std::optional<KilledRecord> killed;
  };

  Step step(std::size_t element_index) {
    const Word w = words_.next();
    const std::string text = format_word(w, cfg_.seed);
    Step out;
    const auto& nodes = witness_levels();
    const PiChain& own = scratch(group_);
    std::vector<OrderObservation> observed;
    std::vector<std::pair<std::size_t, std::uint64_t>> known;
    if (!w.empty()) {
      for (std::size_t j = n_ + 1; j <= top(); ++j) {
        OrderObservation o{j, std::nullopt};
        const bool built = j <= own.depth();
        const std::size_t i = j - n_ - 1;
        const bool witness_built = i < nodes.size() && nodes[i].stage.has_value();
        if (built != witness_built) {
          fail_at(k_ + 1, "level " + std::to_string(j) +
                              " is built on one chain of the group but not the other");
        }
        if (built) {
          if (own.level(j).cumulative_table.entries() !=
              nodes[i].stage->cumulative_table.entries()) {
            fail_at(k_ + 1, "witness chain disagrees with the group's own chain at level " +
                                std::to_string(j));
          }
          o.order = order_in_quotient(own.level(j).cumulative_table, w);
          known.emplace_back(j, *o.order);
        }
        observed.push_back(o);
      }
    }

    std::string reason;
    bool finite = false;
    if (w.empty()) {
      finite = true;
      reason = "identity";
    } else {
      for (const auto& rel : group_.relators()) {
        auto [root, e] = primitive_root(rel);
        auto t = cyclic_power_of(w, root);
        if (t && *t != 0) {
          finite = true;
          reason = "proven-finite";
          break;
        }
      }
      const std::size_t s = cfg_.budgets.stabilization_window;
      if (!finite && known.size() >= s) {
        bool stable = true;
        for (std::size_t i = known.size() - s; i < known.size(); ++i) {
          stable = stable && known[i].second == known.back().second;
        }
        if (stable) {
          finite = true;
          reason = "heuristic-stable";
          out.assumption = AssumptionRecord{
              k_ + 1, element_index, text,
              "order " + std::to_string(known.back().second) + " stable over the last " +
                  std::to_string(s) + " levels; treated as finite"};
        }
      }
    }

    std::optional<std::pair<std::size_t, std::uint64_t>> kill;
    if (!finite) {
      for (const auto& [j, m] : known) {
        if (rho_ > r_ + Rational(1, m)) {
          kill.emplace(j, m);
          break;
        }
      }
      if (!kill) {
        reason = "fallback";
        out.assumption = AssumptionRecord{
            k_ + 1, element_index, text,
            "no killing level within the depth and index budgets; treated as finite"};
      }
    }

    if (!kill) {
      DeltaNode next = !nodes.empty() ? nodes.front()
                                      : next_node(witness_, cfg_.pi.at(n_ + 1),
                                                  cfg_.budgets.chain_limits(), cfg_.budgets.max_bits);
      witness_ = std::move(next);
      if (!witness_.stage) derivation_ = Derivation::finite_index_transfer;
      else derivation_ = witness_.stage->ledger.derivation;
      ++n_;
      ++k_;
      levels_.reset();
      out.record = record(StepCase::extend, reason);
    } else {
      const auto [j, m] = *kill;
      const PiChainStage& lvl = own.level(j);
      const Word gm = w.power(static_cast<long long>(m));
      const bool cond_c = word_action(lvl.cumulative_table, 0, gm) == 0;
      if (!cond_c) fail_at(k_ + 1, "killed power is not in the killing level");
      const Rational lhs = rho_;
      const Rational rhs = canon(r_ + Rational(1, m));
      Presentation g2 = group_.with_relator(gm);
      std::optional<bool> identity;
      DeltaNode next = nodes[j - n_ - 1];
      if (!(g2 == group_)) {
        const PiChainStage& ws = *next.stage;
        auto extra = pushdown_normal_closure(EdgeRewriter(ws.cumulative_table, ws.edge_words), w, m);
        if (extra.size() != ws.cumulative_index / m) fail_at(k_ + 1, "pushdown count is not [G:N]/m");
        SimplifyResult simp = tietze_simplify_tracked(ws.presentation.with_relators(extra),
                                                      cfg_.budgets.simplify_budget);
        rho_ = canon(rho_ - Rational(1, m));
        DeficiencyLedgerEntry ledger;
        ledger.lower_bound =
            Rational(rho_ * Rational(BigInt(static_cast<unsigned long>(ws.cumulative_index)))).get_num() + 1;
        ledger.derivation = Derivation::power_kill_transfer;
        ledger.witness_hash = presentation_hash(simp.presentation);
        ledger.witness_deficiency = presentation_deficiency(simp.presentation);
        if (BigInt(static_cast<long>(ledger.witness_deficiency)) < ledger.lower_bound) {
          fail_at(k_ + 1, "witness presentation falls short of the ledger bound");
        }
        PiChainStage ns = with_presentation(ws, simp.presentation, simp.generator_images, ledger);
        ns.cumulative_table = CosetTable(ns.cumulative_table.generator_count(),
                                         ns.cumulative_table.entries(), {}, presentation_hash(g2));
        const PiChain& fresh = scratch(g2);
        if (fresh.depth() < j) fail_at(k_ + 1, "new group's chain does not reach the killing level");
        identity = fresh.level(j).cumulative_table.entries() == lvl.cumulative_table.entries();
        next = node_from_stage(std::move(ns));
        derivation_ = Derivation::power_kill_transfer;
      } else {
        derivation_ = next.stage->ledger.derivation;
      }
      witness_ = std::move(next);
      group_ = std::move(g2);
      n_ = j;
      ++k_;
      levels_.reset();
      out.record = record(StepCase::kill, "order-grows");
      out.record.m = m;
      out.record.ineq8 = Ineq8Record{canon(lhs), rhs, lhs > rhs};
      out.record.cond_c = cond_c;
      out.record.index_identity = identity;
      out.killed = KilledRecord{k_, text, m, j};
    }
    out.record.element_index = element_index;
    out.record.word = text;
    out.record.observed_orders = std::move(observed);
    return out;
  }

 private:
  std::size_t top() const { return std::min(cfg_.budgets.max_delta_depth, cfg_.pi.size()); }

  // The group's chain computed from its own presentation.
  const PiChain& scratch(const Presentation& g) {
    const std::string h = presentation_hash(g);
    auto it = chains_.find(h);
    const std::size_t depth = std::min(cfg_.pi.size(), std::max(top(), n_ + 1));
    if (it == chains_.end() || (it->second.depth() < depth && !it->second.failed_level)) {
      chains_[h] = pi_chain(g, cfg_.pi, depth, cfg_.budgets.chain_limits());
    }
    return chains_[h];
  }

  const std::vector<DeltaNode>& witness_levels() {
    if (levels_) return *levels_;
    levels_.emplace();
    const DeltaNode* parent = &witness_;
    for (std::size_t j = n_ + 1; j <= top(); ++j) {
      try {
        levels_->push_back(next_node(*parent, cfg_.pi.at(j), cfg_.budgets.chain_limits(),
                                     cfg_.budgets.max_bits));
      } catch (const BudgetExhausted&) {
        break;
      }
      parent = &levels_->back();
    }
    return *levels_;
  }

  StageRecord record(StepCase c, std::string reason) {
    const std::size_t bits = cfg_.budgets.max_bits;
    StageRecord rec;
    rec.k = k_;
    rec.step = c;
    rec.reason = std::move(reason);
    rec.n = n_;
    rec.presentation_hash = presentation_hash(group_);
    rec.relator_count = group_.relator_count();
    rec.index = witness_.index;
    rec.index_decimal = witness_.index.value(bits);

    const PiChain& own = scratch(group_);
    if (n_ <= own.depth()) {
      const PiChainStage& s = own.level(n_);
      if (!rec.index_decimal ||
          *rec.index_decimal != BigInt(static_cast<unsigned long>(s.cumulative_index))) {
        fail_at(k_, "index of D_k differs from the group's own chain");
      }
    }
    if (!(canon(witness_.excess_ratio) == canon(rho_))) {
      fail_at(k_, "witness ratio " + format_rational(witness_.excess_ratio) +
                      " differs from the replayed ledger " + format_rational(rho_));
    }
    rec.ledger.excess_ratio = canon(rho_);
    if (auto idx = rec.index_decimal) {
      Rational l = rho_ * Rational(*idx) + 1;
      l.canonicalize();
      if (l.get_den() != 1) fail_at(k_, "ledger bound is not an integer");
      rec.ledger.lower_bound = l.get_num();
    }
    rec.ledger.derivation = derivation_;
    if (witness_.stage) {
      rec.ledger.witness_deficiency = presentation_deficiency(witness_.stage->presentation);
      rec.ledger.witness_hash = presentation_hash(witness_.stage->presentation);
    }
    if (!(rho_ > r_)) fail_at(k_, "condition (b) fails");

    const std::uint64_t p = cfg_.pi.at(n_ + 1);
    auto& q = rec.ineq9;
    if (witness_.stage) {
      const std::size_t v = rank_mod_p(witness_.stage->presentation, p);
      if (n_ <= own.depth() && rank_mod_p(own.level(n_).presentation, p) != v) {
        fail_at(k_, "rank mod p of D_k depends on the presentation");
      }
      q.dA = BigInt(static_cast<unsigned long>(v));
      q.dA_excess_ratio = canon(Rational(*q.dA - 1) / Rational(*rec.index_decimal));
      q.dA_source = "presentation";
    } else if (witness_.free_ratio) {
      q.dA = witness_.free_rank(bits);
      q.dA_excess_ratio = canon(*witness_.free_ratio);
      q.dA_source = "free_rank";
    } else {
      q.dA = rec.ledger.lower_bound;
      q.dA_excess_ratio = canon(rho_);
      q.dA_source = "ledger_bound";
    }
    if (q.dA) q.lhs = *q.dA - 1;
    if (rec.index_decimal) q.rhs = canon(r_ * Rational(*rec.index_decimal));
    q.lhs_normalized = q.dA_excess_ratio;
    q.rhs_normalized = r_;
    q.holds = q.lhs_normalized > q.rhs_normalized;
    if (q.lhs && q.rhs && (Rational(*q.lhs) > *q.rhs) != q.holds) {
      fail_at(k_, "the deficiency inequality disagrees with its normalized form");
    }
    return rec;
  }

  const EngineConfig& cfg_;
  Rational r_;
  WordStream words_;
  Presentation group_;
  DeltaNode witness_;
  Rational rho_;
  Derivation derivation_;
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::optional<std::vector<DeltaNode>> levels_;
  std::map<std::string, PiChain> chains_;
};

void check_record(std::size_t i, const StageRecord& expected, const StageRecord& actual) {
  if (actual.k != i) fail_at(i, "record out of order: k = " + std::to_string(actual.k));
  if (actual.presentation_hash != expected.presentation_hash) {
    fail_at(i, "presentation hash chain broken");
  }
  if (const auto d = record_difference(expected, actual); !d.empty()) {
    fail_at(i, "field '" + d + "' does not match the replay");
  }
  if (!actual.ineq9.holds || (actual.ineq8 && !actual.ineq8->holds)) {
    fail_at(i, "recorded inequality does not hold");
  }
}

}  // namespace

VerifyReport verify_certificate(std::string_view certificate_json, const EngineConfig& config) {
  VerifyReport report;
  try {
    try {
      config.validate();
    } catch (const InputError& e) {
      fail_at(std::nullopt, std::string("invalid configuration: ") + e.what());
    }
    Certificate cert;
    try {
      cert = certificate_from_json(certificate_json);
    } catch (const InputError& e) {
      fail_at(std::nullopt, e.what());
    }
    if (cert.presentation_hash != presentation_hash(config.seed)) {
      fail_at(std::nullopt, "presentation hash does not match the seed");
    }
    if (cert.asserted_deficiency != config.asserted_deficiency ||
        cert.primes != config.pi.primes() || !(cert.epsilon == canon(config.epsilon)) ||
        !(cert.r == config.r()) || !(cert.budgets == config.budgets)) {
      fail_at(std::nullopt, "configuration echo does not match");
    }
    if (!(cert.lower_bound == config.r()) || cert.scope != conclusion_scope()) {
      fail_at(std::nullopt, "conclusion does not match");
    }
    if (cert.records.empty()) fail_at(std::nullopt, "no records");

    Replay replay(config);
    std::vector<AssumptionRecord> assumptions;
    std::vector<KilledRecord> killed;
    check_record(0, replay.initial(), cert.records[0]);
    for (std::size_t i = 1; i < cert.records.size(); ++i) {
      Replay::Step s = replay.step(i - 1);
      check_record(i, s.record, cert.records[i]);
      if (s.assumption) assumptions.push_back(*s.assumption);
      if (s.killed) killed.push_back(*s.killed);
    }
    if (cert.assumptions != assumptions) fail_at(std::nullopt, "assumptions log does not match");
    if (cert.killed != killed) fail_at(std::nullopt, "killed list does not match");

    const std::size_t processed = cert.records.size() - 1;
    const BudgetReport& b = cert.budget;
    if (b.elements_processed != processed) {
      fail_at(std::nullopt, "budget report counts a different number of elements");
    }
    if (b.complete) {
      if (b.stop_reason != "max_elements" || processed != config.budgets.max_elements) {
        fail_at(std::nullopt, "complete run must stop at max_elements");
      }
    } else {
      if (processed >= config.budgets.max_elements) {
        fail_at(std::nullopt, "incomplete run already reached max_elements");
      }
      const bool known = b.stop_reason == "cancelled" ||
                         b.stop_reason.rfind("budget-exhausted: ", 0) == 0 ||
                         b.stop_reason.rfind("invariant-violation: ", 0) == 0;
      if (!known) fail_at(std::nullopt, "unknown stop reason");
      if (b.stop_reason != "cancelled") {
        bool stopped = false;
        try {
          replay.step(processed);
        } catch (const Error&) {
          stopped = true;
        }
        if (!stopped) fail_at(std::nullopt, "the run stopped although the next step succeeds");
      }
    }
    report.pass = true;
    report.message = b.complete ? "ok" : "ok (partial certificate: " + b.stop_reason + ")";
  } catch (const Failure& f) {
    report.pass = false;
    report.first_bad_record = f.record;
    report.message = f.record ? "record " + std::to_string(*f.record) + ": " + f.message
                              : f.message;
  } catch (const Error& e) {
    report.pass = false;
    report.message = std::string("replay failed: ") + e.what();
  }
  return report;
}

}  // namespace rgrad
