#include "rgrad/pi_series.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rgrad/digest.hpp"
#include "rgrad/errors.hpp"
#include "rgrad/linalg.hpp"
#include "rgrad/rewriting.hpp"

namespace rgrad {

std::string_view to_string(PiMode m) {
  switch (m) {
    case PiMode::all_distinct: return "all-distinct";
    case PiMode::constant_p: return "constant-p";
    case PiMode::mixed: return "mixed";
  }
  return "mixed";
}

PiSequence::PiSequence(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
  for (auto p : primes_) {
    if (!is_prime(p)) throw InputError("prime sequence: " + std::to_string(p) + " is not prime");
  }
  std::set<std::uint64_t> distinct(primes_.begin(), primes_.end());
  if (!primes_.empty() && distinct.size() == 1) {
    mode_ = PiMode::constant_p;
  } else if (distinct.size() == primes_.size()) {
    mode_ = PiMode::all_distinct;
  } else {
    mode_ = PiMode::mixed;
  }
}

PiSequence PiSequence::parse(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw InputError("prime sequence: unbalanced parenthesis");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::uint64_t> primes;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("prime sequence: empty entry");
    item = item.substr(b, e - b + 1);
    if (!std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        item.size() > 18) {
      throw InputError("prime sequence: bad entry '" + item + "'");
    }
    primes.push_back(std::stoull(item));
  }
  return PiSequence(std::move(primes));
}

std::uint64_t PiSequence::at(std::size_t i) const {
  if (i == 0 || i > primes_.size()) {
    throw BudgetExhausted("prime sequence has no entry p_" + std::to_string(i));
  }
  return primes_[i - 1];
}

std::string PiSequence::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    out += (i ? "," : "") + std::to_string(primes_[i]);
  }
  return out + ")";
}

PiChainStage base_stage(const Presentation& g, const DeficiencyLedgerEntry& ledger) {
  PiChainStage s;
  const std::size_t d = g.generator_count();
  s.presentation = g;
  s.relative_table = CosetTable::trivial(d, presentation_hash(g));
  s.cumulative_table = s.relative_table;
  for (std::uint32_t x = 0; x < d; ++x) s.edge_words.push_back(Word::generator_power(x, 1));
  s.ledger = ledger;
  return s;
}

PiChainStage base_stage(const Presentation& g) { return base_stage(g, asserted_ledger(g)); }

PiChainStage delta_step(const PiChainStage& parent, std::uint64_t p, const ChainLimits& limits,
                        const CancelToken& cancel) {
  cancel.check();
  const Presentation& q = parent.presentation;
  const std::size_t dq = q.generator_count();
  const EchelonModP ech = echelon_mod_p(relation_matrix(q), p);
  const std::size_t k = dq - ech.rank();

  const std::uint64_t room = limits.max_index / parent.cumulative_index;
  std::uint64_t rel = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (rel > room / p) {
      throw BudgetExhausted("level " + std::to_string(parent.level + 1) + ": index " +
                            std::to_string(parent.cumulative_index) + "*" + std::to_string(p) +
                            "^" + std::to_string(k) + " exceeds max_index " +
                            std::to_string(limits.max_index));
    }
    rel *= p;
  }

  // Regular action of F_p^k, vectors encoded base p.
  CosetTable relative;
  if (k == 0) {
    relative = CosetTable::trivial(dq, presentation_hash(q));
  } else {
    std::vector<std::vector<Coset>> perms(dq, std::vector<Coset>(rel));
    std::vector<std::uint64_t> digits(k);
    for (std::uint32_t g = 0; g < dq; ++g) {
      const auto shift = ech.quotient_image(g);
      for (std::uint64_t v = 0; v < rel; ++v) {
        std::uint64_t x = v, out = 0, place = 1;
        for (std::size_t i = 0; i < k; ++i) {
          out += ((x % p + shift[i]) % p) * place;
          x /= p;
          place *= p;
        }
        perms[g][v] = static_cast<Coset>(out);
      }
    }
    relative = CosetTable::from_permutations(perms, presentation_hash(q)).standardized().first;
  }

  SubgroupPresentation sub =
      rewrite_subgroup_presentation(q, relative, parent.ledger, limits.simplify_budget, cancel);
  if (dq > 0 && sub.raw_generator_count != (dq - 1) * rel + 1) {
    throw InvariantViolation("Schreier generator count is not (d-1)j+1");
  }
  if (sub.raw_relator_count != q.relator_count() * rel) {
    throw InvariantViolation("rewritten relator count is not r*j");
  }
  const EdgeRewriter rw =
      EdgeRewriter::schreier(relative, schreier_transversal(relative)).mapped(sub.generator_images);

  // Cumulative action on pairs (parent coset c, relative coset v), encoded c*rel + v.
  const CosetTable& up = parent.cumulative_table;
  const std::size_t d = up.generator_count();
  const std::uint64_t J = parent.cumulative_index;
  const std::uint64_t n = J * rel;
  std::vector<std::vector<Coset>> perms(d, std::vector<Coset>(n));
  std::vector<Word> edges(n * d);
  for (Coset c = 0; c < J; ++c) {
    cancel.check();
    for (std::uint32_t x = 0; x < d; ++x) {
      const Coset c2 = up.act(c, Letter(x, false));
      const Word& w = parent.edge(c, x);
      for (Coset v = 0; v < rel; ++v) {
        Coset v2 = 0;
        const std::uint64_t id = c * rel + v;
        edges[id * d + x] = rw.rewrite(v, w, &v2);
        perms[x][id] = static_cast<Coset>(c2 * rel + v2);
      }
    }
  }
  auto [cumulative, old_to_new] = CosetTable::from_permutations(perms, up.ambient_hash()).standardized();
  if (d == 0) cumulative = up;

  PiChainStage s;
  s.level = parent.level + 1;
  s.prime = p;
  s.presentation = std::move(sub.presentation);
  s.relative_table = std::move(relative);
  s.cumulative_table = std::move(cumulative);
  s.edge_words.resize(n * d);
  for (std::uint64_t id = 0; id < n && d > 0; ++id) {
    for (std::uint32_t x = 0; x < d; ++x) {
      s.edge_words[old_to_new[id] * d + x] = std::move(edges[id * d + x]);
    }
  }
  s.relative_index = rel;
  s.cumulative_index = n;
  s.rank_exponent = k;
  s.raw_generator_count = sub.raw_generator_count;
  s.raw_relator_count = sub.raw_relator_count;
  s.ledger = std::move(sub.ledger);
  return s;
}

PiChainStage delta_step(const Presentation& g, std::uint64_t p, const ChainLimits& limits,
                        const CancelToken& cancel) {
  return delta_step(base_stage(g), p, limits, cancel);
}

PiChainStage with_presentation(PiChainStage stage, Presentation replacement,
                               const std::vector<Word>& images,
                               const DeficiencyLedgerEntry& ledger) {
  for (auto& w : stage.edge_words) w = substitute(w, images);
  stage.presentation = std::move(replacement);
  stage.ledger = ledger;
  return stage;
}

const PiChainStage& PiChain::level(std::size_t i) const {
  if (i == 0) return base;
  if (i > stages.size()) throw ContractError("chain has no level " + std::to_string(i));
  return stages[i - 1];
}

PiChain pi_chain(const Presentation& g, const PiSequence& pi, std::size_t depth,
                 const ChainLimits& limits, const CancelToken& cancel) {
  if (depth > pi.size()) {
    throw ContractError("pi_chain: depth " + std::to_string(depth) + " exceeds the prime prefix");
  }
  PiChain chain;
  chain.base = base_stage(g);
  for (std::size_t i = 1; i <= depth; ++i) {
    try {
      chain.stages.push_back(delta_step(chain.level(i - 1), pi.at(i), limits, cancel));
    } catch (const BudgetExhausted& e) {
      chain.failed_level = i;
      chain.failure = e.what();
      break;
    }
  }
  return chain;
}

std::uint64_t order_mod_delta(const PiChain& chain, const Word& w, std::size_t level) {
  if (level == 0) return 1;
  return order_in_quotient(chain.level(level).cumulative_table, w);
}

bool GradedPrefixReport::pass() const {
  return std::all_of(stages.begin(), stages.end(), [](const StageCheck& s) { return s.pass; });
}

std::optional<std::size_t> GradedPrefixReport::first_failure() const {
  for (const auto& s : stages) {
    if (!s.pass) return s.level;
  }
  return std::nullopt;
}

namespace {

bool fixes_origin(const CosetTable& t, const Word& w) { return word_action(t, 0, w) == 0; }

}  // namespace

GradedPrefixReport verify_graded_prefix(const PiChain& chain) {
  GradedPrefixReport report;
  const Presentation& g = chain.base.presentation;
  for (std::size_t i = 1; i <= chain.depth(); ++i) {
    const PiChainStage& prev = chain.level(i - 1);
    const PiChainStage& s = chain.level(i);
    StageCheck check;
    check.level = i;
    auto fail = [&](std::string msg) {
      check.pass = false;
      check.failures.push_back(std::move(msg));
    };
    const CosetTable& t = s.cumulative_table;
    const CosetTable& tp = prev.cumulative_table;
    for (const auto& f : check_table(t, g)) fail(f);

    const std::size_t k = rank_mod_p(prev.presentation, s.prime);
    BigInt expected = BigInt(static_cast<unsigned long>(tp.index()));
    for (std::size_t e = 0; e < k; ++e) expected *= static_cast<unsigned long>(s.prime);
    if (BigInt(static_cast<unsigned long>(t.index())) != expected) {
      fail("index " + std::to_string(t.index()) + " is not " + std::to_string(tp.index()) + "*" +
           std::to_string(s.prime) + "^" + std::to_string(k));
    }

    const auto prev_gens = schreier_generator_words(tp, schreier_transversal(tp));
    for (std::size_t a = 0; a < prev_gens.size() && check.pass; ++a) {
      Coset c = 0;
      for (std::uint64_t e = 0; e < s.prime; ++e) c = word_action(t, c, prev_gens[a]);
      if (c != 0) fail("p-th power of a generator of the previous level is not in the subgroup");
      for (std::size_t b = a + 1; b < prev_gens.size() && check.pass; ++b) {
        if (!fixes_origin(t, commutator(prev_gens[a], prev_gens[b]))) {
          fail("commutator of generators of the previous level is not in the subgroup");
        }
      }
    }

    const auto gens = schreier_generator_words(t, schreier_transversal(t));
    for (const auto& w : gens) {
      if (!fixes_origin(tp, w)) {
        fail("subgroup is not contained in the previous level");
        break;
      }
    }
    for (std::uint32_t x = 0; x < t.generator_count() && check.pass; ++x) {
      const Word xw = Word::generator_power(x, 1);
      for (const auto& w : gens) {
        if (!fixes_origin(t, xw.inverse() * w * xw)) {
          fail("subgroup is not normal");
          break;
        }
      }
    }
    report.stages.push_back(std::move(check));
  }
  return report;
}

namespace {

nlohmann::json stage_json(const PiChainStage& s) {
  return {{"level", s.level},
          {"prime", s.prime},
          {"relative_index", s.relative_index},
          {"cumulative_index", s.cumulative_index},
          {"generator_count", s.presentation.generator_count()},
          {"relator_count", s.presentation.relator_count()},
          {"ledger_L", s.ledger.lower_bound.get_str()},
          {"table_hash", table_hash(s.cumulative_table)}};
}

}  // namespace

std::string chain_dump_json(const PiChain& chain) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : chain.stages) out.push_back(stage_json(s));
  return out.dump(2);
}

std::string chain_dump_lines(const PiChain& chain) {
  std::string out;
  for (const auto& s : chain.stages) out += stage_json(s).dump() + "\n";
  return out;
}

}  // namespace rgrad
