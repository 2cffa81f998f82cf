#include "rgrad/symbolic_chain.hpp"

#include "rgrad/errors.hpp"
#include "rgrad/linalg.hpp"

namespace rgrad {

namespace {

std::optional<BigInt> scaled_plus_one(const Rational& ratio, const FactoredIndex& index,
                                      std::size_t max_bits) {
  auto v = ScaledIndex{ratio, index}.value(max_bits);
  if (!v) return std::nullopt;
  return *v + 1;
}

BigInt rank_of_free(const DeltaNode& n, std::size_t max_bits) {
  auto r = n.free_rank(max_bits);
  if (!r) {
    throw BudgetExhausted("level " + std::to_string(n.level) +
                          ": free rank does not fit in " + std::to_string(max_bits) + " bits");
  }
  return *r;
}

}  // namespace

std::optional<BigInt> DeltaNode::lower_bound(std::size_t max_bits) const {
  return scaled_plus_one(excess_ratio, index, max_bits);
}

std::optional<BigInt> DeltaNode::free_rank(std::size_t max_bits) const {
  if (!free_ratio) return std::nullopt;
  return scaled_plus_one(*free_ratio, index, max_bits);
}

DeltaNode node_from_stage(PiChainStage stage) {
  DeltaNode n;
  n.level = stage.level;
  n.prime = stage.prime;
  n.index = FactoredIndex::of(stage.cumulative_index);
  const Rational idx(BigInt(static_cast<unsigned long>(stage.cumulative_index)));
  n.excess_ratio = Rational(stage.ledger.lower_bound - 1) / idx;
  n.excess_ratio.canonicalize();
  if (stage.presentation.relator_count() == 0) {
    n.free_ratio = Rational(static_cast<long>(stage.presentation.generator_count()) - 1) / idx;
    n.free_ratio->canonicalize();
  }
  n.stage = std::move(stage);
  return n;
}

DeltaNode next_node(const DeltaNode& parent, std::uint64_t p, const ChainLimits& limits,
                    std::size_t max_bits, const CancelToken& cancel) {
  cancel.check();
  BigInt exponent;
  if (parent.stage) {
    exponent = static_cast<unsigned long>(rank_mod_p(parent.stage->presentation, p));
  } else if (parent.free_ratio) {
    exponent = rank_of_free(parent, max_bits);
  } else {
    throw BudgetExhausted("level " + std::to_string(parent.level) +
                          " has no presentation and is not known to be free");
  }
  const FactoredIndex index = parent.index * FactoredIndex::prime_power(p, exponent);
  if (parent.stage) {
    auto v = index.value(64);
    if (v && *v <= BigInt(static_cast<unsigned long>(limits.max_index))) {
      return node_from_stage(delta_step(*parent.stage, p, limits, cancel));
    }
  }
  // Reidemeister-Schreier multiplies L - 1 and rank - 1 by the relative
  // index, so both ratios carry over unchanged.
  DeltaNode n;
  n.level = parent.level + 1;
  n.prime = p;
  n.index = index;
  n.excess_ratio = parent.excess_ratio;
  n.free_ratio = parent.free_ratio;
  return n;
}

RankModP node_rank_mod_p(const DeltaNode& node, std::uint64_t p, std::size_t max_bits) {
  RankModP out;
  if (node.stage) {
    BigInt v = static_cast<unsigned long>(rank_mod_p(node.stage->presentation, p));
    out.value = v;
    out.excess_ratio = Rational(v - 1) /
                       Rational(BigInt(static_cast<unsigned long>(node.stage->cumulative_index)));
    out.excess_ratio.canonicalize();
    out.source = "presentation";
  } else if (node.free_ratio) {
    out.value = node.free_rank(max_bits);
    out.excess_ratio = *node.free_ratio;
    out.source = "free_rank";
  } else {
    // H_1(D; F_p) needs at least d - r generators for any presentation, and
    // some presentation has d - r >= L.
    out.value = node.lower_bound(max_bits);
    out.excess_ratio = node.excess_ratio;
    out.source = "ledger_bound";
  }
  return out;
}

}  // namespace rgrad
