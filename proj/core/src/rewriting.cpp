#include "rgrad/rewriting.hpp"

#include "rgrad/errors.hpp"

namespace rgrad {

EdgeRewriter::EdgeRewriter(const CosetTable& table, std::vector<Word> edge_words)
    : table_(&table), edge_words_(std::move(edge_words)) {
  if (edge_words_.size() != table.index() * table.generator_count()) {
    throw ContractError("EdgeRewriter: one word per (coset, generator) edge required");
  }
}

EdgeRewriter EdgeRewriter::schreier(const CosetTable& table, const SchreierTransversal& tr) {
  const std::size_t d = table.generator_count();
  std::vector<Word> words(table.index() * d);
  std::uint32_t next = 0;
  for (Coset c = 0; c < table.index(); ++c) {
    for (std::uint32_t g = 0; g < d; ++g) {
      if (!tr.tree_edge[c * d + g]) words[c * d + g] = Word::generator_power(next++, 1);
    }
  }
  return EdgeRewriter(table, std::move(words));
}

Word EdgeRewriter::rewrite(Coset start, const Word& w, Coset* end) const {
  Word out;
  Coset c = start;
  for (Letter l : w.letters()) {
    if (l.is_inverse()) {
      Coset prev = table_->act(c, l);
      out *= edge(prev, l.generator()).inverse();
      c = prev;
    } else {
      out *= edge(c, l.generator());
      c = table_->act(c, l);
    }
  }
  if (end) *end = c;
  return out;
}

EdgeRewriter EdgeRewriter::mapped(const std::vector<Word>& images) const {
  std::vector<Word> words;
  words.reserve(edge_words_.size());
  for (const auto& w : edge_words_) words.push_back(substitute(w, images));
  return EdgeRewriter(*table_, std::move(words));
}

std::vector<Word> schreier_generator_words(const CosetTable& table, const SchreierTransversal& tr) {
  const std::size_t d = table.generator_count();
  std::vector<Word> out;
  for (Coset c = 0; c < table.index(); ++c) {
    for (std::uint32_t g = 0; g < d; ++g) {
      if (tr.tree_edge[c * d + g]) continue;
      Coset img = table.act(c, Letter(g, false));
      out.push_back(tr.representatives[c] * Word::generator_power(g, 1) *
                    tr.representatives[img].inverse());
    }
  }
  return out;
}

SubgroupPresentation rewrite_subgroup_presentation(const Presentation& p, const CosetTable& t,
                                                  const DeficiencyLedgerEntry& ambient,
                                                  std::size_t simplify_budget,
                                                  const CancelToken& cancel) {
  if (t.generator_count() != p.generator_count()) {
    throw ContractError("rewrite_subgroup_presentation: table and presentation disagree on d");
  }
  const std::size_t d = p.generator_count();
  const std::size_t j = t.index();
  const SchreierTransversal tr = schreier_transversal(t);
  const EdgeRewriter rw = EdgeRewriter::schreier(t, tr);

  SubgroupPresentation out;
  out.raw_generator_count = d == 0 ? 0 : (d - 1) * j + 1;
  out.raw_relators.reserve(p.relator_count() * j);
  for (const auto& r : p.relators()) {
    for (Coset c = 0; c < j; ++c) {
      cancel.check();
      Coset end = 0;
      out.raw_relators.push_back(rw.rewrite(c, r, &end));
      if (end != c) {
        throw ContractError("rewrite_subgroup_presentation: relator does not fix coset " +
                            std::to_string(c));
      }
    }
  }
  out.raw_relator_count = out.raw_relators.size();
  out.schreier_words = schreier_generator_words(t, tr);
  if (out.schreier_words.size() != out.raw_generator_count && d > 0) {
    throw InvariantViolation("Schreier generator count differs from (d-1)j+1");
  }

  Presentation raw(out.raw_generator_count, out.raw_relators,
                   p.label().empty() ? "" : p.label() + "/index-" + std::to_string(j));
  if (simplify_budget > 0) {
    SimplifyResult s = tietze_simplify_tracked(raw, simplify_budget, cancel);
    out.presentation = std::move(s.presentation);
    out.generator_images = std::move(s.generator_images);
  } else {
    out.presentation = raw;
    for (std::uint32_t g = 0; g < out.raw_generator_count; ++g) {
      out.generator_images.push_back(Word::generator_power(g, 1));
    }
  }

  // L(H) - 1 = (L(G) - 1) j, witnessed by the raw presentation, whose d - r
  // is (d_G - r_G - 1) j + 1 for the given witness of G.
  out.ledger.lower_bound = (ambient.lower_bound - 1) * static_cast<unsigned long>(j) + 1;
  out.ledger.derivation = Derivation::finite_index_transfer;
  out.ledger.witness_hash = presentation_hash(out.presentation);
  out.ledger.witness_deficiency = presentation_deficiency(out.presentation);
  if (BigInt(static_cast<long>(out.ledger.witness_deficiency)) < out.ledger.lower_bound) {
    throw InvariantViolation("subgroup presentation does not witness its ledger bound");
  }
  return out;
}

SubgroupPresentation rewrite_subgroup_presentation(const Presentation& p, const CosetTable& t,
                                                  std::size_t simplify_budget,
                                                  const CancelToken& cancel) {
  return rewrite_subgroup_presentation(p, t, asserted_ledger(p), simplify_budget, cancel);
}

std::vector<Word> pushdown_normal_closure(const EdgeRewriter& rewriter, const Word& g,
                                          std::uint64_t m) {
  const CosetTable& t = rewriter.table();
  if (m == 0) throw ContractError("pushdown_normal_closure: m must be positive");
  const Word gm = g.power(static_cast<long long>(m));
  if (word_action(t, 0, gm) != 0) {
    throw ContractError("pushdown_normal_closure: g^m is not in the subgroup");
  }
  if (order_in_quotient(t, g) != m) {
    throw ContractError("pushdown_normal_closure: m is not the order of g modulo the subgroup");
  }
  std::vector<bool> seen(t.index(), false);
  std::vector<Word> out;
  for (Coset c = 0; c < t.index(); ++c) {
    if (seen[c]) continue;
    // orbit of c under right multiplication by g
    Coset x = c;
    std::uint64_t size = 0;
    do {
      seen[x] = true;
      x = word_action(t, x, g);
      ++size;
    } while (x != c);
    if (size != m) {
      throw ContractError("pushdown_normal_closure: orbit sizes differ; subgroup is not normal");
    }
    Coset end = 0;
    out.push_back(rewriter.rewrite(c, gm, &end));
    if (end != c) throw ContractError("pushdown_normal_closure: g^m moves a coset");
  }
  return out;
}

}  // namespace rgrad
