#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rgrad/cancel.hpp"
#include "rgrad/coset_table.hpp"
#include "rgrad/presentation.hpp"
#include "rgrad/tietze.hpp"

namespace rgrad {

/// Rewriting of words that start at a coset into words over a subgroup's
/// generators: each (coset, positive generator) edge carries a word, and a
/// path spells the product of the words on its edges (inverted when an edge
/// is walked backwards). Plain Schreier rewriting is the case where every
/// non-tree edge carries one fresh generator and tree edges carry nothing.
class EdgeRewriter {
 public:
  EdgeRewriter() = default;
  EdgeRewriter(const CosetTable& table, std::vector<Word> edge_words);

  /// Schreier generators of the table's subgroup, numbered by (coset,
  /// generator) in increasing order over non-tree edges.
  static EdgeRewriter schreier(const CosetTable& table, const SchreierTransversal& tr);

  [[nodiscard]] const CosetTable& table() const { return *table_; }
  [[nodiscard]] const Word& edge(Coset c, std::uint32_t g) const {
    return edge_words_[c * table_->generator_count() + g];
  }
  [[nodiscard]] const std::vector<Word>& edge_words() const { return edge_words_; }

  /// Rewrite of w read from coset `start`; the end coset goes to *end.
  Word rewrite(Coset start, const Word& w, Coset* end = nullptr) const;

  /// Maps every edge word through a generator substitution.
  [[nodiscard]] EdgeRewriter mapped(const std::vector<Word>& images) const;

 private:
  const CosetTable* table_ = nullptr;
  std::vector<Word> edge_words_;
};

/// rep(c) x rep(c x)^-1 for each Schreier generator, as ambient words.
std::vector<Word> schreier_generator_words(const CosetTable& table, const SchreierTransversal& tr);

struct SubgroupPresentation {
  /// Counts of the Reidemeister-Schreier presentation before any cleanup:
  /// (d-1)j+1 generators and r*j relators.
  std::size_t raw_generator_count = 0;
  std::size_t raw_relator_count = 0;
  /// The rewrites of R^t for every relator R and coset t, in (R, t) order.
  std::vector<Word> raw_relators;
  /// Normalized (and optionally Tietze-simplified) presentation of H.
  Presentation presentation;
  /// Raw Schreier generator -> word in `presentation`'s generators.
  std::vector<Word> generator_images;
  /// Ambient words of the raw Schreier generators.
  std::vector<Word> schreier_words;
  DeficiencyLedgerEntry ledger;
};

/// Reidemeister-Schreier. The ledger entry transfers the ambient bound:
/// L(H) - 1 = (L(G) - 1) * [G:H]. `simplify_budget` 0 skips the Tietze pass.
SubgroupPresentation rewrite_subgroup_presentation(const Presentation& p, const CosetTable& t,
                                                  const DeficiencyLedgerEntry& ambient,
                                                  std::size_t simplify_budget = 0,
                                                  const CancelToken& cancel = {});

/// Same, with the ambient bound taken as d - r of `p`.
SubgroupPresentation rewrite_subgroup_presentation(const Presentation& p, const CosetTable& t,
                                                  std::size_t simplify_budget = 0,
                                                  const CancelToken& cancel = {});

/// Relators that, added to a presentation of the normal subgroup N, present
/// the image of N in G / <<g^m>>: the rewrites of g^m from the least coset
/// of every <g>-orbit on N's cosets, one per coset of <g>N. Requires m to be
/// the order of gN; exactly [G:N]/m words come back.
std::vector<Word> pushdown_normal_closure(const EdgeRewriter& rewriter, const Word& g,
                                          std::uint64_t m);

}  // namespace rgrad
