#pragma once

#include <cstddef>
#include <vector>

#include "rgrad/cancel.hpp"
#include "rgrad/presentation.hpp"

namespace rgrad {

inline constexpr std::size_t kDefaultSimplifyBudget = 1'000'000;

struct SimplifyResult {
  Presentation presentation;
  /// For every generator of the input, its value as a word in the output's
  /// generators. Surviving generators are renumbered in their original order.
  std::vector<Word> generator_images;
  std::size_t moves = 0;
};

/// Tietze moves that never decrease d - r:
///   * drop empty and duplicate relators,
///   * delete a generator x together with a relator in which x occurs exactly
///     once, substituting the solved value of x elsewhere (only when that
///     does not grow the total relator length).
/// Each applied move costs one unit of `budget`; exhaustion returns the
/// current state. Deterministic.
SimplifyResult tietze_simplify_tracked(const Presentation& p,
                                       std::size_t budget = kDefaultSimplifyBudget,
                                       const CancelToken& cancel = {});

Presentation tietze_simplify(const Presentation& p,
                             std::size_t budget = kDefaultSimplifyBudget);

/// Rewrites w through a generator substitution.
Word substitute(const Word& w, const std::vector<Word>& images);

}  // namespace rgrad
