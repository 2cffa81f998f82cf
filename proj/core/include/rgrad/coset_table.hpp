#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rgrad/cancel.hpp"
#include "rgrad/presentation.hpp"

namespace rgrad {

using Coset = std::uint32_t;

/// The right action of a presented group on the cosets of a finite-index
/// subgroup: column 2g holds x_g, column 2g+1 holds x_g^-1 (the Letter code).
/// The constructor rejects anything that is not a transitive permutation
/// action with mutually inverse column pairs.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(std::size_t generator_count, std::vector<Coset> entries,
             std::vector<Word> subgroup_generators = {}, std::string ambient_hash = {});

  /// The one-coset table of the whole group.
  static CosetTable trivial(std::size_t generator_count, std::string ambient_hash = {});

  /// Builds a table from the images of each generator (a permutation of
  /// 0..n-1 per generator). Cosets keep their numbering.
  static CosetTable from_permutations(const std::vector<std::vector<Coset>>& perms,
                                      std::string ambient_hash = {});

  [[nodiscard]] std::size_t index() const { return index_; }
  [[nodiscard]] std::size_t generator_count() const { return generators_; }
  [[nodiscard]] Coset act(Coset c, Letter l) const {
    return entries_[c * 2 * generators_ + l.code()];
  }
  [[nodiscard]] std::span<const Coset> row(Coset c) const {
    return {entries_.data() + c * 2 * generators_, 2 * generators_};
  }
  [[nodiscard]] const std::vector<Coset>& entries() const { return entries_; }
  [[nodiscard]] const std::vector<Word>& subgroup_generators() const {
    return subgroup_generators_;
  }
  [[nodiscard]] const std::string& ambient_hash() const { return ambient_hash_; }

  /// Relabels cosets in breadth-first order from coset 0 (columns in code
  /// order). Returns the table and old->new map.
  [[nodiscard]] std::pair<CosetTable, std::vector<Coset>> standardized() const;

  [[nodiscard]] CosetTable with_subgroup_generators(std::vector<Word> gens) const;

  bool operator==(const CosetTable&) const = default;

 private:
  std::size_t generators_ = 0;
  std::size_t index_ = 0;
  std::vector<Coset> entries_;
  std::vector<Word> subgroup_generators_;
  std::string ambient_hash_;
};

/// Image of coset c under w, reading w left to right.
Coset word_action(const CosetTable& t, Coset c, const Word& w);

/// Least m >= 1 with w^m fixing coset 0. For a normal subgroup N this is the
/// order of wN in G/N.
std::uint64_t order_in_quotient(const CosetTable& t, const Word& w);

/// Prefix-closed representatives from a breadth-first spanning tree.
struct SchreierTransversal {
  std::vector<Word> representatives;
  /// Tree edge into each coset (coset 0 has none): parent coset and the
  /// letter with parent * letter = coset.
  std::vector<Coset> parent;
  std::vector<Letter> parent_letter;
  /// Per (coset, positive generator): whether that edge is a tree edge.
  std::vector<bool> tree_edge;
};

SchreierTransversal schreier_transversal(const CosetTable& t);

/// Text dump: header (ambient hash, subgroup generators, index) then one row
/// of 2d coset numbers per coset. Words are written as signed 1-based
/// generator numbers so the format needs no generator names.
std::string serialize_table(const CosetTable& t);
std::string table_hash(const CosetTable& t);

/// Failures of the closed-table invariants against a presentation: each
/// relator must fix every coset and each subgroup generator coset 0.
std::vector<std::string> check_table(const CosetTable& t, const Presentation& p);

struct EnumerationLimits {
  std::size_t max_cosets = 1'000'000;
  std::size_t max_steps = 200'000'000;
};

/// Todd-Coxeter (HLT with lookahead). On success the table is closed and its
/// row count is the index of <subgens> in the group. Cosets are numbered in
/// order of definition, with dead ones squeezed out. Throws BudgetExhausted
/// when the limits are hit first.
CosetTable enumerate_cosets(const Presentation& p, std::span<const Word> subgens,
                            const EnumerationLimits& limits = {},
                            const CancelToken& cancel = {});

}  // namespace rgrad
