#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgrad/presentation.hpp"

namespace rgrad {

using Element = std::uint32_t;

inline constexpr std::size_t kDefaultGroupSizeCap = 10'000;

/// A finite group by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(1, {0}) {}
  /// Checks identity, inverses and (for order <= 64) associativity.
  FiniteGroup(std::size_t order, std::vector<Element> table, std::vector<std::string> labels = {});

  /// Closure of permutations of {0..n-1}; elements numbered breadth-first
  /// from the identity, multiplying by generators in order.
  static FiniteGroup from_permutations(const std::vector<std::vector<std::uint32_t>>& gens,
                                       std::size_t cap = kDefaultGroupSizeCap,
                                       std::vector<Element>* generator_elements = nullptr);

  [[nodiscard]] std::size_t order() const { return order_; }
  [[nodiscard]] Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  [[nodiscard]] Element inv(Element a) const { return inverse_[a]; }
  [[nodiscard]] Element power(Element a, std::uint64_t e) const;
  [[nodiscard]] const std::vector<Element>& table() const { return table_; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }

  /// Value of a word under generator images.
  [[nodiscard]] Element evaluate(const Word& w, const std::vector<Element>& images) const;

 private:
  std::size_t order_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
};

/// A subgroup as its sorted element list, with the generators it was closed from.
struct SubgroupHandle {
  std::vector<Element> elements;
  std::vector<Element> generators;

  [[nodiscard]] std::size_t order() const { return elements.size(); }
  [[nodiscard]] bool contains(Element x) const;
  [[nodiscard]] bool subset_of(const SubgroupHandle& other) const;
  bool operator==(const SubgroupHandle& o) const { return elements == o.elements; }
};

SubgroupHandle subgroup_closure(const FiniteGroup& g, std::vector<Element> generators);
SubgroupHandle whole_group(const FiniteGroup& g);
SubgroupHandle trivial_subgroup(const FiniteGroup& g);

std::uint64_t brute_order(const FiniteGroup& g, Element x);

/// A shortest word for every element, given the images of the generators;
/// ties go to the ShortLex-least word. Throws ContractError when the images
/// do not generate.
std::vector<Word> element_words(const FiniteGroup& g, const std::vector<Element>& images);

/// <[x,y], x^p : x, y in H>
SubgroupHandle brute_verbal_subgroup(const FiniteGroup& g, const SubgroupHandle& h, std::uint64_t p);

/// delta_0 = G, then one entry per prime; stops early once the trivial group
/// is reached.
std::vector<SubgroupHandle> brute_delta_series(const FiniteGroup& g,
                                               const std::vector<std::uint64_t>& primes);

struct LemmaOrdReport {
  /// The series reached the trivial group within the prefix.
  bool precondition = false;
  bool pass = false;
  std::vector<std::string> violations;
};

/// Every element of delta_n must have order supported on p_{n+1}, p_{n+2}, ...
/// (up to the prefix end).
LemmaOrdReport check_lemma_ord(const FiniteGroup& g, const std::vector<std::uint64_t>& primes);

/// Least n with delta_n inside h, within the prefix.
std::optional<std::size_t> check_contains_delta(const FiniteGroup& g,
                                                const std::vector<std::uint64_t>& primes,
                                                const SubgroupHandle& h);

bool is_normal(const FiniteGroup& g, const SubgroupHandle& h);

/// Every subgroup, by closing cyclic subgroups under joins. Sorted by
/// (order, elements).
std::vector<SubgroupHandle> subgroup_lattice(const FiniteGroup& g);

/// A catalog group: multiplication table plus a presentation whose
/// generators map to the listed elements.
struct CatalogEntry {
  std::string name;
  FiniteGroup group;
  Presentation presentation;
  std::vector<Element> generator_images;
};

/// Reads "<dir>/<name>.tbl" and "<dir>/<name>.pres".
CatalogEntry load_catalog_entry(const std::string& dir, const std::string& name);
std::vector<std::string> catalog_names(const std::string& dir);

/// Parses a group table: the order on the first line, then n rows of n
/// entries. Optional "# name:", "# generators:" and "# labels:" comment lines.
FiniteGroup parse_group_table(std::string_view text, std::vector<Element>* generator_images,
                              std::string* name);

}  // namespace rgrad
