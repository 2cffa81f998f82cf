#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rgrad/numeric.hpp"
#include "rgrad/word.hpp"

namespace rgrad {

/// A finite presentation <x_0, ..., x_{d-1} | R_1, ..., R_r>.
///
/// Relators are stored cyclically reduced, nonempty, and without duplicates
/// up to rotation and inversion; the constructor establishes all three, so
/// relators that collapse or repeat are silently dropped. Generators are plain
/// indices; names only matter to the text format.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::size_t generator_count, std::vector<Word> relators,
               std::string label = {}, std::vector<std::string> names = {});

  static Presentation free_group(std::size_t rank, std::string label = {});

  [[nodiscard]] std::size_t generator_count() const { return generators_; }
  [[nodiscard]] std::size_t relator_count() const { return relators_.size(); }
  [[nodiscard]] const std::vector<Word>& relators() const { return relators_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] std::string generator_name(std::size_t g) const;

  /// Same generators plus one more relator (a no-op when it is already present).
  [[nodiscard]] Presentation with_relator(const Word& r, std::string label = {}) const;
  [[nodiscard]] Presentation with_relators(const std::vector<Word>& rs,
                                           std::string label = {}) const;
  [[nodiscard]] Presentation relabeled(std::string label) const;

  /// Equality ignores the label; unnamed generators compare equal to the
  /// default names x0, x1, ...
  bool operator==(const Presentation& other) const;

 private:
  std::size_t generators_ = 0;
  std::vector<Word> relators_;
  std::string label_;
  std::vector<std::string> names_;
};

/// d - r of this particular presentation; a lower bound for the deficiency
/// of the group it presents.
long long presentation_deficiency(const Presentation& p);

/// Parses the line format: "gens: a b c" followed by "rel: <word>" lines.
/// Lines starting with '#' are comments; "# label: text" sets the label.
/// Throws InputError carrying line:column.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);

/// Parses a single word against the generator names of `p`.
Word parse_word(std::string_view text, const Presentation& p);

/// Deterministic text form; parse_presentation(serialize_presentation(p)) == p.
std::string serialize_presentation(const Presentation& p, bool include_label = true);

std::string format_word(const Word& w, const Presentation& p);

/// SHA-256 of the canonical serialization without the label.
std::string presentation_hash(const Presentation& p);

enum class Derivation {
  asserted_input,
  finite_index_transfer,
  power_kill_transfer,
};

std::string_view to_string(Derivation d);

/// A certified lower bound L for the deficiency of some group, with the
/// presentation that witnesses it. witness_deficiency >= lower_bound always.
struct DeficiencyLedgerEntry {
  std::string witness_hash;
  long long witness_deficiency = 0;
  BigInt lower_bound;
  Derivation derivation = Derivation::asserted_input;
};

DeficiencyLedgerEntry asserted_ledger(const Presentation& p);

}  // namespace rgrad
