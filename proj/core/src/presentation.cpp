#include "rgrad/presentation.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "rgrad/digest.hpp"
#include "rgrad/errors.hpp"

namespace rgrad {

Presentation::Presentation(std::size_t generator_count, std::vector<Word> relators,
                           std::string label, std::vector<std::string> names)
    : generators_(generator_count), label_(std::move(label)), names_(std::move(names)) {
  if (!names_.empty() && names_.size() != generators_) {
    throw ContractError("presentation: name count does not match generator count");
  }
  std::set<Word> seen;
  relators_.reserve(relators.size());
  for (auto& r : relators) {
    if (r.generator_bound() > generators_) {
      throw ContractError("presentation: relator uses an unknown generator");
    }
    Word c = r.cyclically_reduced();
    if (c.empty()) continue;
    if (!seen.insert(cyclic_canonical(c)).second) continue;
    relators_.push_back(std::move(c));
  }
}

Presentation Presentation::free_group(std::size_t rank, std::string label) {
  return Presentation(rank, {}, std::move(label));
}

std::string Presentation::generator_name(std::size_t g) const {
  if (g < names_.size()) return names_[g];
  return "x" + std::to_string(g);
}

Presentation Presentation::with_relator(const Word& r, std::string label) const {
  return with_relators({r}, std::move(label));
}

Presentation Presentation::with_relators(const std::vector<Word>& rs,
                                         std::string label) const {
  std::vector<Word> all = relators_;
  all.insert(all.end(), rs.begin(), rs.end());
  return Presentation(generators_, std::move(all), label.empty() ? label_ : label,
                      names_);
}

Presentation Presentation::relabeled(std::string label) const {
  Presentation p = *this;
  p.label_ = std::move(label);
  return p;
}

bool Presentation::operator==(const Presentation& other) const {
  if (generators_ != other.generators_ || relators_ != other.relators_) return false;
  for (std::size_t g = 0; g < generators_; ++g) {
    if (generator_name(g) != other.generator_name(g)) return false;
  }
  return true;
}

long long presentation_deficiency(const Presentation& p) {
  return static_cast<long long>(p.generator_count()) -
         static_cast<long long>(p.relator_count());
}

std::string format_word(const Word& w, const Presentation& p) {
  if (w.empty()) return "1";
  std::ostringstream os;
  const auto letters = w.letters();
  bool first = true;
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const std::size_t run = j - i;
    if (!first) os << ' ';
    first = false;
    os << p.generator_name(letters[i].generator());
    if (run == 1) {
      if (letters[i].is_inverse()) os << '\'';
    } else {
      os << '^' << (letters[i].is_inverse() ? "-" : "") << run;
    }
    i = j;
  }
  return os.str();
}

std::string serialize_presentation(const Presentation& p, bool include_label) {
  std::ostringstream os;
  os << "gens:";
  for (std::size_t g = 0; g < p.generator_count(); ++g) os << ' ' << p.generator_name(g);
  os << '\n';
  for (const auto& r : p.relators()) os << "rel: " << format_word(r, p) << '\n';
  if (include_label && !p.label().empty()) os << "# label: " << p.label() << '\n';
  return os.str();
}

std::string presentation_hash(const Presentation& p) {
  return sha256_hex(serialize_presentation(p, false));
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open presentation file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

std::string_view to_string(Derivation d) {
  switch (d) {
    case Derivation::asserted_input:
      return "asserted-input";
    case Derivation::finite_index_transfer:
      return "finite-index-transfer";
    case Derivation::power_kill_transfer:
      return "power-kill-transfer";
  }
  return "unknown";
}

DeficiencyLedgerEntry asserted_ledger(const Presentation& p) {
  DeficiencyLedgerEntry e;
  e.witness_hash = presentation_hash(p);
  e.witness_deficiency = presentation_deficiency(p);
  e.lower_bound = BigInt(static_cast<long>(e.witness_deficiency));
  e.derivation = Derivation::asserted_input;
  return e;
}

}  // namespace rgrad
