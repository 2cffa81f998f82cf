#include "rgrad/coset_table.hpp"

#include <deque>
#include <sstream>

#include "rgrad/digest.hpp"
#include "rgrad/errors.hpp"

namespace rgrad {

namespace {

constexpr Coset kUndefined = 0xFFFFFFFFu;

}  // namespace

CosetTable::CosetTable(std::size_t generator_count, std::vector<Coset> entries,
                       std::vector<Word> subgroup_generators, std::string ambient_hash)
    : generators_(generator_count),
      entries_(std::move(entries)),
      subgroup_generators_(std::move(subgroup_generators)),
      ambient_hash_(std::move(ambient_hash)) {
  const std::size_t width = 2 * generators_;
  if (width == 0) {
    if (entries_.empty()) {
      index_ = 1;
      return;
    }
    throw ContractError("coset table: entries for a group without generators");
  }
  if (entries_.empty() || entries_.size() % width != 0) {
    throw ContractError("coset table: entry count is not a multiple of 2d");
  }
  index_ = entries_.size() / width;
  for (Coset c = 0; c < index_; ++c) {
    for (std::uint32_t code = 0; code < width; ++code) {
      Coset img = entries_[c * width + code];
      if (img >= index_) throw ContractError("coset table: undefined or out-of-range entry");
      if (entries_[img * width + (code ^ 1u)] != c) {
        throw ContractError("coset table: columns are not mutually inverse at coset " +
                            std::to_string(c));
      }
    }
  }
  // transitivity
  std::vector<bool> seen(index_, false);
  std::deque<Coset> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    Coset c = queue.front();
    queue.pop_front();
    for (std::uint32_t code = 0; code < width; ++code) {
      Coset img = entries_[c * width + code];
      if (!seen[img]) {
        seen[img] = true;
        ++reached;
        queue.push_back(img);
      }
    }
  }
  if (reached != index_) throw ContractError("coset table: action is not transitive");
}

CosetTable CosetTable::trivial(std::size_t generator_count, std::string ambient_hash) {
  std::vector<Word> gens;
  for (std::uint32_t g = 0; g < generator_count; ++g) gens.push_back(Word::generator_power(g, 1));
  return CosetTable(generator_count, std::vector<Coset>(2 * generator_count, 0), std::move(gens),
                    std::move(ambient_hash));
}

CosetTable CosetTable::from_permutations(const std::vector<std::vector<Coset>>& perms,
                                         std::string ambient_hash) {
  const std::size_t d = perms.size();
  if (d == 0) return CosetTable(0, {}, {}, std::move(ambient_hash));
  const std::size_t n = perms[0].size();
  std::vector<Coset> entries(n * 2 * d, kUndefined);
  for (std::size_t g = 0; g < d; ++g) {
    if (perms[g].size() != n) throw ContractError("from_permutations: degree mismatch");
    for (Coset c = 0; c < n; ++c) {
      Coset img = perms[g][c];
      if (img >= n) throw ContractError("from_permutations: image out of range");
      entries[c * 2 * d + 2 * g] = img;
      if (entries[img * 2 * d + 2 * g + 1] != kUndefined) {
        throw ContractError("from_permutations: not a permutation");
      }
      entries[img * 2 * d + 2 * g + 1] = c;
    }
  }
  return CosetTable(d, std::move(entries), {}, std::move(ambient_hash));
}

std::pair<CosetTable, std::vector<Coset>> CosetTable::standardized() const {
  const std::size_t width = 2 * generators_;
  std::vector<Coset> old_to_new(index_, kUndefined);
  std::vector<Coset> order;
  order.reserve(index_);
  old_to_new[0] = 0;
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    Coset c = order[head];
    for (std::uint32_t code = 0; code < width; ++code) {
      Coset img = entries_[c * width + code];
      if (old_to_new[img] == kUndefined) {
        old_to_new[img] = static_cast<Coset>(order.size());
        order.push_back(img);
      }
    }
  }
  std::vector<Coset> entries(entries_.size());
  for (Coset nc = 0; nc < index_; ++nc) {
    Coset oc = order[nc];
    for (std::uint32_t code = 0; code < width; ++code) {
      entries[nc * width + code] = old_to_new[entries_[oc * width + code]];
    }
  }
  CosetTable t;
  t.generators_ = generators_;
  t.index_ = index_;
  t.entries_ = std::move(entries);
  t.subgroup_generators_ = subgroup_generators_;
  t.ambient_hash_ = ambient_hash_;
  return {std::move(t), std::move(old_to_new)};
}

CosetTable CosetTable::with_subgroup_generators(std::vector<Word> gens) const {
  CosetTable t = *this;
  t.subgroup_generators_ = std::move(gens);
  return t;
}

Coset word_action(const CosetTable& t, Coset c, const Word& w) {
  if (c >= t.index()) throw ContractError("word_action: coset out of range");
  if (w.generator_bound() > t.generator_count()) {
    throw ContractError("word_action: word uses an unknown generator");
  }
  for (Letter l : w.letters()) c = t.act(c, l);
  return c;
}

std::uint64_t order_in_quotient(const CosetTable& t, const Word& w) {
  Coset c = word_action(t, 0, w);
  std::uint64_t m = 1;
  while (c != 0) {
    c = word_action(t, c, w);
    ++m;
    if (m > t.index()) throw InvariantViolation("order_in_quotient: orbit longer than index");
  }
  return m;
}

SchreierTransversal schreier_transversal(const CosetTable& t) {
  const std::size_t n = t.index();
  const std::size_t d = t.generator_count();
  SchreierTransversal st;
  st.representatives.assign(n, Word{});
  st.parent.assign(n, 0);
  st.parent_letter.assign(n, Letter(0, false));
  st.tree_edge.assign(n * d, false);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::deque<Coset> queue{0};
  while (!queue.empty()) {
    Coset c = queue.front();
    queue.pop_front();
    for (std::uint32_t code = 0; code < 2 * d; ++code) {
      Letter l = Letter::from_code(code);
      Coset img = t.act(c, l);
      if (seen[img]) continue;
      seen[img] = true;
      st.parent[img] = c;
      st.parent_letter[img] = l;
      st.representatives[img] = st.representatives[c] * Word{l};
      // positive orientation of the tree edge
      if (l.is_inverse()) {
        st.tree_edge[img * d + l.generator()] = true;
      } else {
        st.tree_edge[c * d + l.generator()] = true;
      }
      queue.push_back(img);
    }
  }
  return st;
}

std::string serialize_table(const CosetTable& t) {
  std::ostringstream os;
  os << "coset_table v1\n";
  os << "ambient " << (t.ambient_hash().empty() ? "-" : t.ambient_hash()) << '\n';
  os << "generators " << t.generator_count() << '\n';
  os << "subgens " << t.subgroup_generators().size() << '\n';
  for (const auto& w : t.subgroup_generators()) {
    bool first = true;
    for (Letter l : w.letters()) {
      if (!first) os << ' ';
      first = false;
      os << (l.is_inverse() ? -1 : 1) * static_cast<long long>(l.generator() + 1);
    }
    if (w.empty()) os << '0';
    os << '\n';
  }
  os << "index " << t.index() << '\n';
  for (Coset c = 0; c < t.index(); ++c) {
    auto r = t.row(c);
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
    os << '\n';
  }
  return os.str();
}

std::string table_hash(const CosetTable& t) { return sha256_hex(serialize_table(t)); }

std::vector<std::string> check_table(const CosetTable& t, const Presentation& p) {
  std::vector<std::string> failures;
  if (t.generator_count() != p.generator_count()) {
    failures.push_back("generator count differs from the presentation");
    return failures;
  }
  for (std::size_t i = 0; i < p.relator_count(); ++i) {
    for (Coset c = 0; c < t.index(); ++c) {
      if (word_action(t, c, p.relators()[i]) != c) {
        failures.push_back("relator " + std::to_string(i) + " moves coset " + std::to_string(c));
        break;
      }
    }
  }
  for (std::size_t i = 0; i < t.subgroup_generators().size(); ++i) {
    if (word_action(t, 0, t.subgroup_generators()[i]) != 0) {
      failures.push_back("subgroup generator " + std::to_string(i) + " moves coset 0");
    }
  }
  return failures;
}

}  // namespace rgrad
