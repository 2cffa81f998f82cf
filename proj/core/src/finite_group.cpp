#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "rgrad/errors.hpp"
#include "rgrad/oracle.hpp"

namespace rgrad {

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Element> table,
                         std::vector<std::string> labels)
    : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
  const std::size_t n = order_;
  if (n == 0 || table_.size() != n * n) throw ContractError("group table has the wrong size");
  if (!labels_.empty() && labels_.size() != n) throw ContractError("group labels: wrong count");
  for (auto v : table_) {
    if (v >= n) throw ContractError("group table entry out of range");
  }
  for (Element a = 0; a < n; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) throw ContractError("element 0 is not the identity");
  }
  inverse_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    std::vector<bool> row(n, false);
    bool found = false;
    for (Element b = 0; b < n; ++b) {
      if (row[mul(a, b)]) throw ContractError("group table row is not a permutation");
      row[mul(a, b)] = true;
      if (mul(a, b) == 0) {
        if (mul(b, a) != 0) throw ContractError("one-sided inverse in group table");
        inverse_[a] = b;
        found = true;
      }
    }
    if (!found) throw ContractError("element without inverse in group table");
  }
  if (n <= 64) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            throw ContractError("group table is not associative");
          }
  }
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<std::uint32_t>>& gens,
                                           std::size_t cap,
                                           std::vector<Element>* generator_elements) {
  const std::size_t degree = gens.empty() ? 0 : gens[0].size();
  using Perm = std::vector<std::uint32_t>;
  for (const auto& g : gens) {
    if (g.size() != degree) throw ContractError("permutations of different degrees");
    std::vector<bool> seen(degree, false);
    for (auto v : g) {
      if (v >= degree || seen[v]) throw ContractError("not a permutation");
      seen[v] = true;
    }
  }
  auto compose = [](const Perm& a, const Perm& b) {  // a then b
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
    return c;
  };
  Perm id(degree);
  for (std::uint32_t i = 0; i < degree; ++i) id[i] = i;
  std::vector<Perm> elems{id};
  std::map<Perm, Element> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      Perm next = compose(elems[head], g);
      if (!index.count(next)) {
        if (elems.size() >= cap) {
          throw BudgetExhausted("group closure exceeds " + std::to_string(cap) + " elements");
        }
        index.emplace(next, static_cast<Element>(elems.size()));
        elems.push_back(std::move(next));
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Element> table(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) table[a * n + b] = index.at(compose(elems[a], elems[b]));
  if (generator_elements) {
    generator_elements->clear();
    for (const auto& g : gens) generator_elements->push_back(index.at(g));
  }
  return FiniteGroup(n, std::move(table));
}

Element FiniteGroup::power(Element a, std::uint64_t e) const {
  Element r = 0;
  for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

Element FiniteGroup::evaluate(const Word& w, const std::vector<Element>& images) const {
  Element r = 0;
  for (Letter l : w.letters()) {
    if (l.generator() >= images.size()) throw ContractError("word uses an unmapped generator");
    Element x = images[l.generator()];
    r = mul(r, l.is_inverse() ? inv(x) : x);
  }
  return r;
}

bool SubgroupHandle::contains(Element x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

bool SubgroupHandle::subset_of(const SubgroupHandle& other) const {
  return std::includes(other.elements.begin(), other.elements.end(), elements.begin(),
                       elements.end());
}

std::vector<Word> element_words(const FiniteGroup& g, const std::vector<Element>& images) {
  std::vector<std::optional<Word>> found(g.order());
  found[0] = Word{};
  std::deque<Element> queue{0};
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    // letters in code order, so the first word to reach an element is ShortLex-least
    for (std::uint32_t code = 0; code < 2 * images.size(); ++code) {
      Letter l = Letter::from_code(code);
      Element s = l.is_inverse() ? g.inv(images[l.generator()]) : images[l.generator()];
      Element y = g.mul(x, s);
      if (found[y]) continue;
      found[y] = *found[x] * Word{l};
      queue.push_back(y);
    }
  }
  std::vector<Word> out;
  out.reserve(g.order());
  for (auto& w : found) {
    if (!w) throw ContractError("element_words: images do not generate the group");
    out.push_back(std::move(*w));
  }
  return out;
}

SubgroupHandle subgroup_closure(const FiniteGroup& g, std::vector<Element> generators) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> list{0};
  in[0] = true;
  for (std::size_t head = 0; head < list.size(); ++head) {
    for (Element s : generators) {
      Element x = g.mul(list[head], s);
      if (!in[x]) {
        in[x] = true;
        list.push_back(x);
      }
    }
  }
  std::sort(list.begin(), list.end());
  return {std::move(list), std::move(generators)};
}

SubgroupHandle whole_group(const FiniteGroup& g) {
  SubgroupHandle h;
  for (Element x = 0; x < g.order(); ++x) h.elements.push_back(x);
  h.generators = h.elements;
  return h;
}

SubgroupHandle trivial_subgroup(const FiniteGroup&) { return {{0}, {}}; }

std::uint64_t brute_order(const FiniteGroup& g, Element x) {
  std::uint64_t m = 1;
  for (Element y = x; y != 0; y = g.mul(y, x)) ++m;
  return m;
}

bool is_normal(const FiniteGroup& g, const SubgroupHandle& h) {
  for (Element x = 0; x < g.order(); ++x) {
    for (Element y : h.elements) {
      if (!h.contains(g.mul(g.mul(g.inv(x), y), x))) return false;
    }
  }
  return true;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::uint32_t parse_u32(const std::string& s, std::size_t line) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      s.size() > 9) {
    throw InputError("group table line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return static_cast<std::uint32_t>(std::stoul(s));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FiniteGroup parse_group_table(std::string_view text, std::vector<Element>* generator_images,
                              std::string* name) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::size_t order = 0;
  std::vector<Element> gens;
  std::vector<Element> table;
  std::vector<std::string> labels;
  auto directive = [&](const std::string& key) -> std::optional<std::vector<std::string>> {
    if (line.rfind(key, 0) != 0) return std::nullopt;
    return split_ws(line.substr(key.size()));
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') {
      if (auto v = directive("# name:")) {
        if (name) *name = v->empty() ? "" : v->front();
      } else if (auto v = directive("# generators:")) {
        for (const auto& t : *v) gens.push_back(parse_u32(t, lineno));
      } else if (auto v = directive("# labels:")) {
        labels = *v;
      }
      continue;
    }
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (order == 0) {
      if (tok.size() != 1) throw InputError("group table line " + std::to_string(lineno) + ": expected the order");
      order = parse_u32(tok[0], lineno);
      if (order == 0) throw InputError("group table: order must be positive");
      continue;
    }
    if (tok.size() != order || table.size() >= order * order) {
      throw InputError("group table line " + std::to_string(lineno) + ": expected " +
                       std::to_string(order) + " entries");
    }
    for (const auto& t : tok) table.push_back(parse_u32(t, lineno));
  }
  if (order == 0 || table.size() != order * order) {
    throw InputError("group table: expected " + std::to_string(order) + " rows");
  }
  for (auto g : gens) {
    if (g >= order) throw InputError("group table: generator element out of range");
  }
  if (generator_images) *generator_images = gens;
  try {
    return FiniteGroup(order, std::move(table), std::move(labels));
  } catch (const ContractError& e) {
    throw InputError(std::string("group table: ") + e.what());
  }
}

CatalogEntry load_catalog_entry(const std::string& dir, const std::string& name) {
  CatalogEntry e;
  e.name = name;
  e.group = parse_group_table(read_file(dir + "/" + name + ".tbl"), &e.generator_images, nullptr);
  e.presentation = load_presentation(dir + "/" + name + ".pres");
  if (e.generator_images.size() != e.presentation.generator_count()) {
    throw InputError("catalog " + name + ": generator count differs between table and presentation");
  }
  return e;
}

std::vector<std::string> catalog_names(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    if (f.path().extension() == ".tbl") out.push_back(f.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rgrad
