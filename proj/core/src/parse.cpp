#include <cctype>
#include <map>
#include <sstream>

#include "rgrad/errors.hpp"
#include "rgrad/presentation.hpp"

namespace rgrad {

namespace {

// Recursive-descent parser for the word grammar:
//   expr    := postfix+
//   postfix := primary ( "'" | "^" int )*
//   primary := name | "1" | "(" expr ")" | "[" expr "," expr "]"
class WordParser {
 public:
  WordParser(std::string_view text, const std::map<std::string, std::uint32_t>& gens,
             std::size_t line)
      : text_(text), gens_(gens), line_(line) {}

  Word parse_all() {
    Word w = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << line_ << ':' << (pos_ + 1) << ": " << what;
    throw InputError(os.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool starts_primary() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return (c >= 'a' && c <= 'z') || c == '(' || c == '[' || c == '1';
  }

  Word expr() {
    if (!starts_primary()) fail("expected a word");
    Word w;
    while (starts_primary()) w *= postfix();
    return w;
  }

  Word postfix() {
    Word w = primary();
    for (;;) {
      if (at('\'')) {
        ++pos_;
        w = w.inverse();
      } else if (at('^')) {
        ++pos_;
        w = w.power(integer());
      } else {
        return w;
      }
    }
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer exponent");
    if (pos_ - digits > 9) fail("exponent too large");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  Word primary() {
    skip_ws();
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = expr();
      if (!at(')')) fail("expected ')'");
      ++pos_;
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word x = expr();
      if (!at(',')) fail("expected ',' in commutator");
      ++pos_;
      Word y = expr();
      if (!at(']')) fail("expected ']'");
      ++pos_;
      return commutator(x, y);
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::islower(static_cast<unsigned char>(text_[pos_])) ||
            std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    auto it = gens_.find(name);
    if (it == gens_.end()) {
      pos_ = start;
      fail("unknown generator '" + name + "'");
    }
    return Word::generator_power(it->second, 1);
  }

  std::string_view text_;
  const std::map<std::string, std::uint32_t>& gens_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

bool valid_name(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::map<std::string, std::uint32_t> name_table(const Presentation& p) {
  std::map<std::string, std::uint32_t> m;
  for (std::size_t g = 0; g < p.generator_count(); ++g) {
    m.emplace(p.generator_name(g), static_cast<std::uint32_t>(g));
  }
  return m;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::vector<std::string> names;
  std::map<std::string, std::uint32_t> gens;
  std::vector<Word> relators;
  std::string label;
  bool have_gens = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    std::string_view line = trim(raw);
    if (!line.empty()) {
      if (line[0] == '#') {
        std::string_view body = trim(line.substr(1));
        if (body.substr(0, 6) == "label:") label = std::string(trim(body.substr(6)));
      } else if (line.substr(0, 5) == "gens:") {
        if (have_gens) throw InputError(std::to_string(line_no) + ":1: duplicate 'gens:' line");
        have_gens = true;
        std::istringstream is{std::string(line.substr(5))};
        std::string name;
        while (is >> name) {
          if (!valid_name(name)) {
            throw InputError(std::to_string(line_no) + ":1: invalid generator name '" + name + "'");
          }
          if (!gens.emplace(name, static_cast<std::uint32_t>(names.size())).second) {
            throw InputError(std::to_string(line_no) + ":1: duplicate generator '" + name + "'");
          }
          names.push_back(name);
        }
      } else if (line.substr(0, 4) == "rel:") {
        if (!have_gens) throw InputError(std::to_string(line_no) + ":1: 'rel:' before 'gens:'");
        const std::size_t offset = static_cast<std::size_t>(line.data() - raw.data()) + 4;
        std::string padded(offset, ' ');
        padded += std::string(line.substr(4));
        Word w = WordParser(padded, gens, line_no).parse_all();
        if (w.cyclically_reduced().empty()) {
          throw InputError(std::to_string(line_no) + ":1: relator is empty after reduction");
        }
        relators.push_back(std::move(w));
      } else {
        throw InputError(std::to_string(line_no) + ":1: expected 'gens:' or 'rel:'");
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (!have_gens) throw InputError("1:1: missing 'gens:' line");
  const std::size_t d = names.size();
  return Presentation(d, std::move(relators), std::move(label), std::move(names));
}

Word parse_word(std::string_view text, const Presentation& p) {
  const auto gens = name_table(p);
  return WordParser(text, gens, 1).parse_all();
}

}  // namespace rgrad
