#include <set>

#include <json.hpp>

#include "certificate_internal.hpp"

#include "rgrad/engine.hpp"
#include "rgrad/errors.hpp"

namespace rgrad {

using nlohmann::json;

namespace {

json opt_big(const std::optional<BigInt>& v) { return v ? json(v->get_str()) : json(nullptr); }
json opt_rat(const std::optional<Rational>& v) {
  return v ? json(format_rational(*v)) : json(nullptr);
}
template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json budgets_json(const EngineBudgets& b) {
  return {{"max_elements", b.max_elements},
          {"max_delta_depth", b.max_delta_depth},
          {"max_index", b.max_index},
          {"stabilization_window", b.stabilization_window},
          {"max_bits", b.max_bits},
          {"simplify_budget", b.simplify_budget}};
}

json record_json(const StageRecord& r) {
  json orders = json::array();
  for (const auto& o : r.observed_orders) orders.push_back({{"level", o.level}, {"order", opt(o.order)}});
  json ineq8 = nullptr;
  if (r.ineq8) {
    ineq8 = {{"lhs", format_rational(r.ineq8->lhs)},
             {"rhs", format_rational(r.ineq8->rhs)},
             {"holds", r.ineq8->holds}};
  }
  const auto& q = r.ineq9;
  return {{"k", r.k},
          {"element_index", opt(r.element_index)},
          {"word", opt(r.word)},
          {"case", std::string(to_string(r.step))},
          {"reason", r.reason},
          {"n", r.n},
          {"m", opt(r.m)},
          {"presentation_hash", r.presentation_hash},
          {"relator_count", r.relator_count},
          {"index", r.index.to_string()},
          {"index_decimal", opt_big(r.index_decimal)},
          {"ledger",
           {{"excess_ratio", format_rational(r.ledger.excess_ratio)},
            {"L", opt_big(r.ledger.lower_bound)},
            {"derivation", std::string(to_string(r.ledger.derivation))},
            {"witness_deficiency", opt(r.ledger.witness_deficiency)},
            {"witness_hash", opt(r.ledger.witness_hash)}}},
          {"ineq8", ineq8},
          {"ineq9",
           {{"dA", opt_big(q.dA)},
            {"dA_excess_ratio", format_rational(q.dA_excess_ratio)},
            {"dA_source", q.dA_source},
            {"lhs", opt_big(q.lhs)},
            {"rhs", opt_rat(q.rhs)},
            {"lhs_normalized", format_rational(q.lhs_normalized)},
            {"rhs_normalized", format_rational(q.rhs_normalized)},
            {"holds", q.holds}}},
          {"observed_orders", orders},
          {"cond_c", opt(r.cond_c)},
          {"index_identity", opt(r.index_identity)}};
}

// Strict reader: every key must be present, no others allowed.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }
  ~Reader() = default;

  const json& at(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) fail("missing key '" + key + "'");
    seen_.insert(key);
    return *it;
  }
  void done() const {
    if (seen_.size() != j_.size()) fail("unexpected keys");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("certificate " + path_ + ": " + msg);
  }
  std::string path(const std::string& key) const { return path_ + "." + key; }

  std::size_t size(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_unsigned()) fail("'" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
  }
  bool boolean(const std::string& key) {
    const json& v = at(key);
    if (!v.is_boolean()) fail("'" + key + "' must be a boolean");
    return v.get<bool>();
  }
  std::string str(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail("'" + key + "' must be a string");
    return v.get<std::string>();
  }
  bool is_null(const std::string& key) { return at(key).is_null(); }
  Rational rational(const std::string& key) {
    const std::string s = str(key);
    Rational q = parse_rational(s);
    if (format_rational(q) != s) fail("'" + key + "' is not a canonical num/den");
    return q;
  }
  BigInt big(const std::string& key) {
    const std::string s = str(key);
    BigInt v = parse_bigint(s);
    if (v.get_str() != s) fail("'" + key + "' is not a canonical integer");
    return v;
  }
  template <class F>
  auto optional(const std::string& key, F read) -> std::optional<decltype(read(key))> {
    if (is_null(key)) return std::nullopt;
    return read(key);
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

StageRecord read_record(const json& j, const std::string& path) {
  Reader rd(j, path);
  StageRecord r;
  r.k = rd.size("k");
  r.element_index = rd.optional("element_index", [&](auto& k) { return rd.size(k); });
  r.word = rd.optional("word", [&](auto& k) { return rd.str(k); });
  const std::string c = rd.str("case");
  if (c == "initial") {
    r.step = StepCase::initial;
  } else if (c == "extend") {
    r.step = StepCase::extend;
  } else if (c == "kill") {
    r.step = StepCase::kill;
  } else {
    rd.fail("unknown case '" + c + "'");
  }
  r.reason = rd.str("reason");
  r.n = rd.size("n");
  r.m = rd.optional("m", [&](auto& k) { return static_cast<std::uint64_t>(rd.size(k)); });
  r.presentation_hash = rd.str("presentation_hash");
  r.relator_count = rd.size("relator_count");
  r.index = FactoredIndex::parse(rd.str("index"));
  r.index_decimal = rd.optional("index_decimal", [&](auto& k) { return rd.big(k); });
  {
    Reader l(rd.at("ledger"), rd.path("ledger"));
    r.ledger.excess_ratio = l.rational("excess_ratio");
    r.ledger.lower_bound = l.optional("L", [&](auto& k) { return l.big(k); });
    const std::string d = l.str("derivation");
    if (d == to_string(Derivation::asserted_input)) {
      r.ledger.derivation = Derivation::asserted_input;
    } else if (d == to_string(Derivation::finite_index_transfer)) {
      r.ledger.derivation = Derivation::finite_index_transfer;
    } else if (d == to_string(Derivation::power_kill_transfer)) {
      r.ledger.derivation = Derivation::power_kill_transfer;
    } else {
      l.fail("unknown derivation '" + d + "'");
    }
    r.ledger.witness_deficiency = l.optional("witness_deficiency", [&](auto& k) {
      const json& v = l.at(k);
      if (!v.is_number_integer()) l.fail("witness_deficiency must be an integer");
      return v.get<long long>();
    });
    r.ledger.witness_hash = l.optional("witness_hash", [&](auto& k) { return l.str(k); });
    l.done();
  }
  if (!rd.is_null("ineq8")) {
    Reader q(rd.at("ineq8"), rd.path("ineq8"));
    r.ineq8 = Ineq8Record{q.rational("lhs"), q.rational("rhs"), q.boolean("holds")};
    q.done();
  }
  {
    Reader q(rd.at("ineq9"), rd.path("ineq9"));
    auto& e = r.ineq9;
    e.dA = q.optional("dA", [&](auto& k) { return q.big(k); });
    e.dA_excess_ratio = q.rational("dA_excess_ratio");
    e.dA_source = q.str("dA_source");
    e.lhs = q.optional("lhs", [&](auto& k) { return q.big(k); });
    e.rhs = q.optional("rhs", [&](auto& k) { return q.rational(k); });
    e.lhs_normalized = q.rational("lhs_normalized");
    e.rhs_normalized = q.rational("rhs_normalized");
    e.holds = q.boolean("holds");
    q.done();
  }
  const json& orders = rd.at("observed_orders");
  if (!orders.is_array()) rd.fail("observed_orders must be an array");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    Reader o(orders[i], rd.path("observed_orders[" + std::to_string(i) + "]"));
    OrderObservation ob;
    ob.level = o.size("level");
    ob.order = o.optional("order", [&](auto& k) { return static_cast<std::uint64_t>(o.size(k)); });
    o.done();
    r.observed_orders.push_back(ob);
  }
  r.cond_c = rd.optional("cond_c", [&](auto& k) { return rd.boolean(k); });
  r.index_identity = rd.optional("index_identity", [&](auto& k) { return rd.boolean(k); });
  rd.done();
  return r;
}

std::string first_difference(const json& a, const json& b, const std::string& path) {
  if (a.type() != b.type()) return path;
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return path + "." + it.key();
      auto d = first_difference(*it, b.at(it.key()), path + "." + it.key());
      if (!d.empty()) return d;
    }
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (!a.contains(it.key())) return path + "." + it.key();
    }
    return {};
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      auto d = first_difference(a[i], b[i], path + "[" + std::to_string(i) + "]");
      if (!d.empty()) return d;
    }
    return a.size() == b.size() ? std::string{} : path + ".length";
  }
  return a == b ? std::string{} : path;
}

}  // namespace

std::string record_difference(const StageRecord& expected, const StageRecord& actual) {
  if (expected == actual) return {};
  auto d = first_difference(record_json(expected), record_json(actual), "");
  return d.empty() ? "<value>" : d.substr(1);
}

std::string certificate_to_json(const Certificate& c) {
  json records = json::array();
  for (const auto& r : c.records) records.push_back(record_json(r));
  json assumptions = json::array();
  for (const auto& a : c.assumptions) {
    assumptions.push_back(
        {{"k", a.k}, {"element_index", a.element_index}, {"word", a.word}, {"reason", a.reason}});
  }
  json killed = json::array();
  for (const auto& k : c.killed) {
    killed.push_back({{"k", k.k}, {"word", k.word}, {"m", k.m}, {"n", k.n}});
  }
  json out = {
      {"format", c.format},
      {"config",
       {{"presentation_hash", c.presentation_hash},
        {"asserted_deficiency", c.asserted_deficiency.get_str()},
        {"primes", c.primes},
        {"epsilon", format_rational(c.epsilon)},
        {"r", format_rational(c.r)},
        {"budgets", budgets_json(c.budgets)}}},
      {"records", records},
      {"assumptions", assumptions},
      {"budget_report",
       {{"elements_processed", c.budget.elements_processed},
        {"complete", c.budget.complete},
        {"stop_reason", c.budget.stop_reason}}},
      {"killed", killed},
      {"conclusion", {{"lower_bound", format_rational(c.lower_bound)}, {"scope", c.scope}}}};
  return out.dump(2) + "\n";
}

Certificate certificate_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    Reader top(j, "$");
    Certificate c;
    c.format = top.str("format");
    if (c.format != "rgrad-certificate/1") top.fail("unsupported format '" + c.format + "'");
    {
      Reader cfg(top.at("config"), "$.config");
      c.presentation_hash = cfg.str("presentation_hash");
      c.asserted_deficiency = cfg.big("asserted_deficiency");
      const json& primes = cfg.at("primes");
      if (!primes.is_array()) cfg.fail("primes must be an array");
      for (const auto& p : primes) {
        if (!p.is_number_unsigned()) cfg.fail("primes must be positive integers");
        c.primes.push_back(p.get<std::uint64_t>());
      }
      c.epsilon = cfg.rational("epsilon");
      c.r = cfg.rational("r");
      Reader b(cfg.at("budgets"), "$.config.budgets");
      c.budgets.max_elements = b.size("max_elements");
      c.budgets.max_delta_depth = b.size("max_delta_depth");
      c.budgets.max_index = b.size("max_index");
      c.budgets.stabilization_window = b.size("stabilization_window");
      c.budgets.max_bits = b.size("max_bits");
      c.budgets.simplify_budget = b.size("simplify_budget");
      b.done();
      cfg.done();
    }
    const json& records = top.at("records");
    if (!records.is_array()) top.fail("records must be an array");
    for (std::size_t i = 0; i < records.size(); ++i) {
      c.records.push_back(read_record(records[i], "$.records[" + std::to_string(i) + "]"));
    }
    const json& assumptions = top.at("assumptions");
    if (!assumptions.is_array()) top.fail("assumptions must be an array");
    for (std::size_t i = 0; i < assumptions.size(); ++i) {
      Reader a(assumptions[i], "$.assumptions[" + std::to_string(i) + "]");
      c.assumptions.push_back({a.size("k"), a.size("element_index"), a.str("word"), a.str("reason")});
      a.done();
    }
    {
      Reader b(top.at("budget_report"), "$.budget_report");
      c.budget.elements_processed = b.size("elements_processed");
      c.budget.complete = b.boolean("complete");
      c.budget.stop_reason = b.str("stop_reason");
      b.done();
    }
    const json& killed = top.at("killed");
    if (!killed.is_array()) top.fail("killed must be an array");
    for (std::size_t i = 0; i < killed.size(); ++i) {
      Reader k(killed[i], "$.killed[" + std::to_string(i) + "]");
      KilledRecord kr;
      kr.k = k.size("k");
      kr.word = k.str("word");
      kr.m = k.size("m");
      kr.n = k.size("n");
      k.done();
      c.killed.push_back(kr);
    }
    {
      Reader con(top.at("conclusion"), "$.conclusion");
      c.lower_bound = con.rational("lower_bound");
      c.scope = con.str("scope");
      con.done();
    }
    top.done();
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate has an unexpected shape: ") + e.what());
  }
}

}  // namespace rgrad
