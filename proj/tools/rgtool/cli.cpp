#include "rgtool/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rgrad/coset_table.hpp"
#include "rgrad/engine.hpp"
#include "rgrad/errors.hpp"
#include "rgrad/oracle.hpp"
#include "rgrad/pi_series.hpp"
#include "rgrad/presentation.hpp"

namespace rgtool {
namespace {

using namespace rgrad;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Splits on commas outside brackets, so "[a,b],a^2" is two words.
std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct CosetOpts {
  std::string file;
  std::vector<std::string> subgens;
  std::size_t max_cosets = EnumerationLimits{}.max_cosets;
};

int cmd_coset(const CosetOpts& o, std::ostream& out) {
  Presentation p = load_presentation(o.file);
  std::vector<Word> subgens;
  for (const auto& arg : o.subgens) {
    for (const auto& w : split_words(arg)) subgens.push_back(parse_word(w, p));
  }
  EnumerationLimits limits;
  limits.max_cosets = o.max_cosets;
  CosetTable t = enumerate_cosets(p, subgens, limits);
  out << "index " << t.index() << "\n" << serialize_table(t);
  return kOk;
}

struct PichainOpts {
  std::string file;
  std::string primes;
  std::size_t depth = 0;
  std::size_t max_index = ChainLimits{}.max_index;
};

int cmd_pichain(const PichainOpts& o, std::ostream& out, std::ostream& err) {
  Presentation p = load_presentation(o.file);
  PiSequence pi = PiSequence::parse(o.primes);
  if (o.depth > pi.size()) throw InputError("--depth exceeds the number of primes");
  ChainLimits limits;
  limits.max_index = o.max_index;
  PiChain chain = pi_chain(p, pi, o.depth, limits);
  out << chain_dump_lines(chain);
  if (chain.failed_level) {
    err << "level " << *chain.failed_level << ": " << chain.failure << "\n";
    return kBudgetExhausted;
  }
  return kOk;
}

struct ConstructOpts {
  std::string file;
  std::string primes;
  std::string epsilon;
  std::string deficiency;
  EngineBudgets budgets;
  std::string out_file;
  std::string resume_file;
};

int cmd_construct(const ConstructOpts& o, std::ostream& out, std::ostream& err) {
  EngineConfig cfg;
  cfg.seed = load_presentation(o.file);
  cfg.pi = PiSequence::parse(o.primes);
  cfg.epsilon = parse_rational(o.epsilon);
  cfg.asserted_deficiency = parse_bigint(o.deficiency);
  cfg.budgets = o.budgets;
  cfg.validate();
  Engine engine(cfg);
  if (!o.resume_file.empty()) engine.resume(certificate_from_json(read_text(o.resume_file)));
  engine.run();
  const Certificate& cert = engine.certificate();
  std::string json = certificate_to_json(cert);
  if (o.out_file.empty()) {
    out << json;
  } else {
    std::ofstream f(o.out_file, std::ios::binary);
    if (!f) throw InputError("cannot write " + o.out_file);
    f << json;
  }
  if (!cert.budget.complete) {
    err << "stopped: " << cert.budget.stop_reason << "\n";
    return kBudgetExhausted;
  }
  return kOk;
}

struct VerifyOpts {
  std::string certificate;
  std::string presentation;
};

int cmd_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  std::string text = read_text(o.certificate);
  Presentation seed = load_presentation(o.presentation);
  if (!nlohmann::json::accept(text)) throw InputError(o.certificate + ": not valid JSON");
  Certificate cert;
  try {
    cert = certificate_from_json(text);
  } catch (const InputError& e) {
    err << "FAIL certificate: " << e.what() << "\n";
    return kVerificationFailed;
  }
  EngineConfig cfg = config_from_certificate(cert, seed);
  VerifyReport rep = verify_certificate(text, cfg);
  if (rep.pass) {
    out << "PASS " << cert.records.size() << " records\n";
    return kOk;
  }
  err << "FAIL " << rep.message << "\n";
  return kVerificationFailed;
}

struct OracleOpts {
  std::string catalog;
  std::string table_file;
  std::string catalog_dir;
  std::string primes;
  std::string check = "all";
};

struct OracleTarget {
  std::string name;
  FiniteGroup group;
  std::optional<Presentation> presentation;
  std::vector<Element> images;
};

// Appends the report for one group; returns false on a failed check.
bool oracle_report(const OracleTarget& t, const PiSequence& pi, const std::string& check,
                   std::ostream& out) {
  const auto& primes = pi.primes();
  bool ok = true;
  out << t.name << " (order " << t.group.order() << "), primes " << pi.to_string() << "\n";
  const auto series = brute_delta_series(t.group, primes);
  if (check == "delta" || check == "all") {
    out << "  delta orders:";
    for (const auto& h : series) out << " " << h.order();
    out << "\n";
    if (t.presentation) {
      PiChain chain = pi_chain(*t.presentation, pi, pi.size());
      const auto words = element_words(t.group, t.images);
      std::size_t mismatches = 0;
      for (std::size_t i = 0; i <= chain.depth(); ++i) {
        const auto& table = chain.level(i).cumulative_table;
        const SubgroupHandle& brute = i < series.size() ? series[i] : series.back();
        for (Element x = 0; x < t.group.order(); ++x) {
          bool in_chain = word_action(table, 0, words[x]) == 0;
          if (in_chain != brute.contains(x)) ++mismatches;
        }
      }
      out << "  pi_series levels " << chain.depth() << ", membership mismatches " << mismatches
          << "\n";
      if (chain.failed_level) {
        out << "  pi_series stopped at level " << *chain.failed_level << ": " << chain.failure
            << "\n";
        ok = false;
      }
      ok = ok && mismatches == 0;
    }
  }
  if (check == "ord" || check == "all") {
    LemmaOrdReport rep = check_lemma_ord(t.group, primes);
    out << "  order support: " << (rep.pass ? "pass" : "FAIL")
        << (rep.precondition ? "" : " (series does not reach 1 within the prefix)") << "\n";
    for (const auto& v : rep.violations) out << "    " << v << "\n";
    ok = ok && rep.pass;
  }
  if (check == "contains" || check == "all") {
    const auto lattice = subgroup_lattice(t.group);
    std::size_t missing = 0;
    out << "  subgroups " << lattice.size() << "\n";
    for (const auto& h : lattice) {
      auto n = check_contains_delta(t.group, primes, h);
      out << "    order " << h.order() << (is_normal(t.group, h) ? " normal" : "") << ": n = "
          << (n ? std::to_string(*n) : std::string("none")) << "\n";
      if (!n) ++missing;
    }
    ok = ok && missing == 0;
  }
  out << "  result: " << (ok ? "pass" : "FAIL") << "\n";
  return ok;
}

int cmd_oracle(const OracleOpts& o, unsigned jobs, std::ostream& out) {
  if (o.catalog.empty() == o.table_file.empty()) {
    throw InputError("give exactly one of --catalog and --table");
  }
  if (o.check != "delta" && o.check != "ord" && o.check != "contains" && o.check != "all") {
    throw InputError("--check must be delta, ord, contains or all");
  }
  PiSequence pi = PiSequence::parse(o.primes);
  std::vector<OracleTarget> targets;
  if (!o.table_file.empty()) {
    OracleTarget t;
    t.group = parse_group_table(read_text(o.table_file), &t.images, &t.name);
    if (t.name.empty()) t.name = o.table_file;
    targets.push_back(std::move(t));
  } else {
    std::string dir = o.catalog_dir;
    if (dir.empty()) {
      const char* env = std::getenv("RGRAD_CATALOG_DIR");
      dir = env ? env : RGRAD_DEFAULT_CATALOG;
    }
    std::vector<std::string> names;
    for (const auto& n : catalog_names(dir)) {
      if (o.catalog == "all" || lower(n) == lower(o.catalog)) names.push_back(n);
    }
    if (names.empty()) throw InputError("unknown catalog group '" + o.catalog + "'");
    for (const auto& n : names) {
      CatalogEntry e = load_catalog_entry(dir, n);
      targets.push_back({e.name, e.group, e.presentation, e.generator_images});
    }
  }
  std::vector<std::string> reports(targets.size());
  std::vector<char> passed(targets.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < targets.size();) {
      try {
        std::ostringstream ss;
        passed[i] = oracle_report(targets[i], pi, o.check, ss);
        reports[i] = ss.str();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(targets.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  for (const auto& r : reports) out << r;
  bool all = std::all_of(passed.begin(), passed.end(), [](char c) { return c != 0; });
  return all ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finitely presented group toolkit: coset enumeration, delta-series and "
               "rank-gradient certificates"};
  app.set_version_flag("--version",
                       std::string("rgtool ") + RGRAD_VERSION + " (build " + RGRAD_BUILD_HASH + ")");
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.require_subcommand(1);

  CosetOpts co;
  auto* coset = app.add_subcommand("coset", "Enumerate cosets of a subgroup");
  coset->add_option("presentation", co.file)->required();
  coset->add_option("--subgens", co.subgens, "Subgroup generators, comma separated");
  coset->add_option("--max-cosets", co.max_cosets);

  PichainOpts po;
  auto* pichain = app.add_subcommand("pichain", "Build a delta-series prefix");
  pichain->add_option("presentation", po.file)->required();
  pichain->add_option("--primes", po.primes)->required();
  pichain->add_option("--depth", po.depth)->required();
  pichain->add_option("--max-index", po.max_index);

  ConstructOpts cons;
  auto* construct = app.add_subcommand("construct", "Run the quotient construction");
  construct->add_option("presentation", cons.file)->required();
  construct->add_option("--primes", cons.primes)->required();
  construct->add_option("--epsilon", cons.epsilon, "num/den")->required();
  construct->add_option("--deficiency", cons.deficiency, "Asserted deficiency bound")->required();
  construct->add_option("--elements", cons.budgets.max_elements);
  construct->add_option("--max-depth", cons.budgets.max_delta_depth);
  construct->add_option("--max-index", cons.budgets.max_index);
  construct->add_option("--window", cons.budgets.stabilization_window);
  construct->add_option("--max-bits", cons.budgets.max_bits);
  construct->add_option("--simplify-budget", cons.budgets.simplify_budget);
  construct->add_option("--out", cons.out_file);
  construct->add_option("--resume", cons.resume_file, "Checkpoint certificate to continue");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "Replay and check a certificate");
  verify->add_option("certificate", vo.certificate)->required();
  verify->add_option("presentation", vo.presentation)->required();

  OracleOpts oo;
  auto* oracle = app.add_subcommand("oracle", "Brute-force checks on finite groups");
  oracle->add_option("--catalog", oo.catalog, "Catalog group name, or 'all'");
  oracle->add_option("--table", oo.table_file, "Group table file");
  oracle->add_option("--catalog-dir", oo.catalog_dir);
  oracle->add_option("--primes", oo.primes)->required();
  oracle->add_option("--check", oo.check);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*coset) return cmd_coset(co, out);
    if (*pichain) return cmd_pichain(po, out, err);
    if (*construct) return cmd_construct(cons, out, err);
    if (*verify) return cmd_verify(vo, out, err);
    if (*oracle) return cmd_oracle(oo, jobs, out);
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kBudgetExhausted;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace rgtool
