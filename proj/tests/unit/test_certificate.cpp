#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "rgrad/engine.hpp"
#include "rgrad/errors.hpp"

using namespace rgrad;
using nlohmann::json;

namespace {

EngineConfig f2_config(std::size_t elements) {
  EngineConfig c;
  c.seed = parse_presentation("gens: a b");
  c.asserted_deficiency = 2;
  c.pi = PiSequence::parse("2,3,5,7,11");
  c.epsilon = Rational(1, 2);
  c.budgets.max_elements = elements;
  return c;
}

const std::string& a4_json() {
  static const std::string text = certificate_to_json(run_engine(f2_config(4)));
  return text;
}

}  // namespace

TEST_CASE("certificate JSON round-trips") {
  auto cert = certificate_from_json(a4_json());
  CHECK(certificate_to_json(cert) == a4_json());
  CHECK(cert.records.size() == 5);
  CHECK(cert.lower_bound == Rational(1, 2));
  CHECK(cert.scope == conclusion_scope());
}

TEST_CASE("strict parsing") {
  json j = json::parse(a4_json());
  auto with = [&](auto edit) {
    json c = j;
    edit(c);
    return c.dump();
  };
  CHECK_THROWS_AS(certificate_from_json("{"), InputError);
  CHECK_THROWS_AS(certificate_from_json(with([](json& c) { c["extra"] = 1; })), InputError);
  CHECK_THROWS_AS(certificate_from_json(with([](json& c) { c.erase("killed"); })), InputError);
  CHECK_THROWS_AS(certificate_from_json(with([](json& c) { c["config"]["epsilon"] = "2/4"; })),
                  InputError);
  CHECK_THROWS_AS(certificate_from_json(with([](json& c) { c["records"][1]["index_decimal"] = "04"; })),
                  InputError);
  CHECK_THROWS_AS(certificate_from_json(with([](json& c) { c["records"][0]["case"] = "other"; })),
                  InputError);
}

TEST_CASE("verification passes on a fresh certificate") {
  auto rep = verify_certificate(a4_json(), f2_config(4));
  CHECK(rep.pass);
  CHECK(rep.message == "ok");
}

TEST_CASE("verification fails on an edited index") {
  json j = json::parse(a4_json());
  j["records"][2]["index_decimal"] = "973";
  auto rep = verify_certificate(j.dump(2), f2_config(4));
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_bad_record == 2u);
}

TEST_CASE("verification fails on reordered records") {
  json j = json::parse(a4_json());
  std::swap(j["records"][3], j["records"][4]);
  auto rep = verify_certificate(j.dump(2), f2_config(4));
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_bad_record == 3u);
}

TEST_CASE("verification fails on a dropped assumption or kill") {
  json j = json::parse(a4_json());
  j["assumptions"] = json::array();
  CHECK_FALSE(verify_certificate(j.dump(2), f2_config(4)).pass);
  json k = json::parse(a4_json());
  k["killed"] = json::array();
  CHECK_FALSE(verify_certificate(k.dump(2), f2_config(4)).pass);
}

TEST_CASE("verification uses the caller's config") {
  auto rep = verify_certificate(a4_json(), f2_config(3));
  CHECK_FALSE(rep.pass);
  auto other = f2_config(4);
  other.epsilon = Rational(1, 3);
  CHECK_FALSE(verify_certificate(a4_json(), other).pass);
}

TEST_CASE("incomplete certificates verify too") {
  EngineConfig c;
  c.seed = parse_presentation("gens: a b c\nrel: a^2");
  c.asserted_deficiency = 2;
  c.pi = PiSequence::parse("2,3");
  c.epsilon = Rational(1, 2);
  c.budgets.max_index = 4;
  auto text = certificate_to_json(run_engine(c));
  CHECK(verify_certificate(text, c).pass);
  json j = json::parse(text);
  j["budget_report"]["complete"] = true;
  CHECK_FALSE(verify_certificate(j.dump(2), c).pass);
}

TEST_CASE("config_from_certificate checks the seed hash") {
  auto cert = certificate_from_json(a4_json());
  auto cfg = config_from_certificate(cert, parse_presentation("gens: a b"));
  CHECK(cfg.asserted_deficiency == 2);
  CHECK(cfg.budgets == f2_config(4).budgets);
  CHECK_THROWS_AS(config_from_certificate(cert, parse_presentation("gens: a b\nrel: a")), InputError);
}
