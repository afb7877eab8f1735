#include <doctest.h>

#include <clocale>
#include <sstream>

#include "qwf/error.hpp"
#include "qwf/table.hpp"

using namespace qwf;

TEST_CASE("17 significant digits, locale independent") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  std::setlocale(LC_ALL, "de_DE.UTF-8");  // may not exist; output must not change either way
  CHECK(format_double(0.5) == "0.5");
  std::setlocale(LC_ALL, "C");
  CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("CSV layout and JSON mirror") {
  Table t({"t", "value"});
  t.add_row({1.0, 0.25});
  t.add_row({2.0, 1.0 / 3.0});
  CHECK_THROWS_AS(t.add_row({1.0}), Error);
  std::ostringstream os;
  const nlohmann::json cfg{{"command", "test"}};
  t.write_csv(os, cfg);
  const std::string s = os.str();
  CHECK(s.find("# qwf ") == 0);
  CHECK(s.find("# config {\"command\":\"test\"}\n") != std::string::npos);
  CHECK(s.find("t,value\n1,0.25\n2,0.33333333333333331\n") != std::string::npos);
  const auto j = t.to_json(cfg);
  CHECK(j["rows"].size() == 2);
  CHECK(j["config"]["command"] == "test");
  CHECK(t.column("value")[0] == 0.25);
  CHECK_THROWS_AS(t.column("missing"), Error);
}
