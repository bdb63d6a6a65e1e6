#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "rfcw/jobs.hpp"

using namespace rfcw;
using nlohmann::json;

namespace {

json constant_model(double h) { return FieldModel::constant(h).to_json(); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string line = text.substr(pos, eol - pos);
    pos = eol == std::string::npos ? text.size() : eol + 1;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_CASE("config validation rejects malformed inputs") {
  CHECK_THROWS_AS(parse_job_config(json::object(), ""), ConfigError);
  CHECK_THROWS_AS(parse_job_config({{"command", "plot"}}, ""), ConfigError);
  CHECK_THROWS_AS(parse_job_config(json::parse("[1,2]"), "verify"),
                  ConfigError);
  CHECK_THROWS_AS(parse_job_config({{"command", "rate-curve"}}, ""),
                  ConfigError);

  json base{{"command", "verify"}};
  auto reject = [&base](const char* key, json value) {
    json j = base;
    j[key] = std::move(value);
    CHECK_THROWS_AS(parse_job_config(j, ""), ConfigError);
  };
  reject("beta", -0.5);
  reject("beta", 0.0);
  reject("theory_beta", -1.0);
  reject("x_grid", json{{"lo", 1.0}, {"hi", -1.0}});
  reject("x_grid", json{{"lo", 0.0}, {"hi", 1.0}, {"points", 1}});
  reject("beta_range", json{{"lo", 0.0}, {"hi", 2.0}});
  reject("set", json{{"lo", 1.0}, {"hi", 0.3}});
  reject("n_list", json::array());
  reject("n_list", json{100, 100});
  reject("n_list", json{0, 50});
  reject("seeds", json::array());
  reject("max_deviation", 0.0);
  reject("format", "xml");
  reject("model", json{{"variant", "nonsense"}});
}

TEST_CASE("config defaults") {
  const JobConfig c = parse_job_config({{"command", "verify"}}, "");
  CHECK(c.command == "verify");
  CHECK_FALSE(c.model.has_value());
  CHECK(c.beta == 1.0);
  CHECK(c.theory_beta == 0.0);
  CHECK(c.x_grid.lo == -1.05);
  CHECK(c.x_grid.hi == 1.05);
  CHECK(c.x_grid.points == 211);
  CHECK(c.set.lo == 0.3);
  CHECK(c.set.hi == 1.0);
  CHECK(c.n_list == std::vector<std::size_t>{100, 400, 1600});
  CHECK(c.seeds == std::vector<std::uint64_t>{11, 12, 13, 14, 15, 16});
  CHECK(c.max_deviation == 0.03);
  CHECK(c.format == "csv");
  CHECK_FALSE(c.critical_line);

  // The subcommand argument wins over the "command" key; the fields
  // command swaps in a wider, coarser default x grid.
  const JobConfig f = parse_job_config(
      {{"command", "verify"}, {"model", constant_model(0.0)}}, "fields");
  CHECK(f.command == "fields");
  CHECK(f.x_grid.lo == -2.0);
  CHECK(f.x_grid.hi == 2.0);
  CHECK(f.x_grid.points == 9);
}

TEST_CASE("rate curve output") {
  const json j{{"command", "rate-curve"},
               {"model", constant_model(0.0)},
               {"beta", 0.5}};
  const JobConfig config = parse_job_config(j, "");
  const JobResult result = run_job(config);
  CHECK(result.ok);
  CHECK(run_job(config).output == result.output);  // determinism

  const auto rows = parse_csv(result.output);
  REQUIRE(rows.size() == 212);
  CHECK(rows[0] == std::vector<std::string>{"x", "I", "G", "f_star"});
  CHECK(rows[1][1] == "inf");   // x = -1.05 sits outside [-1, 1]
  CHECK(rows[1][3] == "inf");
  CHECK(rows[1][2] != "inf");   // G is finite everywhere

  // Unique zero of I at x = 0.
  int zeros = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][1] == "inf") continue;
    if (std::fabs(std::stod(rows[i][1])) <= 1e-12) {
      ++zeros;
      CHECK(std::fabs(std::stod(rows[i][0])) <= 1e-15);
    }
  }
  CHECK(zeros == 1);
}

TEST_CASE("rate curve shows the symmetric minima pair") {
  const json j{{"command", "rate-curve"},
               {"model", FieldModel::dichotomous(0.3, 0.5).to_json()},
               {"beta", 3.0}};
  const JobResult result = run_job(parse_job_config(j, ""));
  const auto rows = parse_csv(result.output);

  double best = kInf;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][1] == "inf") continue;
    best = std::min(best, std::stod(rows[i][1]));
  }
  std::vector<double> argmins;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][1] == "inf") continue;
    if (std::stod(rows[i][1]) <= best + 1e-9)
      argmins.push_back(std::stod(rows[i][0]));
  }
  REQUIRE(argmins.size() == 2);
  CHECK(best <= 1e-3);
  CHECK(std::fabs(argmins[0] + argmins[1]) <= 1e-12);
  CHECK(argmins[0] < -0.5);
}

TEST_CASE("phase scan over the two-point family") {
  const json j{{"command", "phase-scan"},
               {"model", FieldModel::dichotomous(1.0, 0.5).to_json()},
               {"beta_range", json{{"lo", 0.5}, {"hi", 4.0}, {"points", 4}}},
               {"h_range", json{{"lo", 0.0}, {"hi", 0.8}, {"points", 5}}}};
  const JobConfig config = parse_job_config(j, "");
  const JobResult result = run_job(config);
  CHECK(run_job(config).output == result.output);

  const auto rows = parse_csv(result.output);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0][0] == "beta");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double h = std::stod(rows[i][1]);
    if (h >= 0.5) CHECK(rows[i][2] == "paramagnetic");
  }

  json j2 = j;
  j2["format"] = "json";
  const json doc = json::parse(run_job(parse_job_config(j2, "")).output);
  CHECK(doc.at("cells").size() == 20);
  CHECK(doc.contains("critical_line"));
}

TEST_CASE("uniform family never shows a first-order label") {
  const json j{{"command", "phase-scan"},
               {"model", FieldModel::uniform(1.0).to_json()},
               {"beta_range", json{{"lo", 0.5}, {"hi", 2.5}, {"points", 3}}},
               {"h_range", json{{"lo", 0.2}, {"hi", 0.8}, {"points", 3}}},
               {"critical_line", true}};
  const JobResult result = run_job(parse_job_config(j, ""));
  const auto rows = parse_csv(result.output);
  REQUIRE(rows.size() > 1);
  int traced = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][2] != "first_order");
    if (rows[i][2] == "second_order") ++traced;
  }
  CHECK(traced >= 3);  // one critical-line row per h column
}

TEST_CASE("phase scan validation") {
  const json j{{"command", "phase-scan"},
               {"model", constant_model(0.0)},
               {"beta_range", json{{"lo", 2.0}, {"hi", 0.5}}}};
  CHECK_THROWS_AS(parse_job_config(j, ""), ConfigError);

  // Families are indexed by h; a finite table has no such dial.
  const json j2{
      {"command", "phase-scan"},
      {"model", FieldModel::finite_table({-1.0, 1.0}, {0.5, 0.5}).to_json()}};
  CHECK_THROWS_AS(run_job(parse_job_config(j2, "")), ConfigError);
}

TEST_CASE("verify runs the default suite clean") {
  const JobConfig config = parse_job_config({{"command", "verify"}}, "");
  const JobResult result = run_job(config);
  CHECK(result.ok);
  CHECK(result.summary.find("FAIL") == std::string::npos);
  CHECK(result.summary.find("PASS") != std::string::npos);
  CHECK(result.summary.find("closed form") != std::string::npos);

  const auto rows = parse_csv(result.output);
  CHECK(rows[0][0] == "n");
  // two studies x three sizes x six seeds, one header
  CHECK(rows.size() == 1 + 2 * 3 * 6);
}

TEST_CASE("verify flags a mismatched theory model") {
  const json j{{"command", "verify"},
               {"model", constant_model(0.0)},
               {"beta", 0.5},
               {"theory_beta", 3.0},
               {"set", json{{"lo", 0.3}, {"hi", 0.45}}},
               {"n_list", json{50, 100}},
               {"seeds", json{11, 12}}};
  const JobResult result = run_job(parse_job_config(j, ""));
  CHECK_FALSE(result.ok);
  CHECK(result.summary.find("FAIL") != std::string::npos);
}

TEST_CASE("verify skips the monotonicity check below three sizes") {
  const json j{{"command", "verify"},
               {"model", constant_model(0.0)},
               {"beta", 0.5},
               {"n_list", json{100}},
               {"seeds", json{11, 12}},
               {"max_deviation", 0.5}};
  const JobResult result = run_job(parse_job_config(j, ""));
  CHECK(result.ok);
  CHECK(result.summary.find("monotonicity check skipped") !=
        std::string::npos);
}

TEST_CASE("verify reports when no closed form exists") {
  const json j{{"command", "verify"},
               {"model", FieldModel::dichotomous(0.5, 0.3).to_json()},
               {"beta", 0.8},
               {"n_list", json{20, 40}},
               {"seeds", json{11}},
               {"max_deviation", 0.9}};
  const JobResult result = run_job(parse_job_config(j, ""));
  CHECK(result.ok);
  CHECK(result.summary.find("no closed-form oracle") != std::string::npos);
}

TEST_CASE("fields command output") {
  json j{{"command", "fields"},
         {"model", FieldModel::uniform(0.8).to_json()},
         {"beta", 1.0},
         {"n_list", json{100, 400, 1600}},
         {"seeds", json{11, 12, 13, 14, 15}}};
  const JobConfig config = parse_job_config(j, "");
  const JobResult result = run_job(config);
  CHECK(run_job(config).output == result.output);

  const auto rows = parse_csv(result.output);
  REQUIRE(rows.size() == 1 + 3 * 5 * 9);
  CHECK(rows[0] == std::vector<std::string>{"n", "seed", "x", "f_n", "f_limit",
                                            "deviation"});

  // Median over seeds of the max-over-x deviation shrinks as n grows.
  std::map<std::string, std::map<std::string, double>> max_dev;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double& slot = max_dev[rows[i][0]][rows[i][1]];
    slot = std::max(slot, std::stod(rows[i][5]));
  }
  std::vector<double> medians;
  for (const char* n : {"100", "400", "1600"}) {
    std::vector<double> devs;
    for (const auto& [seed, dev] : max_dev[n]) devs.push_back(dev);
    std::sort(devs.begin(), devs.end());
    medians.push_back(devs[devs.size() / 2]);
  }
  CHECK(medians[1] <= medians[0]);
  CHECK(medians[2] <= medians[1]);
}

TEST_CASE("fields limit column depends only on the invariant law") {
  json base{{"command", "fields"},
            {"beta", 0.9},
            {"n_list", json{50}},
            {"seeds", json{11}}};

  json jm = base;
  jm["model"] = FieldModel::markov_chain({-1.0, 1.0},
                                         {{0.3, 0.7}, {0.7, 0.3}},
                                         {0.5, 0.5})
                    .to_json();
  json jt = base;
  jt["model"] = FieldModel::finite_table({-1.0, 1.0}, {0.5, 0.5}).to_json();

  const auto rm = parse_csv(run_job(parse_job_config(jm, "")).output);
  const auto rt = parse_csv(run_job(parse_job_config(jt, "")).output);
  REQUIRE(rm.size() == rt.size());
  for (std::size_t i = 1; i < rm.size(); ++i) CHECK(rm[i][4] == rt[i][4]);
}

TEST_CASE("rotation and uniform fields share a limit") {
  json base{{"command", "fields"},
            {"beta", 1.1},
            {"n_list", json{50}},
            {"seeds", json{11}}};
  json jr = base;
  jr["model"] = FieldModel::rotation(0.41421356237309515, 0.8).to_json();
  json ju = base;
  ju["model"] = FieldModel::uniform(0.8).to_json();

  const auto rr = parse_csv(run_job(parse_job_config(jr, "")).output);
  const auto ru = parse_csv(run_job(parse_job_config(ju, "")).output);
  REQUIRE(rr.size() == ru.size());
  for (std::size_t i = 1; i < rr.size(); ++i)
    CHECK(std::fabs(std::stod(rr[i][4]) - std::stod(ru[i][4])) <= 1e-10);
}
