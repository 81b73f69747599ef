// End-to-end tests of the command line tool: output schemas, round-trips,
// determinism and exit codes. Numeric assertions parse CSV/JSON, never SVG.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "jspin/combinatorics.hpp"
#include "jspin/ensemble.hpp"
#include "jspin/serialization.hpp"
#include "jspin/squeezing.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

struct CliResultWithErr {
  int exit_code = -1;
  std::string output;
  std::string error;
};

CliResultWithErr run_cli_capture(const std::string& args) {
  static int counter = 0;
  const std::string base =
      std::string(JSPIN_TEST_TMPDIR) + "/cli_out_" + std::to_string(counter++);
  const std::string cmd =
      std::string(JSPIN_CLI_PATH) + " " + args + " > " + base + ".out 2> " + base + ".err";
  const int status = std::system(cmd.c_str());
  CliResultWithErr result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  for (const char* ext : {".out", ".err"}) {
    std::ifstream f(base + ext, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    (ext[1] == 'o' ? result.output : result.error) = ss.str();
    std::remove((base + ext).c_str());
  }
  return result;
}

CliResult run_cli(const std::string& args) {
  auto full = run_cli_capture(args);
  return CliResult{full.exit_code, std::move(full.output)};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) {
      fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_CASE("dist CSV round-trips the in-memory marginal") {
  const auto res = run_cli("dist --n 20 --p 0.8");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.output);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == std::vector<std::string>{"p", "j", "p_j_exact", "p_j_approx", "valid_flag"});

  const auto marg = jspin::marginal_j(jspin::reduced_halfspin(20, 0.8));
  const auto approx = jspin::marginal_j_approx(20, 0.8);
  REQUIRE(rows.size() == marg.size() + 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double j = std::stod(rows[i][1]);
    const double exact = std::stod(rows[i][2]);
    const double appr = std::stod(rows[i][3]);
    // CSV is emitted j-ascending; the library lists j descending.
    const auto& ref = marg[marg.size() - i];
    CHECK(j == ref.first.value());
    CHECK(std::abs(exact - ref.second) < 1e-12);
    CHECK(std::abs(appr - approx.values[marg.size() - i].second) < 1e-12);
  }
}

TEST_CASE("identical invocations give byte-identical output") {
  const std::string cmds[] = {
      "dist --n 50 --p 0.9 --p 0.75",
      "moments --n 30 --p 0.8 --format json",
      "squeeze-one-axis --n 15 --p 0.9 --optimal-mu --format json",
  };
  for (const auto& c : cmds) {
    const auto a = run_cli(c);
    const auto b = run_cli(c);
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(!a.output.empty());
  }
}

TEST_CASE("dist with a single particle is one full point") {
  const auto res = run_cli("dist --n 1 --p 0.7");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.output);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][1]) == 0.5);
  CHECK(std::stod(rows[1][2]) == 1.0);
}

TEST_CASE("dist handles p below 1/2 without an approximation column") {
  const auto res = run_cli("dist --n 10 --p 0.4");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.output);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][3].empty());
    CHECK(rows[i][4] == "0");
  }
}

TEST_CASE("dicke value matches the library") {
  const auto res = run_cli("dicke --n 200 --p 0.99");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.output);
  REQUIRE(rows.size() == 2);
  CHECK(std::abs(std::stod(rows[1][2]) - jspin::dicke_population(200, 0.99)) == 0.0);
}

TEST_CASE("moments JSON carries both computation routes") {
  const auto res = run_cli("moments --n 12 --p 0.75 --format json");
  REQUIRE(res.exit_code == 0);
  const auto root = nlohmann::json::parse(res.output);
  const auto& r = root["results"][0];
  const auto ref = jspin::moments_closed_form(jspin::EnsembleSpec::half_spin(12, 0.75));
  CHECK(r["closed_form"]["var_z"].get<double>() == doctest::Approx(ref.var_z));
  CHECK(r["from_state"]["var_z"].get<double>() == doctest::Approx(ref.var_z).epsilon(1e-9));
  CHECK(r["closed_form"]["j_squared"].get<double>() == doctest::Approx(ref.j_squared));
}

TEST_CASE("one-axis squeeze report") {
  const auto res = run_cli("squeeze-one-axis --n 15 --p 0.9 --optimal-mu --format json");
  REQUIRE(res.exit_code == 0);
  const auto root = nlohmann::json::parse(res.output);
  const double solid_minor = root["solid"]["var_minor"].get<double>();
  const double pure_minor = root["pure"]["var_minor"].get<double>();
  CHECK(pure_minor < solid_minor);
  CHECK(solid_minor < 3.75);

  // The largest-area dashed ellipse is j = j0 - 1 = 13/2.
  double best_area = -1.0;
  int best_two_j = 0;
  for (const auto& b : root["blocks"]) {
    if (b["area"].get<double>() > best_area) {
      best_area = b["area"].get<double>();
      best_two_j = b["two_j"].get<int>();
    }
  }
  CHECK(best_two_j == 13);
}

TEST_CASE("one-axis squeeze on a pure sample: solid equals dotted") {
  const auto res = run_cli("squeeze-one-axis --n 15 --p 1 --optimal-mu --format json");
  REQUIRE(res.exit_code == 0);
  const auto root = nlohmann::json::parse(res.output);
  CHECK(std::abs(root["solid"]["var_minor"].get<double>() -
                 root["pure"]["var_minor"].get<double>()) < 1e-8);
  CHECK(std::abs(root["solid"]["var_major"].get<double>() -
                 root["pure"]["var_major"].get<double>()) < 1e-8);
}

TEST_CASE("two-axis squeeze report") {
  const auto res = run_cli("squeeze-two-axis --n 40 --p 1 --lambda 0.02 --format json");
  REQUIRE(res.exit_code == 0);
  const auto root = nlohmann::json::parse(res.output);
  const double hp = root["hp_variance"].get<double>();
  const double exact = root["exact"]["var_y"].get<double>();
  CHECK(std::abs(hp - exact) / exact < 0.05);
  CHECK(root["exact"]["angle_minor"].get<double>() == doctest::Approx(1.5707963).epsilon(1e-6));
  CHECK(root["s0"].get<double>() == doctest::Approx(std::exp(0.02 * 10.0)));
}

TEST_CASE("multilevel JSON is the documented state serialization") {
  const auto res = run_cli("multilevel --n 2 --s 1 --prob 0 --prob 1 --prob 0");
  REQUIRE(res.exit_code == 0);
  const auto state = jspin::block_state_from_json(res.output);
  const auto expected =
      jspin::reduced_general(jspin::EnsembleSpec{2, jspin::HalfInt(1), {0.0, 1.0, 0.0}});
  CHECK(jspin::max_abs_difference(state, expected) == 0.0);
  CHECK(state.band(jspin::HalfInt(2), jspin::HalfInt(0)) != nullptr);
}

TEST_CASE("thermal CSV enumerates every (j, m) level") {
  const auto res = run_cli("thermal --n 4 --s 1 --beta 0.5 --format csv");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.output);
  std::size_t levels = 0;
  for (jspin::HalfInt j : jspin::j_grid(4, jspin::HalfInt(1))) {
    levels += jspin::multiplicity(j);
  }
  CHECK(rows.size() == levels + 1);
  double total = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) total += std::stod(rows[i][2]);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("verify passes on oracle-sized problems") {
  const auto res = run_cli("verify --n 6 --p 0.8");
  REQUIRE(res.exit_code == 0);
  const auto root = nlohmann::json::parse(res.output);
  CHECK(root["all_pass"].get<bool>());
  bool found_one_axis = false;
  for (const auto& c : root["checks"]) {
    CHECK(c["pass"].get<bool>());
    if (c["name"] == "one-axis-moments") found_one_axis = true;
  }
  CHECK(found_one_axis);
}

TEST_CASE("verify covers the spin-1 coherence case") {
  const auto res = run_cli("verify --n 2 --s 1 --prob 0 --prob 1 --prob 0 --beta 0.5");
  REQUIRE(res.exit_code == 0);
  const auto root = nlohmann::json::parse(res.output);
  CHECK(root["all_pass"].get<bool>());
}

TEST_CASE("exit codes: invalid arguments and resource guard") {
  const auto bad_p = run_cli_capture("dist --n 20 --p 1.5");  // domain error
  CHECK(bad_p.exit_code == 2);
  CHECK(!bad_p.error.empty());
  CHECK(run_cli("dist --p 0.5").exit_code == 2);                 // missing --n
  CHECK(run_cli("dist --n 20 --p 0.5 --format bmp").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("thermal --n 4 --s abc --beta 1").exit_code == 2);
  CHECK(run_cli("multilevel --n 2 --s 1 --prob 0.9 --prob 0.2").exit_code == 2);
  const auto guarded = run_cli_capture("verify --n 20");  // 2^20 product space
  CHECK(guarded.exit_code == 3);
  CHECK(!guarded.error.empty());
  CHECK(run_cli("verify --n 13 --s 1 --prob 0.5 --prob 0.3 --prob 0.2").exit_code == 3);
}

TEST_CASE("SVG output is a well-formed standalone image") {
  for (const std::string cmd :
       {std::string("dist --n 200 --p 0.535 --p 0.65 --p 0.75 --p 0.85 --p 0.95 --p 0.99 "
                    "--format svg"),
        std::string("squeeze-one-axis --n 15 --p 0.9 --optimal-mu --format svg")}) {
    const auto res = run_cli(cmd);
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.rfind("<?xml", 0) == 0);
    CHECK(res.output.find("viewBox=") != std::string::npos);
    CHECK(res.output.find("</svg>") != std::string::npos);
    const bool has_shapes = res.output.find("<ellipse") != std::string::npos ||
                            res.output.find("<polyline") != std::string::npos;
    CHECK(has_shapes);
  }
}

TEST_CASE("config file supplies defaults, flags override") {
  const std::string cfg_path = std::string(JSPIN_TEST_TMPDIR) + "/dist.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "[dist]\n"
        << "n=10\n"
        << "p=0.9\n";
  }
  const auto from_cfg = run_cli("--config " + cfg_path + " dist");
  REQUIRE(from_cfg.exit_code == 0);
  const auto direct = run_cli("dist --n 10 --p 0.9");
  CHECK(from_cfg.output == direct.output);

  const auto overridden = run_cli("--config " + cfg_path + " dist --n 12");
  const auto direct12 = run_cli("dist --n 12 --p 0.9");
  CHECK(overridden.output == direct12.output);
  std::remove(cfg_path.c_str());
}

TEST_CASE("output lands in the requested file") {
  const std::string out_path = std::string(JSPIN_TEST_TMPDIR) + "/dist_out.csv";
  const auto res = run_cli("dist --n 8 --p 0.7 --out " + out_path);
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.empty());
  std::ifstream f(out_path);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "p,j,p_j_exact,p_j_approx,valid_flag");
  std::remove(out_path.c_str());
}
