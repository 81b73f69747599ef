// jspin: collective-spin distributions, moments and squeezing experiments
// for permutation-symmetric mixed ensembles.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "jspin/ensemble.hpp"
#include "jspin/oracle.hpp"
#include "jspin/serialization.hpp"
#include "jspin/squeezing.hpp"
#include "svg_plot.hpp"

using json = nlohmann::ordered_json;
using namespace jspin;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

// Full-precision, locale-independent number formatting (17 significant
// digits) for CSV output.
std::string fmt17(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      out += header[i];
      out += (i + 1 < header.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out += row[i];
        out += (i + 1 < row.size()) ? ',' : '\n';
      }
    }
    return out;
  }
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  f << content;
}

const std::vector<std::string> kPalette = {"#1f6fb4", "#d95f02", "#1b9e77",
                                           "#7570b3", "#e7298a", "#666666"};

json ellipse_json(const CovarianceEllipse& e) {
  return json{{"var_minor", e.var_minor}, {"var_major", e.var_major},
              {"angle_minor", e.angle_minor}};
}

json moments_json(const Moments& m) {
  return json{{"mean_z", m.mean_z}, {"var_x", m.var_x}, {"var_y", m.var_y},
              {"var_z", m.var_z}, {"j_squared", m.j_squared}};
}

// ---------------------------------------------------------------------------

struct DistOptions {
  int n = 0;
  std::vector<double> ps;
  std::string format = "csv";
  std::string out = "-";
};

int run_dist(const DistOptions& opt) {
  struct Trace {
    double p;
    bool valid = false;
    std::vector<double> j;      // ascending
    std::vector<double> exact;
    std::vector<double> approx;  // empty when p <= 1/2
  };
  std::vector<Trace> traces;
  for (double p : opt.ps) {
    Trace t;
    t.p = p;
    auto marg = marginal_j(reduced_halfspin(opt.n, p));
    for (auto it = marg.rbegin(); it != marg.rend(); ++it) {
      t.j.push_back(it->first.value());
      t.exact.push_back(it->second);
    }
    if (p > 0.5) {
      const auto approx = marginal_j_approx(opt.n, p);
      t.valid = approx.valid;
      for (auto it = approx.values.rbegin(); it != approx.values.rend(); ++it) {
        t.approx.push_back(it->second);
      }
    }
    traces.push_back(std::move(t));
  }

  if (opt.format == "csv") {
    CsvTable table;
    table.header = {"p", "j", "p_j_exact", "p_j_approx", "valid_flag"};
    for (const auto& t : traces) {
      for (std::size_t i = 0; i < t.j.size(); ++i) {
        table.rows.push_back({fmt17(t.p), fmt17(t.j[i]), fmt17(t.exact[i]),
                              t.approx.empty() ? "" : fmt17(t.approx[i]),
                              t.valid ? "1" : "0"});
      }
    }
    write_output(opt.out, table.render());
  } else if (opt.format == "json") {
    json root{{"command", "dist"}, {"n", opt.n}};
    json jt = json::array();
    for (const auto& t : traces) {
      json rows = json::array();
      for (std::size_t i = 0; i < t.j.size(); ++i) {
        json row{{"j", t.j[i]}, {"exact", t.exact[i]}};
        if (!t.approx.empty()) {
          row["approx"] = t.approx[i];
        } else {
          row["approx"] = nullptr;
        }
        rows.push_back(std::move(row));
      }
      jt.push_back(json{{"p", t.p}, {"valid", t.valid}, {"rows", std::move(rows)}});
    }
    root["traces"] = std::move(jt);
    write_output(opt.out, root.dump(2) + "\n");
  } else {  // svg
    tools::SvgCanvas canvas(840, 520);
    double ymax = 0.0;
    for (const auto& t : traces) {
      for (double v : t.exact) ymax = std::max(ymax, v);
    }
    canvas.set_view(0.0, 0.5 * opt.n, 0.0, 1.12 * ymax);
    canvas.set_labels("j", "p_j", "collective-spin distribution, n=" + std::to_string(opt.n));
    for (std::size_t k = 0; k < traces.size(); ++k) {
      const auto& t = traces[k];
      const std::string color = kPalette[k % kPalette.size()];
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 0; i < t.j.size(); ++i) pts.emplace_back(t.j[i], t.exact[i]);
      canvas.add_polyline(pts, {color, 1.8, ""});
      if (!t.approx.empty()) {
        pts.clear();
        for (std::size_t i = 0; i < t.j.size(); ++i) pts.emplace_back(t.j[i], t.approx[i]);
        canvas.add_polyline(pts, {color, 1.4, "5,4"});
      }
      // The exact curve ends at j0 with finite maximal-multiplet mass.
      canvas.add_marker(t.j.back(), t.exact.back(), 3.0, color);
      canvas.add_legend_entry("p=" + short_num(t.p), {color, 1.8, ""});
    }
    write_output(opt.out, canvas.render());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct MomentsOptions {
  int n = 0;
  std::vector<double> ps;
  std::string format = "csv";
  std::string out = "-";
};

int run_moments(const MomentsOptions& opt) {
  struct Row {
    double p;
    Moments closed;
    Moments from_state;
  };
  std::vector<Row> rows;
  for (double p : opt.ps) {
    Row r;
    r.p = p;
    r.closed = moments_closed_form(EnsembleSpec::half_spin(opt.n, p));
    r.from_state = moments_from_state(reduced_halfspin(opt.n, p));
    rows.push_back(r);
  }

  if (opt.format == "csv") {
    CsvTable table;
    table.header = {"n", "p", "mean_z", "var_x", "var_y", "var_z", "j_squared",
                    "uncertainty_ratio"};
    for (const auto& r : rows) {
      const double heis = 0.5 * std::abs(r.closed.mean_z);
      const double prod = std::sqrt(r.closed.var_x * r.closed.var_y);
      table.rows.push_back({std::to_string(opt.n), fmt17(r.p), fmt17(r.closed.mean_z),
                            fmt17(r.closed.var_x), fmt17(r.closed.var_y), fmt17(r.closed.var_z),
                            fmt17(r.closed.j_squared), heis > 0.0 ? fmt17(prod / heis) : ""});
    }
    write_output(opt.out, table.render());
  } else {
    json root{{"command", "moments"}, {"n", opt.n}};
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back(json{{"p", r.p},
                         {"closed_form", moments_json(r.closed)},
                         {"from_state", moments_json(r.from_state)}});
    }
    root["results"] = std::move(arr);
    write_output(opt.out, root.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct DickeOptions {
  int n = 0;
  std::vector<double> ps;
  std::string format = "csv";
  std::string out = "-";
};

int run_dicke(const DickeOptions& opt) {
  if (opt.format == "csv") {
    CsvTable table;
    table.header = {"n", "p", "population"};
    for (double p : opt.ps) {
      table.rows.push_back({std::to_string(opt.n), fmt17(p), fmt17(dicke_population(opt.n, p))});
    }
    write_output(opt.out, table.render());
  } else {
    json root{{"command", "dicke"}, {"n", opt.n}};
    json arr = json::array();
    for (double p : opt.ps) {
      arr.push_back(json{{"p", p}, {"population", dicke_population(opt.n, p)}});
    }
    root["results"] = std::move(arr);
    write_output(opt.out, root.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct OneAxisOptions {
  int n = 0;
  double p = 1.0;
  std::optional<double> mu;
  bool optimal = false;
  std::string format = "json";
  std::string out = "-";
};

int run_one_axis(const OneAxisOptions& opt) {
  const double j0 = 0.5 * opt.n;
  double mu = 0.0;
  std::string mu_source;
  if (opt.mu.has_value()) {
    mu = *opt.mu;
    mu_source = "explicit";
  } else {
    // Optimal for the center of the j-distribution, j_c = (2p-1) j0.
    const double jc = (2.0 * opt.p - 1.0) * j0;
    mu = optimal_mu_real(jc);
    mu_source = "optimal-at-j-center";
  }

  const auto evolved = one_axis_evolve(reduced_halfspin(opt.n, opt.p), mu);
  const auto solid = covariance_ellipse(evolved);
  const auto blocks = block_covariance_ellipses(evolved);
  const auto after = moments_from_state(evolved);

  const double mu_pure = optimal_mu(HalfInt::from_twice(opt.n));
  const auto pure = covariance_ellipse(one_axis_evolve(reduced_halfspin(opt.n, 1.0), mu_pure));

  if (opt.format == "json") {
    json root{{"command", "squeeze-one-axis"}, {"n", opt.n}, {"p", opt.p},
              {"mu", mu},       {"mu_source", mu_source}};
    root["solid"] = ellipse_json(solid);
    json jp = ellipse_json(pure);
    jp["mu"] = mu_pure;
    root["pure"] = std::move(jp);
    json jb = json::array();
    for (const auto& b : blocks) {
      jb.push_back(json{{"two_j", b.j.twice()},
                        {"mass", b.mass},
                        {"var_minor", b.ellipse.var_minor},
                        {"var_major", b.ellipse.var_major},
                        {"angle_minor", b.ellipse.angle_minor},
                        {"area", b.ellipse.var_minor * b.ellipse.var_major}});
    }
    root["blocks"] = std::move(jb);
    root["moments_after"] = moments_json(after);
    write_output(opt.out, root.dump(2) + "\n");
  } else if (opt.format == "csv") {
    CsvTable table;
    table.header = {"kind", "two_j", "mass", "var_minor", "var_major", "angle_minor"};
    table.rows.push_back(
        {"solid", "", "1", fmt17(solid.var_minor), fmt17(solid.var_major),
         fmt17(solid.angle_minor)});
    table.rows.push_back({"pure", std::to_string(opt.n), "1", fmt17(pure.var_minor),
                          fmt17(pure.var_major), fmt17(pure.angle_minor)});
    for (const auto& b : blocks) {
      table.rows.push_back({"block", std::to_string(b.j.twice()), fmt17(b.mass),
                            fmt17(b.ellipse.var_minor), fmt17(b.ellipse.var_major),
                            fmt17(b.ellipse.angle_minor)});
    }
    write_output(opt.out, table.render());
  } else {  // svg: solid, per-j dashed and pure dotted ellipses
    tools::SvgCanvas canvas(620, 620);
    const double r = 1.15 * std::sqrt(solid.var_major);
    canvas.set_view(-r, r, -r, r, /*equal_aspect=*/true);
    canvas.set_labels("J_x", "J_y",
                      "transverse spin distribution, n=" + std::to_string(opt.n));
    for (const auto& b : blocks) {
      if (b.mass < 1e-9) continue;
      canvas.add_ellipse(0, 0, std::sqrt(b.ellipse.var_major), std::sqrt(b.ellipse.var_minor),
                         b.ellipse.angle_minor + 0.5 * std::numbers::pi, {"#999999", 1.0, "5,4"});
    }
    canvas.add_ellipse(0, 0, std::sqrt(pure.var_major), std::sqrt(pure.var_minor),
                       pure.angle_minor + 0.5 * std::numbers::pi, {"#d95f02", 1.4, "2,3"});
    canvas.add_ellipse(0, 0, std::sqrt(solid.var_major), std::sqrt(solid.var_minor),
                       solid.angle_minor + 0.5 * std::numbers::pi, {"#1f6fb4", 2.0, ""});
    canvas.add_legend_entry("mixed (summed)", {"#1f6fb4", 2.0, ""});
    canvas.add_legend_entry("pure optimal", {"#d95f02", 1.4, "2,3"});
    canvas.add_legend_entry("per-j blocks", {"#999999", 1.0, "5,4"});
    write_output(opt.out, canvas.render());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TwoAxisOptions {
  int n = 0;
  double p = 1.0;
  double lambda = 0.0;
  std::string format = "json";
  std::string out = "-";
};

int run_two_axis(const TwoAxisOptions& opt) {
  const auto state = reduced_halfspin(opt.n, opt.p);
  const double hp = countertwist_hp_variance(state, opt.lambda);
  const auto metrics = ramsey_xi(opt.n, opt.p, opt.lambda);
  std::optional<double> closed;
  if (opt.p > 0.5) {
    closed = countertwist_closed_form(opt.n, opt.p, opt.lambda);
  }
  const double first = countertwist_first_order(opt.n, opt.p, opt.lambda);

  const auto evolved = countertwist_exact_evolve(state, opt.lambda);
  const auto exact = moments_from_state(evolved);
  const auto ellipse = covariance_ellipse(evolved);

  if (opt.format == "json") {
    json root{{"command", "squeeze-two-axis"},
              {"n", opt.n},
              {"p", opt.p},
              {"lambda", opt.lambda},
              {"s0", metrics.s0},
              {"hp_variance", hp},
              {"closed_form", closed.has_value() ? json(*closed) : json(nullptr)},
              {"first_order", first},
              {"xi_r", metrics.xi_r},
              {"xi_r_first_order", metrics.xi_r_first_order}};
    json je = moments_json(exact);
    je["var_minor"] = ellipse.var_minor;
    je["var_major"] = ellipse.var_major;
    je["angle_minor"] = ellipse.angle_minor;
    root["exact"] = std::move(je);
    write_output(opt.out, root.dump(2) + "\n");
  } else if (opt.format == "csv") {
    CsvTable table;
    table.header = {"n", "p", "lambda", "s0",
                    "hp_variance", "closed_form", "first_order", "xi_r",
                    "xi_r_first_order", "exact_var_y", "exact_mean_z", "exact_angle_minor"};
    table.rows.push_back({std::to_string(opt.n), fmt17(opt.p), fmt17(opt.lambda),
                          fmt17(metrics.s0), fmt17(hp),
                          closed.has_value() ? fmt17(*closed) : "", fmt17(first),
                          fmt17(metrics.xi_r), fmt17(metrics.xi_r_first_order),
                          fmt17(exact.var_y), fmt17(exact.mean_z),
                          fmt17(ellipse.angle_minor)});
    write_output(opt.out, table.render());
  } else {
    tools::SvgCanvas canvas(620, 620);
    const double r = 1.15 * std::sqrt(ellipse.var_major);
    canvas.set_view(-r, r, -r, r, /*equal_aspect=*/true);
    canvas.set_labels("J_x", "J_y",
                      "countertwist transverse distribution, n=" + std::to_string(opt.n));
    const double j0 = 0.5 * opt.n;
    canvas.add_ellipse(0, 0, std::sqrt(0.5 * j0), std::sqrt(0.5 * j0), 0.0,
                       {"#999999", 1.2, "2,3"});
    canvas.add_ellipse(0, 0, std::sqrt(ellipse.var_major), std::sqrt(ellipse.var_minor),
                       ellipse.angle_minor + 0.5 * std::numbers::pi, {"#1f6fb4", 2.0, ""});
    canvas.add_legend_entry("squeezed", {"#1f6fb4", 2.0, ""});
    canvas.add_legend_entry("unsqueezed", {"#999999", 1.2, "2,3"});
    write_output(opt.out, canvas.render());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct StateOptions {
  int n = 0;
  std::string s = "1/2";
  std::vector<double> probs;
  double beta = 0.0;
  std::string format = "json";
  std::string out = "-";
};

int run_multilevel(const StateOptions& opt) {
  EnsembleSpec spec{opt.n, parse_half_int(opt.s), opt.probs};
  const auto state = reduced_general(spec);
  if (opt.format == "json") {
    write_output(opt.out, to_json_string(state) + "\n");
  } else {
    CsvTable table;
    table.header = {"kind", "two_j", "two_j_lower", "two_m", "value"};
    for (const auto& b : state.blocks) {
      for (int i = 0; i < b.dim(); ++i) {
        table.rows.push_back({"population", std::to_string(b.j.twice()), "",
                              std::to_string(b.j.twice() - 2 * i), fmt17(b.populations[i])});
      }
    }
    for (const auto& band : state.bands) {
      for (int i = 0; i < band.values.size(); ++i) {
        table.rows.push_back({"coherence", std::to_string(band.j_upper.twice()),
                              std::to_string(band.j_lower.twice()),
                              std::to_string(band.j_lower.twice() - 2 * i),
                              fmt17(band.values[i])});
      }
    }
    write_output(opt.out, table.render());
  }
  return kExitOk;
}

int run_thermal(const StateOptions& opt) {
  const auto state = thermal_reduced(opt.n, parse_half_int(opt.s), opt.beta);
  if (opt.format == "json") {
    write_output(opt.out, to_json_string(state) + "\n");
  } else {
    CsvTable table;
    table.header = {"two_j", "two_m", "population"};
    for (const auto& b : state.blocks) {
      for (int i = 0; i < b.dim(); ++i) {
        table.rows.push_back({std::to_string(b.j.twice()),
                              std::to_string(b.j.twice() - 2 * i), fmt17(b.populations[i])});
      }
    }
    write_output(opt.out, table.render());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  int n = 0;
  std::string s = "1/2";
  std::optional<double> p;
  std::vector<double> probs;
  SqueezeParams twist{0.3, 0.1};  // strengths for the evolution cross-checks
  std::optional<double> beta;
  std::string out = "-";
};

int run_verify(const VerifyOptions& opt) {
  const HalfInt s = parse_half_int(opt.s);
  std::vector<double> probs = opt.probs;
  if (probs.empty()) {
    if (s == HalfInt::half()) {
      probs = {opt.p.value_or(0.8), 1.0 - opt.p.value_or(0.8)};
    } else {
      throw std::invalid_argument("verify: --prob values required for s > 1/2");
    }
  }
  const EnsembleSpec spec{opt.n, s, probs};
  spec.validate();

  json checks = json::array();
  bool all_pass = true;
  auto record = [&](const std::string& name, double value, double tol) {
    const bool pass = value <= tol;
    all_pass = all_pass && pass;
    checks.push_back(json{{"name", name}, {"max_error", value}, {"tolerance", tol},
                          {"pass", pass}});
  };

  const auto chain = build_coupled_basis(opt.n, s);
  const Eigen::MatrixXd gram = chain.basis.transpose() * chain.basis;
  record("coupled-basis-unitarity",
         (gram - Eigen::MatrixXd::Identity(chain.dim(), chain.dim())).cwiseAbs().maxCoeff(),
         1e-12);

  const auto brute = brute_force_reduced(spec);
  record("recursion-vs-brute-force", max_abs_difference(reduced_general(spec), brute), 1e-12);
  if (s == HalfInt::half()) {
    record("closed-form-vs-brute-force",
           max_abs_difference(reduced_halfspin(opt.n, probs[0]), brute), 1e-12);

    const auto block_state = reduced_halfspin(opt.n, probs[0]);
    auto moment_gap = [](const Moments& a, const Moments& b) {
      double worst = std::abs(a.mean_z - b.mean_z);
      worst = std::max(worst, std::abs(a.var_x - b.var_x));
      worst = std::max(worst, std::abs(a.var_y - b.var_y));
      worst = std::max(worst, std::abs(a.var_z - b.var_z));
      return std::max(worst, std::abs(a.j_squared - b.j_squared));
    };
    record("one-axis-moments",
           moment_gap(moments_from_state(one_axis_evolve(block_state, opt.twist.mu)),
                      brute_force_evolve(spec, TwistKind::one_axis, opt.twist.mu)),
           1e-9);
    record("two-axis-moments",
           moment_gap(
               moments_from_state(countertwist_exact_evolve(block_state, opt.twist.lambda)),
               brute_force_evolve(spec, TwistKind::two_axis, opt.twist.lambda)),
           1e-9);
  }
  if (opt.beta.has_value()) {
    double z = 0.0;
    for (int i = 0; i < multiplicity(s); ++i) {
      z += std::exp(-(*opt.beta) * 0.5 * (s.twice() - 2 * i));
    }
    std::vector<double> thermal_probs;
    for (int i = 0; i < multiplicity(s); ++i) {
      thermal_probs.push_back(std::exp(-(*opt.beta) * 0.5 * (s.twice() - 2 * i)) / z);
    }
    record("thermal-vs-brute-force",
           max_abs_difference(thermal_reduced(opt.n, s, *opt.beta),
                              brute_force_reduced(EnsembleSpec{opt.n, s, thermal_probs})),
           1e-12);
  }

  json root{{"command", "verify"}, {"n", opt.n}, {"two_s", s.twice()}, {"probs", probs},
            {"checks", std::move(checks)}, {"all_pass", all_pass}};
  write_output(opt.out, root.dump(2) + "\n");
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collective-spin ensembles: distributions, moments and squeezing"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a key=value file");

  DistOptions dist;
  auto* cmd_dist = app.add_subcommand("dist", "marginal j-distribution, exact and approximate");
  cmd_dist->add_option("--n", dist.n, "particle count")->required()->check(CLI::PositiveNumber);
  cmd_dist->add_option("--p", dist.ps, "polarization (repeatable)")->required();
  cmd_dist->add_option("--format", dist.format)->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd_dist->add_option("--out", dist.out, "output path, - for stdout");

  MomentsOptions moments;
  auto* cmd_moments = app.add_subcommand("moments", "collective-spin moments");
  cmd_moments->add_option("--n", moments.n)->required()->check(CLI::PositiveNumber);
  cmd_moments->add_option("--p", moments.ps)->required();
  cmd_moments->add_option("--format", moments.format)->check(CLI::IsMember({"csv", "json"}));
  cmd_moments->add_option("--out", moments.out);

  DickeOptions dicke;
  auto* cmd_dicke = app.add_subcommand("dicke", "population of the maximal multiplet");
  cmd_dicke->add_option("--n", dicke.n)->required()->check(CLI::PositiveNumber);
  cmd_dicke->add_option("--p", dicke.ps)->required();
  cmd_dicke->add_option("--format", dicke.format)->check(CLI::IsMember({"csv", "json"}));
  cmd_dicke->add_option("--out", dicke.out);

  OneAxisOptions one_axis;
  auto* cmd_one = app.add_subcommand("squeeze-one-axis", "one-axis twist covariance ellipses");
  cmd_one->add_option("--n", one_axis.n)->required()->check(CLI::PositiveNumber);
  cmd_one->add_option("--p", one_axis.p)->required();
  auto* mu_opt = cmd_one->add_option("--mu", one_axis.mu, "twist strength mu = 2 chi t")
                     ->check(CLI::NonNegativeNumber);
  cmd_one->add_flag("--optimal-mu", one_axis.optimal, "use the optimal mu for j_c")
      ->excludes(mu_opt);
  cmd_one->add_option("--format", one_axis.format)
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd_one->add_option("--out", one_axis.out);

  TwoAxisOptions two_axis;
  auto* cmd_two = app.add_subcommand("squeeze-two-axis", "two-axis countertwist metrics");
  cmd_two->add_option("--n", two_axis.n)->required()->check(CLI::PositiveNumber);
  cmd_two->add_option("--p", two_axis.p)->required();
  cmd_two->add_option("--lambda", two_axis.lambda, "countertwist strength lambda = 4 chi t")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd_two->add_option("--format", two_axis.format)
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd_two->add_option("--out", two_axis.out);

  StateOptions multilevel;
  auto* cmd_multi = app.add_subcommand("multilevel", "reduced state for spin-s ensembles");
  cmd_multi->add_option("--n", multilevel.n)->required()->check(CLI::PositiveNumber);
  cmd_multi->add_option("--s", multilevel.s, "single-particle spin, e.g. 1/2, 1, 3/2")
      ->required();
  cmd_multi->add_option("--prob", multilevel.probs, "p_{m_s}, m_s descending (repeatable)")
      ->required();
  cmd_multi->add_option("--format", multilevel.format)->check(CLI::IsMember({"csv", "json"}));
  cmd_multi->add_option("--out", multilevel.out);

  StateOptions thermal;
  auto* cmd_thermal = app.add_subcommand("thermal", "thermal reduced state");
  cmd_thermal->add_option("--n", thermal.n)->required()->check(CLI::PositiveNumber);
  cmd_thermal->add_option("--s", thermal.s)->required();
  cmd_thermal->add_option("--beta", thermal.beta, "inverse-temperature parameter")->required();
  cmd_thermal->add_option("--format", thermal.format)->check(CLI::IsMember({"csv", "json"}));
  cmd_thermal->add_option("--out", thermal.out);

  VerifyOptions verify;
  auto* cmd_verify = app.add_subcommand("verify", "brute-force oracle cross-checks");
  cmd_verify->add_option("--n", verify.n)->required()->check(CLI::PositiveNumber);
  cmd_verify->add_option("--s", verify.s);
  cmd_verify->add_option("--p", verify.p, "polarization (spin 1/2)");
  cmd_verify->add_option("--prob", verify.probs, "p_{m_s} list for s > 1/2");
  cmd_verify->add_option("--mu", verify.twist.mu)->check(CLI::NonNegativeNumber);
  cmd_verify->add_option("--lambda", verify.twist.lambda)->check(CLI::NonNegativeNumber);
  cmd_verify->add_option("--beta", verify.beta);
  cmd_verify->add_option("--out", verify.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_dist->parsed()) return run_dist(dist);
    if (cmd_moments->parsed()) return run_moments(moments);
    if (cmd_dicke->parsed()) return run_dicke(dicke);
    if (cmd_one->parsed()) return run_one_axis(one_axis);
    if (cmd_two->parsed()) return run_two_axis(two_axis);
    if (cmd_multi->parsed()) return run_multilevel(multilevel);
    if (cmd_thermal->parsed()) return run_thermal(thermal);
    if (cmd_verify->parsed()) return run_verify(verify);
  } catch (const ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
