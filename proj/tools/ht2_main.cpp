// Command-line front end: emits the analytic power curves, iso-power
// ellipse data, Monte Carlo reproductions, and runs the two-sample test on
// CSV data files. All output is CSV or JSON plot data; rendering is left to
// whatever tool consumes it.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ht2/ellipse.hpp"
#include "ht2/equicorr.hpp"
#include "ht2/errors.hpp"
#include "ht2/hotelling.hpp"
#include "ht2/simulate.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 20100315;

constexpr int kExitUsage = 2;
constexpr int kExitSimFailure = 3;
constexpr int kExitDegenerate = 4;

using Value = std::variant<long long, double, std::string>;

struct Record {
  std::vector<std::pair<std::string, Value>> fields;

  void add(const std::string& name, long long v) { fields.emplace_back(name, v); }
  void add(const std::string& name, int v) { fields.emplace_back(name, static_cast<long long>(v)); }
  void add(const std::string& name, double v) { fields.emplace_back(name, v); }
  void add(const std::string& name, const std::string& v) { fields.emplace_back(name, v); }
};

// 17 significant digits: parses back to the identical double.
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string value_to_csv(const Value& v) {
  if (std::holds_alternative<long long>(v)) return std::to_string(std::get<long long>(v));
  if (std::holds_alternative<double>(v)) return format_double(std::get<double>(v));
  return std::get<std::string>(v);
}

std::vector<std::string> header_union(const std::vector<Record>& records) {
  std::vector<std::string> names;
  for (const Record& r : records)
    for (const auto& [name, value] : r.fields)
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  return names;
}

void write_csv(std::ostream& os, const std::vector<Record>& records) {
  const std::vector<std::string> names = header_union(records);
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << "\n";
  for (const Record& r : records) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) os << ",";
      for (const auto& [name, value] : r.fields)
        if (name == names[i]) {
          os << value_to_csv(value);
          break;
        }
    }
    os << "\n";
  }
}

void write_json(std::ostream& os, const std::vector<Record>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Record& r : records) {
    nlohmann::ordered_json obj;
    for (const auto& [name, value] : r.fields) {
      if (std::holds_alternative<long long>(value))
        obj[name] = std::get<long long>(value);
      else if (std::holds_alternative<double>(value))
        obj[name] = std::get<double>(value);
      else
        obj[name] = std::get<std::string>(value);
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << "\n";
}

void emit(const std::vector<Record>& records, const std::string& format, const std::string& out_path) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw ht2::InvalidInput("cannot open output file: " + out_path);
    os = &file;
  }
  if (format == "csv")
    write_csv(*os, records);
  else
    write_json(*os, records);
}

// Headerless numeric CSV: one observation per row, comma separator.
ht2::SampleSet load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ht2::InvalidInput(path + ": cannot open file");

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<double> row;
    std::size_t pos = 0;
    int col = 0;
    while (pos <= line.size()) {
      const std::size_t comma = line.find(',', pos);
      const std::string tok = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      ++col;
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size())
        throw ht2::InvalidInput(path + ": row " + std::to_string(line_no) + ", column " + std::to_string(col) +
                                ": cannot parse '" + tok + "' as a number");
      if (!std::isfinite(v))
        throw ht2::InvalidInput(path + ": row " + std::to_string(line_no) + ", column " + std::to_string(col) +
                                ": non-finite value");
      row.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ht2::InvalidInput(path + ": row " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                              " columns, expected " + std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw ht2::InvalidInput(path + ": need at least 2 observation rows");
  return ht2::SampleSet::from_rows(rows);
}

int run_analytic_curve(const std::vector<int>& n_list, const std::vector<double>& rho_list, double shift,
                       const std::string& format, const std::string& out_path) {
  std::vector<Record> records;
  for (int n : n_list) {
    for (double rho : rho_list) {
      const ht2::EquicorrModel model(n, rho);
      for (int m = 1; m <= n; ++m) {
        Record r;
        r.add("n", n);
        r.add("rho", rho);
        r.add("m", m);
        r.add("t_star_squared", ht2::t_star_squared(model, {m, shift}));
        records.push_back(std::move(r));
      }
    }
  }
  emit(records, format, out_path);
  return 0;
}

int run_ellipse(const std::vector<double>& rho_list, int count, const std::string& format,
                const std::string& out_path) {
  std::vector<Record> records;
  for (double rho : rho_list) {
    const auto pts = ht2::ellipse_points(rho, count);
    for (int k = 0; k < count; ++k) {
      Record r;
      r.add("kind", std::string("point"));
      r.add("rho", rho);
      r.add("t", 2.0 * std::numbers::pi * k / count);
      r.add("a1", pts[k].a1);
      r.add("a2", pts[k].a2);
      r.add("residual", ht2::iso_power_residual(rho, pts[k]));
      records.push_back(std::move(r));
    }
    const auto [major, minor] = ht2::principal_radii(rho);
    Record s;
    s.add("kind", std::string("axes"));
    s.add("rho", rho);
    s.add("major_radius", major);
    s.add("minor_radius", minor);
    records.push_back(std::move(s));
  }
  emit(records, format, out_path);
  return 0;
}

int run_simulate_curve(const std::vector<int>& n_list, const std::vector<double>& rho_list,
                       const std::vector<double>& factor_list, int reps, std::uint64_t seed,
                       const std::string& format, const std::string& out_path) {
  std::vector<Record> records;
  for (int n : n_list) {
    for (double rho : rho_list) {
      for (double factor : factor_list) {
        const auto curve = ht2::figure3_curve(n, rho, factor, reps, seed);
        for (const ht2::CurvePoint& p : curve) {
          Record r;
          r.add("n", n);
          r.add("rho", rho);
          r.add("ns_factor", factor);
          r.add("m", p.m);
          r.add("mean_t2_over_k", p.mean_t2_over_k);
          r.add("variance_of_mean", p.variance_of_mean);
          r.add("t_star_squared", p.t_star_squared);
          r.add("expected_t2_over_k", p.expected);
          records.push_back(std::move(r));
        }
      }
    }
  }
  emit(records, format, out_path);
  return 0;
}

int run_table1(const std::vector<double>& rho_list, const std::vector<int>& ns_list, int reps, std::uint64_t seed,
               const std::string& format, const std::string& out_path) {
  const ht2::Table1Result result = ht2::table1(rho_list, ns_list, reps, seed);
  std::vector<Record> records;
  for (const ht2::Table1Cell& c : result.cells) {
    Record r;
    r.add("kind", std::string("cell"));
    r.add("rho", c.rho);
    r.add("a1", c.shift.a1);
    r.add("a2", c.shift.a2);
    r.add("ns", c.ns);
    r.add("mean_t2_over_k", c.mean_t2_over_k);
    r.add("variance_of_mean", c.variance_of_mean);
    r.add("expected_t2_over_k", c.expected);
    records.push_back(std::move(r));
  }
  for (const ht2::Table1Column& c : result.columns) {
    Record r;
    r.add("kind", std::string("column_var"));
    r.add("rho", c.rho);
    r.add("ns", c.ns);
    r.add("var_of_estimate", c.var_of_estimate);
    r.add("row_scatter", c.row_scatter);
    records.push_back(std::move(r));
  }
  emit(records, format, out_path);
  return 0;
}

int run_test(const std::string& x_path, const std::string& y_path, std::optional<int> perm_reps, std::uint64_t seed,
             const std::string& format, const std::string& out_path) {
  const ht2::SampleSet x = load_matrix(x_path);
  const ht2::SampleSet y = load_matrix(y_path);
  if (x.n_vars() != y.n_vars())
    throw ht2::DimensionMismatch(x_path + " has " + std::to_string(x.n_vars()) + " columns, " + y_path + " has " +
                                 std::to_string(y.n_vars()));

  const int n = x.n_vars();
  const bool degenerate = n >= x.n_obs() + y.n_obs() - 1;

  ht2::HotellingResult res;
  if (perm_reps.has_value()) {
    res = ht2::permutation_test(x, y, *perm_reps, seed);
  } else if (degenerate) {
    std::cerr << "n = " << n << " >= n_x + n_y - 1 = " << x.n_obs() + y.n_obs() - 1
              << ": the pooled covariance is singular; rerun with --permutation-reps\n";
    return kExitDegenerate;
  } else {
    res = ht2::hotelling_t2(x, y);
  }

  Record r;
  r.add("t2", res.t2);
  r.add("k", res.k);
  if (res.method == ht2::Method::exact_f || res.df2 > 0) r.add("f_stat", res.f_stat);
  r.add("df1", res.df1);
  r.add("df2", res.df2);
  r.add("p_value", res.p_value);
  r.add("method", std::string(res.method == ht2::Method::exact_f ? "exact_f" : "permutation"));
  r.add("n", n);
  r.add("n_x", x.n_obs());
  r.add("n_y", y.n_obs());
  emit({r}, format, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sample Hotelling T2 testing and equicorrelated power analysis"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_path;
  const auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", out_path, "Output file (default: stdout)");
  };

  // analytic-curve
  std::vector<int> ac_n{10, 15, 25, 40};
  std::vector<double> ac_rho{0.1, 0.3, 0.5, 0.7, 0.9};
  double ac_shift = 1.0;
  CLI::App* ac = app.add_subcommand("analytic-curve", "Population statistic over m for (n, rho) grids");
  ac->add_option("--n", ac_n, "Dimensions")->capture_default_str();
  ac->add_option("--rho", ac_rho, "Correlations in [0,1)")->capture_default_str();
  ac->add_option("--a", ac_shift, "Shift magnitude per coordinate")->capture_default_str();
  add_io(ac);

  // ellipse
  std::vector<double> el_rho{0.25, 0.3, 0.5, 0.9};
  int el_count = 360;
  CLI::App* el = app.add_subcommand("ellipse", "Equal-power shift ellipses in two dimensions");
  el->add_option("--rho", el_rho, "Correlations in [0,1)")->capture_default_str();
  el->add_option("--count", el_count, "Points per ellipse (>= 4)")->capture_default_str();
  add_io(el);

  // simulate-curve
  std::vector<int> sc_n{10, 15, 25};
  std::vector<double> sc_rho{0.1, 0.5, 0.9};
  std::vector<double> sc_factor{1.0, 1.4, 2.4};
  int sc_reps = 1000;
  std::uint64_t sc_seed = kDefaultSeed;
  CLI::App* sc = app.add_subcommand("simulate-curve", "Monte Carlo m-curves against the analytic statistic");
  sc->add_option("--n", sc_n, "Dimensions")->capture_default_str();
  sc->add_option("--rho", sc_rho, "Correlations in [0,1)")->capture_default_str();
  sc->add_option("--ns-factor", sc_factor, "Per-group size as a multiple of n")->capture_default_str();
  sc->add_option("--reps", sc_reps, "Replications per point")->capture_default_str();
  sc->add_option("--seed", sc_seed, "RNG seed")->capture_default_str();
  add_io(sc);

  // table1
  std::vector<double> t1_rho{0.3, 0.9};
  std::vector<int> t1_ns{5, 10, 20};
  int t1_reps = 1000;
  std::uint64_t t1_seed = kDefaultSeed;
  CLI::App* t1 = app.add_subcommand("table1", "Equal-power shift simulation table (two dimensions)");
  t1->add_option("--rho", t1_rho, "Correlations in [0,1)")->capture_default_str();
  t1->add_option("--ns", t1_ns, "Per-group sample sizes")->capture_default_str();
  t1->add_option("--reps", t1_reps, "Replications per cell")->capture_default_str();
  t1->add_option("--seed", t1_seed, "RNG seed")->capture_default_str();
  add_io(t1);

  // test
  std::string x_path, y_path;
  int te_perm_reps = 0;
  std::uint64_t te_seed = kDefaultSeed;
  CLI::App* te = app.add_subcommand("test", "Two-sample test on CSV data (headerless, rows = observations)");
  te->add_option("--x", x_path, "First group CSV")->required();
  te->add_option("--y", y_path, "Second group CSV")->required();
  CLI::Option* perm_opt =
      te->add_option("--permutation-reps", te_perm_reps,
                     "Run the permutation test with this many label permutations (>= 100)");
  te->add_option("--seed", te_seed, "RNG seed for permutations")->capture_default_str();
  add_io(te);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (ac->parsed()) return run_analytic_curve(ac_n, ac_rho, ac_shift, format, out_path);
    if (el->parsed()) return run_ellipse(el_rho, el_count, format, out_path);
    if (sc->parsed()) return run_simulate_curve(sc_n, sc_rho, sc_factor, sc_reps, sc_seed, format, out_path);
    if (t1->parsed()) return run_table1(t1_rho, t1_ns, t1_reps, t1_seed, format, out_path);
    if (te->parsed()) {
      std::optional<int> perm;
      if (perm_opt->count() > 0) perm = te_perm_reps;
      return run_test(x_path, y_path, perm, te_seed, format, out_path);
    }
  } catch (const ht2::DegenerateDimension& e) {
    std::cerr << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ht2::NotPositiveDefinite& e) {
    std::cerr << "simulation failure: " << e.what() << "\n";
    return kExitSimFailure;
  } catch (const ht2::EigenFailure& e) {
    std::cerr << "simulation failure: " << e.what() << "\n";
    return kExitSimFailure;
  } catch (const ht2::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
