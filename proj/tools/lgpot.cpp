// lgpot: proper Landau-Ginzburg potentials, theta-function verification, and
// classical periods for log Calabi-Yau pairs with nef anticanonical divisor.
//
// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 malformed input or invariant violation.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lgpot/json_io.hpp"
#include "lgpot/periods.hpp"
#include "lgpot/theta.hpp"
#include "lgpot/toric.hpp"

namespace {

using lgpot::InvariantTable;
using lgpot::Json;
using lgpot::LaurentPolynomial;
using lgpot::MirrorMap;
using lgpot::PeriodSequence;
using lgpot::Rational;
using lgpot::Series;
using lgpot::SeriesContext;
using lgpot::ThetaSeries;
using lgpot::ToricGeometry;
using lgpot::VerifyReport;

// Input paths resolve literally first, then against LGPOT_CORPUS, then
// against the bundled corpus directory.
std::string resolve_input(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* env = std::getenv("LGPOT_CORPUS")) {
    fs::path candidate = fs::path(env) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  fs::path bundled = fs::path(LGPOT_CORPUS_DIR) / path;
  if (fs::exists(bundled)) return bundled.string();
  throw lgpot::error("input file '" + path + "' not found");
}

std::string monomial_string(const SeriesContext& ctx, const lgpot::Monomial& m) {
  std::ostringstream out;
  bool any = false;
  for (int i = 0; i < ctx.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (any) out << " ";
    out << ctx.vars[i];
    if (m[i] > 1) out << "^" << m[i];
    any = true;
  }
  return any ? out.str() : "1";
}

void print_series_table(std::ostream& out, const Series& s, const std::string& heading) {
  out << heading << "\n";
  if (s.is_zero()) {
    out << "  0\n";
    return;
  }
  for (const auto& [m, c] : s.terms())
    out << "  " << std::setw(16) << std::left << monomial_string(s.context(), m) << "  "
        << lgpot::to_string(c) << "\n";
}

void print_table(std::ostream& out, const InvariantTable& t) {
  out << "  p   n   N_{n,p}\n";
  std::vector<std::pair<int, int>> keys;
  for (const auto& [key, v] : t.entries) keys.push_back({key.second, key.first});
  std::sort(keys.begin(), keys.end());
  for (const auto& [p, n] : keys)
    out << "  " << std::setw(3) << std::left << p << " " << std::setw(3) << n << " "
        << lgpot::to_string(t.get(n, p)) << "\n";
}

void print_report(std::ostream& out, const std::string& label, const VerifyReport& r) {
  out << "  " << label << ": " << (r.pass ? "pass" : "FAIL") << "\n";
  for (const auto& m : r.mismatches)
    out << "    mismatch at x^" << m.xpow << " t^" << m.tpow << ": lhs "
        << lgpot::to_string(m.lhs) << " != rhs " << lgpot::to_string(m.rhs) << "\n";
}

void emit(const Json& doc, bool as_json) {
  if (as_json) std::cout << doc.dump(2) << "\n";
}

struct CommonOpts {
  std::string format = "json";

  bool json() const { return format == "json"; }
};

int run_potential(const std::string& geometry_path, int order, int zero_deg_cap,
                  const CommonOpts& opts) {
  ToricGeometry geom = lgpot::load_geometry(resolve_input(geometry_path));
  Series pot = lgpot::proper_potential(geom, order, zero_deg_cap);

  Json doc;
  doc["command"] = "potential";
  doc["geometry"] = geom.name;
  doc["order"] = order;
  doc["zero_deg_cap"] = zero_deg_cap;
  doc["prefactor"] = "x^-1";
  doc["potential"] = lgpot::series_to_json(pot);
  bool extractable = !geom.has_zero_degree_generator();
  if (extractable) {
    InvariantTable t = lgpot::two_point_invariants(pot, geom);
    doc["invariants"] = lgpot::table_to_json(t);
  }
  emit(doc, opts.json());
  if (!opts.json()) {
    print_series_table(std::cout, pot, "potential of " + geom.name + " (prefactor x^-1), order " +
                                           std::to_string(order));
    if (extractable) {
      std::cout << "two-point invariants, column p = 1\n";
      print_table(std::cout, lgpot::two_point_invariants(pot, geom));
    }
  }
  return 0;
}

InvariantTable build_table(const ToricGeometry& geom, int pmax, int nmax, int zero_deg_cap) {
  Series pot = lgpot::proper_potential(geom, nmax + pmax + 1, zero_deg_cap);
  InvariantTable col1 = lgpot::two_point_invariants(pot, geom);
  return lgpot::wdvv_extend_table(col1, pmax, nmax);
}

int run_theta(const std::string& geometry_path, int order, int pmax, int zero_deg_cap,
              const CommonOpts& opts) {
  ToricGeometry geom = lgpot::load_geometry(resolve_input(geometry_path));
  InvariantTable t = build_table(geom, pmax, std::max(order - 1, 1), zero_deg_cap);

  Json doc;
  doc["command"] = "theta";
  doc["geometry"] = geom.name;
  doc["order"] = order;
  doc["pmax"] = pmax;
  doc["table"] = lgpot::table_to_json(t);
  emit(doc, opts.json());
  if (!opts.json()) {
    std::cout << "two-point invariant table for " << geom.name << "\n";
    print_table(std::cout, t);
    for (int p = 1; p <= pmax; ++p) {
      ThetaSeries theta = lgpot::theta_series(t, p, order - p);
      std::cout << "theta_" << p << " = x^-" << p;
      for (const auto& [n, c] : theta.terms)
        std::cout << " + " << lgpot::to_string(c) << " t^" << n + p << " x^" << n;
      std::cout << "\n";
    }
  }
  return 0;
}

int run_verify_product(const std::string& geometry_path, int pmax, int order, int zero_deg_cap,
                       const CommonOpts& opts) {
  ToricGeometry geom = lgpot::load_geometry(resolve_input(geometry_path));
  InvariantTable t = build_table(geom, 2 * pmax, std::max(order - 1, 1), zero_deg_cap);

  Json checks = Json::array();
  bool all_pass = true;
  std::ostringstream text;
  for (int p1 = 1; p1 <= pmax; ++p1) {
    for (int p2 = p1; p2 <= pmax; ++p2) {
      VerifyReport r = lgpot::verify_product(t, p1, p2, order);
      all_pass = all_pass && r.pass;
      Json check;
      check["p1"] = p1;
      check["p2"] = p2;
      check.update(lgpot::report_to_json(r));
      checks.push_back(std::move(check));
      print_report(text, "theta_" + std::to_string(p1) + " * theta_" + std::to_string(p2), r);
    }
  }

  Json doc;
  doc["command"] = "verify-product";
  doc["geometry"] = geom.name;
  doc["pmax"] = pmax;
  doc["order"] = order;
  doc["pass"] = all_pass;
  doc["checks"] = std::move(checks);
  emit(doc, opts.json());
  if (!opts.json())
    std::cout << "theta product rule on " << geom.name << " through t^" << order << "\n"
              << text.str() << (all_pass ? "all checks passed\n" : "verification FAILED\n");
  return all_pass ? 0 : 1;
}

int run_verify_wdvv(const std::string& geometry_path, int pmax, int kmax, int zero_deg_cap,
                    const CommonOpts& opts) {
  ToricGeometry geom = lgpot::load_geometry(resolve_input(geometry_path));
  InvariantTable t = build_table(geom, 2 * pmax, kmax + pmax, zero_deg_cap);

  Json checks = Json::array();
  bool all_pass = true;
  std::ostringstream text;
  for (int p1 = 1; p1 <= pmax; ++p1) {
    for (int p2 = p1; p2 <= pmax; ++p2) {
      VerifyReport r = lgpot::verify_wdvv(t, p1, p2, kmax);
      all_pass = all_pass && r.pass;
      Json check;
      check["p1"] = p1;
      check["p2"] = p2;
      check.update(lgpot::report_to_json(r));
      checks.push_back(std::move(check));
      print_report(text, "(p1,p2) = (" + std::to_string(p1) + "," + std::to_string(p2) + ")", r);
    }
  }

  Json doc;
  doc["command"] = "verify-wdvv";
  doc["geometry"] = geom.name;
  doc["pmax"] = pmax;
  doc["kmax"] = kmax;
  doc["pass"] = all_pass;
  doc["checks"] = std::move(checks);
  emit(doc, opts.json());
  if (!opts.json())
    std::cout << "WDVV identity on " << geom.name << " for k <= " << kmax << "\n"
              << text.str() << (all_pass ? "all checks passed\n" : "verification FAILED\n");
  return all_pass ? 0 : 1;
}

int run_period(const std::string& laurent_path, int kmax, int terms, const CommonOpts& opts) {
  LaurentPolynomial f = lgpot::load_laurent(resolve_input(laurent_path));
  PeriodSequence pi;
  if (kmax >= 0) {
    pi = lgpot::classical_period(f, kmax);
  } else {
    // --terms T: report through the T-th nonzero constant term.
    PeriodSequence scan = lgpot::classical_period(f, 8 * terms);
    int found = 0, stop = 0;
    for (int k = 1; k <= scan.order() && found < terms; ++k) {
      if (scan.coeffs[k] != 0) {
        ++found;
        stop = k;
      }
    }
    pi.coeffs.assign(scan.coeffs.begin(), scan.coeffs.begin() + stop + 1);
  }

  Json doc;
  doc["command"] = "period";
  doc["kmax"] = pi.order();
  doc["period"] = lgpot::period_to_json(pi);
  emit(doc, opts.json());
  if (!opts.json()) {
    std::cout << "classical period\n  k    pi_k\n";
    for (int k = 0; k <= pi.order(); ++k)
      std::cout << "  " << std::setw(4) << std::left << k << " "
                << lgpot::to_string(pi.coeffs[k]) << "\n";
  }
  return 0;
}

int run_compare_period(const std::string& geometry_path, const std::string& laurent_path,
                       int order, const CommonOpts& opts) {
  ToricGeometry geom = lgpot::load_geometry(resolve_input(geometry_path));
  LaurentPolynomial f = lgpot::load_laurent(resolve_input(laurent_path));
  if (std::find(geom.anticanonical.begin(), geom.anticanonical.end(), 0) !=
      geom.anticanonical.end())
    throw lgpot::error("compare-period: geometry '" + geom.name +
                       "' has degree-zero directions; the t-specialization does not apply");

  Series toric_g = lgpot::g_series(geom, order);
  SeriesContext tctx({"t"}, {1}, order);
  std::vector<Series> images;
  for (int a = 0; a < geom.picard_rank; ++a) {
    Series ta(tctx);
    ta.add_term({geom.anticanonical[a]}, 1);
    images.push_back(ta);
  }
  Series toric_t = lgpot::substitute(toric_g, images);
  Series period_t = lgpot::g_from_period(lgpot::classical_period(f, order));

  bool pass = toric_t == period_t;
  Json doc;
  doc["command"] = "compare-period";
  doc["geometry"] = geom.name;
  doc["order"] = order;
  doc["pass"] = pass;
  if (!pass) {
    for (int k = 0; k <= order; ++k) {
      if (toric_t.coeff({k}) != period_t.coeff({k})) {
        Json m;
        m["tpow"] = k;
        m["toric"] = lgpot::to_string(toric_t.coeff({k}));
        m["period"] = lgpot::to_string(period_t.coeff({k}));
        doc["first_mismatch"] = std::move(m);
        break;
      }
    }
  }
  emit(doc, opts.json());
  if (!opts.json()) {
    std::cout << "period correspondence for " << geom.name << " through t^" << order << ": "
              << (pass ? "pass" : "FAIL") << "\n";
    if (!pass && doc.contains("first_mismatch"))
      std::cout << "  first mismatch at t^" << doc["first_mismatch"]["tpow"] << ": toric "
                << doc["first_mismatch"]["toric"].get<std::string>() << " != period "
                << doc["first_mismatch"]["period"].get<std::string>() << "\n";
  }
  return pass ? 0 : 1;
}

int run_v10(int order, const CommonOpts& opts) {
  PeriodSequence pi = lgpot::v10_regularized_period(order);
  Series pot = lgpot::potential_from_period(pi, order);

  Json doc;
  doc["command"] = "v10";
  doc["order"] = order;
  doc["prefactor"] = "x^-1";
  doc["period"] = lgpot::period_to_json(pi);
  doc["potential"] = lgpot::series_to_json(pot);
  emit(doc, opts.json());
  if (!opts.json()) {
    std::cout << "V10 regularized period\n  k    pi_k\n";
    for (int k = 0; k <= pi.order(); ++k)
      std::cout << "  " << std::setw(4) << std::left << k << " "
                << lgpot::to_string(pi.coeffs[k]) << "\n";
    print_series_table(std::cout, pot, "potential (prefactor x^-1)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proper Landau-Ginzburg potentials, theta functions, and classical periods"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string geometry, laurent;
  int order = 9, pmax = 3, kmax = 8, zero_deg_cap = 3, terms = -1, period_kmax = -1;
  int v10_order = 6;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->default_val("json");
  };

  CLI::App* potential = app.add_subcommand("potential", "proper Landau-Ginzburg potential");
  potential->add_option("--geometry", geometry, "geometry JSON file")->required();
  potential->add_option("--order", order, "truncation order in t")->check(CLI::PositiveNumber);
  potential->add_option("--zero-deg-cap", zero_deg_cap, "exponent cap for degree-zero classes");
  add_format(potential);

  CLI::App* theta = app.add_subcommand("theta", "two-point invariant table and theta functions");
  theta->add_option("--geometry", geometry, "geometry JSON file")->required();
  theta->add_option("--order", order, "t-grade bound for the table")->check(CLI::PositiveNumber);
  theta->add_option("--pmax", pmax, "largest contact order column")->check(CLI::PositiveNumber);
  theta->add_option("--zero-deg-cap", zero_deg_cap, "exponent cap for degree-zero classes");
  add_format(theta);

  CLI::App* vproduct = app.add_subcommand("verify-product", "check the theta product rule");
  vproduct->add_option("--geometry", geometry, "geometry JSON file")->required();
  vproduct->add_option("--pmax", pmax, "check all p1, p2 up to this order")
      ->check(CLI::PositiveNumber);
  vproduct->add_option("--order", order, "compare coefficients through this t-power")
      ->check(CLI::PositiveNumber);
  vproduct->add_option("--zero-deg-cap", zero_deg_cap, "exponent cap for degree-zero classes");
  add_format(vproduct);

  CLI::App* vwdvv = app.add_subcommand("verify-wdvv", "check the WDVV identity");
  vwdvv->add_option("--geometry", geometry, "geometry JSON file")->required();
  vwdvv->add_option("--pmax", pmax, "check all p1, p2 up to this order")
      ->check(CLI::PositiveNumber);
  vwdvv->add_option("--kmax", kmax, "check all k up to this bound")->check(CLI::PositiveNumber);
  vwdvv->add_option("--zero-deg-cap", zero_deg_cap, "exponent cap for degree-zero classes");
  add_format(vwdvv);

  CLI::App* period = app.add_subcommand("period", "classical period of a Laurent polynomial");
  period->add_option("--laurent", laurent, "Laurent polynomial JSON file")->required();
  period->add_option("--kmax", period_kmax, "compute pi_0 .. pi_kmax");
  period->add_option("--terms", terms, "report through the given number of nonzero terms");
  add_format(period);

  CLI::App* compare = app.add_subcommand("compare-period", "toric g against the period-derived g");
  compare->add_option("--geometry", geometry, "geometry JSON file")->required();
  compare->add_option("--laurent", laurent, "Laurent polynomial JSON file")->required();
  compare->add_option("--order", order, "compare through this t-power")
      ->check(CLI::PositiveNumber);
  add_format(compare);

  CLI::App* v10 = app.add_subcommand("v10", "V10 quantum-period example");
  v10->add_option("--order", v10_order, "truncation order")->check(CLI::PositiveNumber);
  add_format(v10);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (potential->parsed()) return run_potential(geometry, order, zero_deg_cap, opts);
    if (theta->parsed()) return run_theta(geometry, order, pmax, zero_deg_cap, opts);
    if (vproduct->parsed()) return run_verify_product(geometry, pmax, order, zero_deg_cap, opts);
    if (vwdvv->parsed()) return run_verify_wdvv(geometry, pmax, kmax, zero_deg_cap, opts);
    if (period->parsed()) {
      if (period_kmax < 0 && terms < 0)
        throw lgpot::error("period: provide --kmax or --terms");
      return run_period(laurent, period_kmax, terms, opts);
    }
    if (compare->parsed()) return run_compare_period(geometry, laurent, order, opts);
    if (v10->parsed()) return run_v10(v10_order, opts);
  } catch (const lgpot::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
