// catdyn: run entropy scenarios from files or from the bundled corpus.
//
//   catdyn run <file> [--out r.json] [--csv r.csv] [--nmax N] [--tgrid a:b:step]
//                     [--field Q|Fp[:p]] [--seed S] [--timings]
//   catdyn corpus [names...] [--all] [--out r.json] [--csv r.csv] [--timings]
//   catdyn --list | --version
//
// Exit status: 0 when every verdict passes, 2 when one fails, 1 on error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "catdyn/scenario/corpus.hpp"

using namespace catdyn;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

std::string fixed(double x, int prec = 6) {
  if (!std::isfinite(x)) return format_double(x);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

void print_report(std::ostream& os, const Report& r) {
  os << "scenario " << r.scenario.name << " (" << r.scenario.kind;
  if (!r.meta.fields.empty()) {
    os << ", over";
    for (const auto& f : r.meta.fields) os << " " << f;
  }
  os << ", n <= " << r.meta.completed << ")\n";
  if (!r.estimates.empty()) {
    os << "  estimates\n";
    for (const auto& e : r.estimates) {
      std::string q = e.quantity;
      if (e.t) q += "[t=" + short_double(*e.t) + "]";
      char line[160];
      std::snprintf(line, sizeof line, "    %-16s %12s  %s %d..%d%s\n", q.c_str(), fixed(e.point).c_str(), e.method.c_str(),
                    e.window_lo, e.window_hi, e.oscillation ? "  (oscillating)" : "");
      os << line;
    }
  }
  for (const auto& m : r.matrices) {
    os << "  " << m.name << " =";
    for (const auto& row : m.entries) {
      os << " [";
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
      os << "]";
    }
    if (m.spectral) {
      if (m.spectral->log_minus_infinity)
        os << "  rho = 0";
      else
        os << "  log rho in [" << fixed(Rational(m.spectral->log_rho_lower).get_d(), 9) << ", "
           << fixed(Rational(m.spectral->log_rho_upper).get_d(), 9) << "]";
    }
    os << "\n";
  }
  os << "  verdicts\n";
  std::size_t passed = 0;
  for (const auto& v : r.verdicts) {
    passed += v.pass;
    os << "    " << (v.pass ? "PASS" : "FAIL") << "  " << v.name;
    if (v.tolerance > 0 || v.gap != 0) os << "  (gap " << fixed(v.gap) << ")";
    if (!v.detail.empty()) os << "  " << v.detail;
    os << "\n";
  }
  for (const auto& n : r.meta.notes) os << "  note: " << n << "\n";
  os << "  " << passed << "/" << r.verdicts.size() << " verdicts pass\n";
}

std::optional<FieldPolicy> field_option(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string t = text;
  for (auto& c : t)
    if (c == ':') c = ' ';
  std::istringstream in(t);
  std::vector<std::string> args;
  for (std::string w; in >> w;) args.push_back(w);
  if (args.empty() || args[0] == "auto") {
    if (args.size() > 1) throw InvalidArgument("--field auto takes no prime");
    return FieldPolicy{};
  }
  return parse_field_policy(args);
}

int finish(const Report& r, const std::string& out, const std::string& csv) {
  if (!out.empty()) write_file(out, to_json(r).dump(2) + "\n");
  if (!csv.empty()) write_file(csv, csv_header() + to_csv_rows(r));
  return r.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Categorical entropy of quiver algebras and K3 lattice actions"};
  app.require_subcommand(0, 1);
  bool list = false, show_version = false;
  app.add_flag("--list", list, "List the bundled corpus");
  app.add_flag("--version", show_version, "Print the version");

  std::string file, out, csv, tgrid, field;
  std::optional<int> nmax;
  std::optional<std::uint64_t> seed;
  bool timings = false;
  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("file", file, "Scenario file")->required();
  run->add_option("--out", out, "Write the JSON report here");
  run->add_option("--csv", csv, "Write long-format CSV here");
  run->add_option("--nmax", nmax, "Override nmax");
  run->add_option("--tgrid", tgrid, "Override the t grid, lo:hi:step");
  run->add_option("--field", field, "Override the field policy: auto, Q, Fp or Fp:p");
  run->add_option("--seed", seed, "Override the seed");
  run->add_flag("--timings", timings, "Record timings in the report");

  std::vector<std::string> names;
  bool all = false, corpus_list = false;
  auto* corpus_cmd = app.add_subcommand("corpus", "Run bundled scenarios");
  corpus_cmd->add_option("names", names, "Scenario names");
  corpus_cmd->add_flag("--all", all, "Run every bundled scenario");
  corpus_cmd->add_flag("--list", corpus_list, "List the bundled corpus");
  corpus_cmd->add_option("--out", out, "Write the JSON report here");
  corpus_cmd->add_option("--csv", csv, "Write long-format CSV here");
  corpus_cmd->add_flag("--timings", timings, "Record timings in the reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (show_version) {
      std::cout << "catdyn " << version() << "\n";
      return 0;
    }
    if (list || corpus_list) {
      for (const auto& n : corpus_names()) std::cout << n << "\n";
      return 0;
    }
    const RunOptions opt{timings};
    if (*run) {
      Scenario s = parse_scenario(read_file(file));
      apply_overrides(s, Overrides{nmax, tgrid.empty() ? std::nullopt : std::optional<std::string>(tgrid), field_option(field), seed});
      const Report r = run_scenario(s, opt);
      print_report(std::cout, r);
      return finish(r, out, csv);
    }
    if (*corpus_cmd) {
      if (all && !names.empty()) throw InvalidArgument("--all takes no names");
      const std::vector<Report> reports = corpus_run(all ? corpus_names() : names, opt);
      for (const auto& r : reports) print_report(std::cout, r);
      if (reports.empty()) std::cout << "no scenarios selected\n";
      if (!out.empty()) write_file(out, to_json(reports).dump(2) + "\n");
      if (!csv.empty()) write_file(csv, to_csv(reports));
      for (const auto& r : reports)
        if (!r.all_pass()) return 2;
      return 0;
    }
    std::cout << app.help();
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "catdyn: " << e.what() << "\n";
    return 1;
  }
}
