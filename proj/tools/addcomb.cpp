#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "addcomb/addcomb.hpp"

namespace {

using namespace addcomb;

struct Globals {
  bool json = false;
  unsigned threads = 1;
  std::string file;
  std::string reports_dir = "reports";
};

struct Outcome {
  int code = 0;  // 0 clean, 2 findings
};

ParsedSet input_set(const Globals& g, const std::string& literal) {
  if (!g.file.empty()) {
    std::ifstream is(g.file);
    require(static_cast<bool>(is), ErrorCode::ParseError, "cannot open " + g.file);
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("invalid JSON in ") + g.file + ": " + e.what());
    }
    return parse_json_set(j);
  }
  require(!literal.empty(), ErrorCode::ParseError, "no set given (pass a literal or --file)");
  return parse_literal(literal);
}

ResidueSet residue_input(const Globals& g, const std::string& literal) {
  const auto p = input_set(g, literal);
  require(p.kind == ParsedSet::Kind::Residue, ErrorCode::ParseError, "expected a residue set n=<m>:{...}");
  return p.residue;
}

void emit(const Globals& g, const nlohmann::json& j, const std::string& text) {
  if (g.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string ap_text(const ApDescriptor& ap) { return to_string(ap); }

std::string with_modulus(const ApDescriptor& ap) {
  std::string s = ap_text(ap);
  if (!ap.in_integers()) s += " (mod " + std::to_string(ap.modulus) + ")";
  return s;
}

Outcome cmd_sumset(const Globals& g, const std::string& lit) {
  const auto p = input_set(g, lit);
  if (p.kind == ParsedSet::Kind::Residue) {
    const auto s = sumset(p.residue);
    std::string els = to_literal(s);
    els = els.substr(els.find(':') + 1);
    emit(g, {{"sumset", to_json(s)}, {"size", s.size()}}, els + "\nsize=" + std::to_string(s.size()) + "\n");
  } else {
    require(p.kind == ParsedSet::Kind::Integer, ErrorCode::ParseError, "sumset takes a residue or integer set");
    require(!p.integer.empty(), ErrorCode::EmptySet, "sumset of an empty set");
    const auto s = int_sumset(p.integer);
    emit(g, {{"sumset", to_json(s)}, {"size", s.size()}}, to_literal(s) + "\nsize=" + std::to_string(s.size()) + "\n");
  }
  return {};
}

std::string cover_text(const CoverResult& c) {
  return "length=" + std::to_string(c.length) + "\nbound=" + std::to_string(c.bound) +
         "\nwithin_bound=" + yes_no(c.within_bound) + "\nwitness: " + with_modulus(c.witness) + "\n";
}

Outcome cmd_cover(const Globals& g, const std::string& lit) {
  const auto c = min_ap_cover(residue_input(g, lit));
  emit(g, to_json(c), cover_text(c));
  return {};
}

Outcome cmd_dim(const Globals& g, const std::string& lit) {
  const auto p = input_set(g, lit);
  const auto d = additive_dimension(p.as_additive());
  std::string text = "dim=" + std::to_string(d.dim) + "\n";
  nlohmann::json j = to_json(d);
  if (p.kind == ParsedSet::Kind::Integer) {
    const auto b = dimension_lower_bound_check(p.integer);
    text += "|2A|=" + std::to_string(b.doubling) + " >= " + std::to_string(b.rhs) + ": " + yes_no(b.holds) + "\n";
    j["lower_bound"] = {{"doubling", b.doubling}, {"rhs", b.rhs}, {"holds", b.holds}};
  }
  emit(g, j, text);
  return {};
}

Outcome cmd_rectify(const Globals& g, const std::string& lit) {
  const auto p = input_set(g, lit);
  const auto r = rectify(p.as_additive());
  std::ostringstream os;
  os << to_literal(r.image) << "\nmap:";
  const auto& pts = p.as_additive().points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    os << ' ';
    if (pts[i].size() == 1) {
      os << pts[i][0];
    } else {
      os << '(';
      for (std::size_t c = 0; c < pts[i].size(); ++c) os << (c ? "," : "") << pts[i][c];
      os << ')';
    }
    os << "->" << r.values[i];
  }
  os << '\n';
  emit(g, to_json(r), os.str());
  return {};
}

Outcome cmd_iso(const Globals& g, const std::string& a, const std::string& b) {
  require(g.file.empty(), ErrorCode::InvalidParams, "iso takes two literals, not --file");
  const auto sa = parse_literal(a).as_additive();
  const auto sb = parse_literal(b).as_additive();
  std::vector<std::size_t> map;
  const bool iso = is_F2_isomorphic(sa, sb, &map);
  nlohmann::json j{{"isomorphic", iso}};
  std::string text = yes_no(iso) + "\n";
  if (iso) j["mapping"] = map;
  emit(g, j, text);
  return {};
}

Outcome cmd_spectrum(const Globals& g, const std::string& lit) {
  const auto a = residue_input(g, lit);
  const auto s = spectrum(a);
  const auto lc = largest_coefficient(a, s);
  nlohmann::json j = to_json(s);
  j["largest"] = to_json(lc);
  j["cs_identity_residual"] = cs_identity_residual(a);
  char buf[256];
  std::snprintf(buf, sizeof buf, "largest: d=%lld |F(d)|=%.6f bound=%.6f\nparseval_residual=%.3e\n",
                static_cast<long long>(lc.d), lc.magnitude, lc.bound, s.parseval_residual());
  emit(g, j, buf);
  return {};
}

Outcome cmd_verdict(const Globals& g, const std::string& which, const std::string& lit) {
  const auto a = residue_input(g, lit);
  if (which == "main") {
    const auto r = main_theorem_verdict(a);
    emit(g, to_json(r),
         "doubling_hypothesis=" + yes_no(r.doubling_hypothesis) + "\ndensity_hypothesis=" +
             (r.density_hypothesis ? "met" : "unmet-at-scale") + "\nconclusion_holds=" + yes_no(r.conclusion_holds) +
             "\n" + cover_text(r.cover));
    return {};
  }
  if (which == "vosper") {
    const auto r = vosper_verdict(a);
    emit(g, to_json(r), "critical=" + yes_no(r.critical) + "\nis_ap=" + yes_no(r.is_ap) + "\nagree=" + yes_no(r.agree) + "\n");
    return {};
  }
  if (which == "conjecture") {
    const auto r = conjecture_verdict(a);
    emit(g, to_json(r),
         std::string(to_string(r.status)) + " x=" + std::to_string(r.excess) + "\ncondition_i=" + yes_no(r.condition_i) +
             "\ncondition_ii=" + yes_no(r.condition_ii) + "\n" + cover_text(r.cover));
    return {r.status == ConjectureStatus::Counterexample ? 2 : 0};
  }
  throw Error(ErrorCode::InvalidParams, "verdict must be main, vosper or conjecture");
}

Outcome cmd_engine(const Globals& g, const std::string& lit, const std::string& mode) {
  EngineOptions opt;
  if (mode == "exact") {
    opt.window_mode = WindowMode::Exact;
  } else if (mode == "fourier") {
    opt.window_mode = WindowMode::FourierGuided;
  } else {
    require(mode == "auto", ErrorCode::InvalidParams, "window mode must be auto, exact or fourier");
  }
  const auto t = prove_cover(residue_input(g, lit), opt);
  std::string text = "branch=" + std::string(to_string(t.branch)) + "\nwindow: d=" + std::to_string(t.window.d) +
                     " u=" + std::to_string(t.window.u) + " |A1|=" + std::to_string(t.window.captured.size()) + "\n";
  if (t.attempted) text += "attempted=" + std::string(to_string(*t.attempted)) + "\n";
  if (t.result) {
    text += "cover: " + with_modulus(t.result->witness) + " bound=" + std::to_string(t.result->bound) + "\n";
  } else {
    text += "cover: none\n";
  }
  if (!t.message.empty()) text += "note: " + t.message + "\n";
  emit(g, to_json(t), text);
  return {};
}

std::string join(const std::vector<i64>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

Outcome finish_report(const Globals& g, const SearchReport& rep, const std::string& tag) {
  const auto path = rep.write(g.reports_dir, tag);
  if (g.json) {
    std::cout << rep.to_json().dump(2) << '\n';
  } else {
    std::cout << rep.campaign << ": " << rep.classes_examined << " examined, " << rep.findings.size() << " findings\n";
    std::cout << "summary: " << rep.summary.dump() << "\n";
    for (const auto& f : rep.findings) std::cout << "finding: " << f.dump() << "\n";
    std::cout << "report: " << path.string() << "\n";
  }
  return {rep.clean() ? 0 : 2};
}

Outcome cmd_hunt(const Globals& g, std::vector<i64> primes, i64 max_p, bool override_budget) {
  if (primes.empty()) primes = kHuntDefaultPrimes;
  if (max_p > kHuntDefaultMaxP) {
    require(override_budget, ErrorCode::RangeError,
            "--max-p above " + std::to_string(kHuntDefaultMaxP) + " needs --override-budget");
    std::cerr << "warning: hunting beyond p = " << kHuntDefaultMaxP << " can take hours\n";
  }
  const auto rep = hunt_conjecture(primes, {g.threads, max_p});
  return finish_report(g, rep, "p" + join(primes, '_'));
}

Outcome cmd_family(const Globals& g, const std::string& name, i64 max_p) {
  Family f;
  if (name == "example1") {
    f = Family::Example1;
  } else if (name == "example2") {
    f = Family::Example2;
  } else {
    throw Error(ErrorCode::InvalidParams, "family must be example1 or example2");
  }
  const auto rep = verify_family(f, max_p);
  return finish_report(g, rep, name + "-maxp" + std::to_string(max_p));
}

Outcome cmd_suite(const Globals& g, const std::string& name, i64 max_p, i64 max_element) {
  SuiteParams sp;
  sp.threads = g.threads;
  if (max_p > 0) sp.max_p = max_p;
  sp.max_element = max_element;
  const auto rep = verify_theorem_suite(name, sp);
  std::string tag = "default";
  if (name == "vosper") tag = "maxp" + std::to_string(sp.max_p);
  if (name != "vosper") tag = "max" + rep.parameters.at("max_element").dump();
  return finish_report(g, rep, tag);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive combinatorics toolkit: sumsets, AP covers, Freiman dimension, rectification"};
  app.fallthrough();
  Globals g;
  bool show_version = false;
  app.add_flag("--version", show_version, "Print tool and schema versions");
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--threads", g.threads, "Worker threads for searches")->check(CLI::PositiveNumber);
  app.add_option("--file", g.file, "Read the set from a JSON file");
  app.add_option("--reports-dir", g.reports_dir, "Directory for campaign reports");
  app.require_subcommand(0, 1);

  std::string lit, lit2, which, mode = "auto", name;
  std::vector<i64> primes;
  i64 max_p = kHuntDefaultMaxP;
  i64 fam_max_p = 199;
  i64 suite_max_p = -1;
  i64 max_element = -1;
  bool override_budget = false;

  auto* sumset_cmd = app.add_subcommand("sumset", "A + A");
  sumset_cmd->add_option("set", lit, "Set literal");
  auto* cover_cmd = app.add_subcommand("cover", "Shortest arithmetic progression containing a subset of Z_p");
  cover_cmd->add_option("set", lit, "Set literal n=<p>:{...}");
  auto* dim_cmd = app.add_subcommand("dim", "Additive (Freiman) dimension");
  dim_cmd->add_option("set", lit, "Set literal");
  auto* rect_cmd = app.add_subcommand("rectify", "F2-isomorphic set of integers");
  rect_cmd->add_option("set", lit, "Set literal");
  auto* iso_cmd = app.add_subcommand("iso", "F2-isomorphism test");
  iso_cmd->add_option("a", lit, "First set")->required();
  iso_cmd->add_option("b", lit2, "Second set")->required();
  auto* spec_cmd = app.add_subcommand("spectrum", "Fourier magnitudes of a subset of Z_p");
  spec_cmd->add_option("set", lit, "Set literal n=<p>:{...}");
  auto* verdict_cmd = app.add_subcommand("verdict", "Evaluate a covering statement: main, vosper or conjecture");
  verdict_cmd->add_option("which", which, "main | vosper | conjecture")->required();
  verdict_cmd->add_option("set", lit, "Set literal n=<p>:{...}");
  auto* engine_cmd = app.add_subcommand("engine", "Run the rectification pipeline and print its trace");
  engine_cmd->add_option("set", lit, "Set literal n=<p>:{...}");
  engine_cmd->add_option("--mode", mode, "Window mode: auto, exact or fourier");
  auto* hunt_cmd = app.add_subcommand("hunt", "Exhaustive search for covering-conjecture counterexamples");
  hunt_cmd->add_option("--primes", primes, "Primes to search (default 5..23)")->delimiter(',');
  hunt_cmd->add_option("--max-p", max_p, "Largest admissible prime");
  hunt_cmd->add_flag("--override-budget", override_budget, "Allow primes beyond the default budget");
  auto* family_cmd = app.add_subcommand("family", "Verify an extremal family: example1 or example2");
  family_cmd->add_option("name", name, "example1 | example2")->required();
  family_cmd->add_option("--max-p", fam_max_p, "Largest prime");
  auto* suite_cmd = app.add_subcommand("suite", "Exhaustive theorem suite: vosper, dim_bound, 3k4, prop23");
  suite_cmd->add_option("name", name, "Suite name")->required();
  suite_cmd->add_option("--max-p", suite_max_p, "Largest prime (vosper)");
  suite_cmd->add_option("--max-element", max_element, "Largest element (integer suites)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (show_version) {
    std::cout << "addcomb " << kVersion << " (json schema " << kJsonSchemaVersion << ", report schema "
              << kReportSchemaVersion << ")\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << "error: a subcommand is required\n" << app.help();
    return 1;
  }

  try {
    Outcome out;
    if (*sumset_cmd) out = cmd_sumset(g, lit);
    else if (*cover_cmd) out = cmd_cover(g, lit);
    else if (*dim_cmd) out = cmd_dim(g, lit);
    else if (*rect_cmd) out = cmd_rectify(g, lit);
    else if (*iso_cmd) out = cmd_iso(g, lit, lit2);
    else if (*spec_cmd) out = cmd_spectrum(g, lit);
    else if (*verdict_cmd) out = cmd_verdict(g, which, lit);
    else if (*engine_cmd) out = cmd_engine(g, lit, mode);
    else if (*hunt_cmd) out = cmd_hunt(g, primes, max_p, override_budget);
    else if (*family_cmd) out = cmd_family(g, name, fam_max_p);
    else if (*suite_cmd) out = cmd_suite(g, name, suite_max_p, max_element);
    return out.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
