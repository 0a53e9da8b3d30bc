#include "plucker/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "plucker/codes.hpp"
#include "plucker/error.hpp"
#include "plucker/exterior.hpp"
#include "plucker/verify.hpp"

namespace plucker {

namespace {

struct Common {
  std::string q = "2";
  int ell = 0;
  int m = 0;
  std::string alpha;
  std::string output;
  std::string format = "json";
  unsigned jobs = 1;
  std::string budget;
  std::string suite = "all";
  std::string config;
  std::string functional;
  bool debug_signs = false;
  std::uint64_t seed = 1;
  std::uint64_t samples = 4096;
};

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  std::size_t used = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s[0] == '-') throw UsageError(std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::uint64_t resolve_budget(const std::string& flag) {
  if (!flag.empty()) return parse_u64(flag, "budget");
  if (const char* env = std::getenv("PLUCKER_BUDGET"); env && *env) return parse_u64(env, "PLUCKER_BUDGET");
  return kDefaultBudget;
}

GrassmannParams make_params(const Common& c) {
  return GrassmannParams(c.ell, c.m, gf::Field::parse(c.q));
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

std::string vector_string(const std::vector<gf::Code>& v, const gf::Field& f) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (v[i] != 1) s += f.format(v[i]) + "*";
    s += "v" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

int cmd_params(const Common& c, std::ostream& out) {
  const auto params = make_params(c);
  const long q = params.q();
  const int l = params.ell;
  const int m = params.m;
  const auto spec = CodeSpec::grassmann(params);
  out << "q=" << params.f().spec_string() << " l=" << l << " m=" << m << "\n";
  out << "n=" << spec.n << "\n";
  out << "k=" << spec.k << "\n";
  out << "d=" << min_distance(spec).value.get_str() << "\n";
  if (l >= 2 && l <= m - 2) out << "d2=" << second_min_weight(spec).value.get_str() << "\n";
  out << "e=" << e_bound(l, m, q).get_str() << "\n";
  if (l * (m - l) >= 2) out << "e'=" << e_prime_bound(l, m, q).get_str() << "\n";
  if (!c.alpha.empty()) {
    const auto alpha = IndexTuple::parse(c.alpha, m);
    const auto s = CodeSpec::schubert(params, alpha);
    out << "alpha=" << alpha.to_string() << "\n";
    out << "n_alpha=" << s.n << "\n";
    out << "k_alpha=" << s.k << "\n";
    out << "d_alpha=" << schubert_min_distance(alpha, params).value.get_str() << "\n";
  }
  return kExitOk;
}

int cmd_wdist(const Common& c, std::ostream& out) {
  const auto params = make_params(c);
  if (c.format != "json" && c.format != "csv") throw UsageError("format must be json or csv");
  const auto spec = c.alpha.empty() ? CodeSpec::grassmann(params)
                                    : CodeSpec::schubert(params, IndexTuple::parse(c.alpha, params.m));
  SweepOptions opt;
  opt.parallelism = c.jobs;
  opt.budget = resolve_budget(c.budget);
  const auto dist = weight_distribution(spec, opt);
  emit(c.output, c.format == "json" ? dist.to_json() : dist.to_csv(), out);
  return kExitOk;
}

VerifyOptions verify_options(const Common& c) {
  VerifyOptions o;
  o.sweep.parallelism = c.jobs;
  o.sweep.budget = resolve_budget(c.budget);
  o.seed = c.seed;
  o.sample_cap = c.samples;
  return o;
}

// [[job]] blocks of key = value lines; '#' starts a comment.
std::vector<std::map<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config '" + path + "'");
  std::vector<std::map<std::string, std::string>> jobs;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(f, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[[job]]") {
      jobs.emplace_back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || jobs.empty()) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected [[job]] or key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    jobs.back()[key] = value;
  }
  return jobs;
}

int run_verify_job(const Common& c, std::ostream& out, nlohmann::ordered_json& reports) {
  const auto params = make_params(c);
  const auto suite = parse_suite(c.suite);
  bool ok = true;
  for (const auto& r : run_suite(suite, params, verify_options(c))) {
    out << (r.passed() ? "PASS " : "FAIL ") << r.suite << " " << r.params << "\n";
    for (const auto& a : r.assertions) {
      if (!a.pass) out << "  failed: " << a.name << (a.detail.empty() ? "" : " (" + a.detail + ")") << "\n";
    }
    ok = ok && r.passed();
    reports.push_back(nlohmann::ordered_json::parse(r.to_json()));
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_verify(const Common& c, std::ostream& out, std::ostream& err) {
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  int code = kExitOk;
  if (c.config.empty()) {
    code = run_verify_job(c, out, reports);
  } else {
    const auto jobs = read_config(c.config);
    if (jobs.empty()) throw UsageError("config '" + c.config + "' has no [[job]] blocks");
    for (const auto& job : jobs) {
      Common j = c;
      for (const auto& [key, value] : job) {
        if (key == "q") j.q = value;
        else if (key == "ell" || key == "l") j.ell = static_cast<int>(parse_u64(value, "ell"));
        else if (key == "m") j.m = static_cast<int>(parse_u64(value, "m"));
        else if (key == "suite") j.suite = value;
        else if (key == "parallelism") j.jobs = static_cast<unsigned>(parse_u64(value, "parallelism"));
        else if (key == "budget") j.budget = value;
        else if (key == "seed") j.seed = parse_u64(value, "seed");
        else throw UsageError("config: unknown key '" + key + "'");
      }
      int jc = kExitOk;
      try {
        jc = run_verify_job(j, out, reports);
      } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        jc = kExitBudget;
      }
      code = std::max(code, jc);
    }
  }
  if (!c.output.empty()) {
    nlohmann::ordered_json doc;
    doc["pass"] = code == kExitOk;
    doc["reports"] = reports;
    emit(c.output, doc.dump(2) + "\n", out);
  }
  return code;
}

int cmd_decompose(const Common& c, std::ostream& out) {
  const auto params = make_params(c);
  if (c.functional.empty()) throw UsageError("decompose needs -f");
  const auto F = c.functional.front() == '{' ? DualFunctional::from_json(params, c.functional)
                                             : DualFunctional::parse(params, c.functional);
  const auto v = analyze_functional(F);
  const auto& f = params.f();
  out << "functional: " << F.to_string() << "\n";
  out << "wedge: " << functional_to_wedge(F).to_string() << "\n";
  out << "verdict: " << (v.decomposable ? "decomposable" : "nondecomposable") << "\n";
  out << "dim V(z): " << v.annihilator_dim << "\n";
  out << "basis:";
  if (v.annihilator_basis.empty()) out << " (none)";
  for (std::size_t i = 0; i < v.annihilator_basis.size(); ++i) {
    out << (i ? ", " : " ") << vector_string(v.annihilator_basis[i], f);
  }
  out << "\n";
  if (c.debug_signs) {
    out << "unsigned wedge: " << functional_to_wedge_unsigned(F).to_string() << "\n";
    out << "unsigned verdict: " << (v.unsigned_convention_decomposable ? "decomposable" : "nondecomposable") << "\n";
  }
  return kExitOk;
}

int cmd_strings(const Common& c, std::ostream& out) {
  const auto params = make_params(c);
  if (params.ell == params.m) throw DomainError("strings need l < m");
  nlohmann::ordered_json j;
  j["q"] = params.f().spec_string();
  j["ell"] = std::to_string(params.ell);
  j["m"] = std::to_string(params.m);
  nlohmann::ordered_json fibers = nlohmann::ordered_json::array();
  for (const auto& label : enumerate_string_labels(params)) {
    nlohmann::ordered_json fib;
    std::string lab = "(";
    for (std::size_t i = 0; i < label.nu.size(); ++i) lab += (i ? "," : "") + params.f().format(label.nu[i]);
    fib["label"] = lab + ")";
    fib["points"] = nlohmann::ordered_json::array();
    for (const auto& M : string_fiber(label)) fib["points"].push_back(M.to_string());
    fibers.push_back(std::move(fib));
  }
  j["fibers"] = std::move(fibers);
  nlohmann::ordered_json lower = nlohmann::ordered_json::array();
  for (const auto& M : enumerate_grassmannian(params)) {
    if (!M.in_top_stratum()) lower.push_back(M.to_string());
  }
  j["sub_grassmannian"] = std::move(lower);
  emit(c.output, j.dump(2) + "\n", out);
  return kExitOk;
}

void add_space(CLI::App* sub, Common& c) {
  sub->add_option("-q,--field", c.q, "field order p or p^e")->required();
  sub->add_option("-l,--ell", c.ell, "subspace dimension")->required();
  sub->add_option("-m,--ambient", c.m, "ambient dimension")->required();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grassmann and Schubert codes over small finite fields", "plucker"};
  app.require_subcommand(1);
  Common c;

  auto* params = app.add_subcommand("params", "code parameters n, k, d, d2, e, e'");
  add_space(params, c);
  params->add_option("--alpha", c.alpha, "Schubert index tuple, e.g. 1,4");

  auto* wdist = app.add_subcommand("wdist", "exact weight distribution");
  add_space(wdist, c);
  wdist->add_option("--alpha", c.alpha, "Schubert index tuple");
  wdist->add_option("-o,--output", c.output, "output file (default stdout)");
  wdist->add_option("--format", c.format, "json or csv");
  wdist->add_option("-j,--jobs", c.jobs, "worker threads (0 = all cores)");
  wdist->add_option("--budget", c.budget, "max classes x points");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("-q,--field", c.q, "field order p or p^e");
  verify->add_option("-l,--ell", c.ell, "subspace dimension");
  verify->add_option("-m,--ambient", c.m, "ambient dimension");
  verify->add_option("--suite", c.suite, "nogin|second|strings|zanella|identities|l2|attained|all");
  verify->add_option("-o,--output", c.output, "JSON report file");
  verify->add_option("-j,--jobs", c.jobs, "worker threads (0 = all cores)");
  verify->add_option("--budget", c.budget, "max classes x points");
  verify->add_option("--config", c.config, "file of [[job]] blocks");
  verify->add_option("--seed", c.seed, "seed for sampled suites");
  verify->add_option("--samples", c.samples, "sample size for sampled suites");

  auto* decompose = app.add_subcommand("decompose", "decomposability of a hyperplane");
  add_space(decompose, c);
  decompose->add_option("-f,--functional", c.functional, "\"X:1,4 + 2*X:2,3\" or JSON map")->required();
  decompose->add_flag("--debug-signs", c.debug_signs, "also report the sign-free identification");

  auto* strings = app.add_subcommand("strings", "dump the string partition");
  add_space(strings, c);
  strings->add_option("-o,--output", c.output, "output file (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*params) return cmd_params(c, out);
    if (*wdist) return cmd_wdist(c, out);
    if (*verify) {
      if (c.config.empty() && (c.ell == 0 || c.m == 0)) throw UsageError("verify needs -l and -m or --config");
      return cmd_verify(c, out, err);
    }
    if (*decompose) return cmd_decompose(c, out);
    if (*strings) return cmd_strings(c, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace plucker
