#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zlab/cli.hpp"
#include "zlab/lie_core.hpp"

namespace zlab::cli {

namespace {

using json = nlohmann::json;

const char* const kModules[] = {"linalg", "lie_core", "invariants", "kostant_maps", "centralizer",
                                "toda"};

bool known_module(const std::string& m) {
  return std::any_of(std::begin(kModules), std::end(kModules),
                     [&](const char* k) { return m == k; });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError("not a number: '" + text + "'");
  return v;
}

cplx json_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_string()) return parse_complex(v.get<std::string>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw UsageError("expected a complex number (number, [re, im] or \"re+imj\")");
}

CVector json_complex_vector(const json& v, const char* key) {
  if (!v.is_array()) throw UsageError(std::string(key) + " must be an array");
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = json_complex(v[k]);
  return out;
}

}  // namespace

SuiteConfig RunConfig::suite() const {
  SuiteConfig s;
  s.n = n;
  s.seed = seed;
  s.samples = samples;
  s.tol = tol;
  s.thresholds = thresholds;
  return s;
}

cplx parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  if (text.empty()) throw UsageError("empty complex literal");
  const char last = text.back();
  if (last != 'j' && last != 'i') return {parse_real(text), 0.0};
  text.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : text.substr(0, split);
  std::string im = split == std::string::npos ? text : text.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(trim(item)));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::string format_complex(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real() == 0.0 ? 0.0 : z.real(),
                z.imag() == 0.0 ? 0.0 : z.imag());
  return buf;
}

void apply_tolerance(RunConfig& cfg, const std::string& name, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw UsageError("tolerance " + name + " must be a finite non-negative number");
  }
  if (name == "eig") {
    cfg.tol.eig = value;
  } else if (name == "minor") {
    cfg.tol.minor = value;
  } else if (name == "exp") {
    cfg.tol.exp = value;
  } else if (name == "chamber") {
    cfg.tol.chamber = value;
  } else if (name == "kernel") {
    cfg.tol.kernel = value;
  } else if (name == "fd_step") {
    cfg.tol.fd_step = value;
  } else {
    const auto dot = name.find('.');
    if (dot == std::string::npos || !known_module(name.substr(0, dot)) || dot + 1 == name.size()) {
      throw UsageError("unknown tolerance: " + name);
    }
    cfg.thresholds[name] = value;
  }
}

void apply_json_config(RunConfig& cfg, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed JSON config: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("JSON config must be an object");
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "n") {
        cfg.n = v.get<int>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "samples") {
        cfg.samples = v.get<int>();
      } else if (key == "tolerances") {
        if (!v.is_object()) throw UsageError("tolerances must be an object");
        for (const auto& [name, value] : v.items()) apply_tolerance(cfg, name, value.get<double>());
      } else if (key == "module") {
        cfg.module = v.get<std::string>();
      } else if (key == "i") {
        cfg.flow_index = v.get<int>();
      } else if (key == "t") {
        cfg.times.clear();
        if (!v.is_array()) throw UsageError("t must be an array");
        for (const auto& item : v) cfg.times.push_back(json_complex(item));
      } else if (key == "diag") {
        cfg.diag = json_complex_vector(v, "diag");
      } else if (key == "roots") {
        cfg.roots = json_complex_vector(v, "roots");
      } else if (key == "fd_step") {
        cfg.fd_step = v.get<double>();
      } else if (key == "format") {
        const auto f = v.get<std::string>();
        if (f != "json" && f != "csv") throw UsageError("format must be json or csv");
        cfg.format = f == "csv" ? Format::Csv : Format::Json;
        cfg.format_given = true;
      } else if (key == "out") {
        cfg.out_path = v.get<std::string>();
      } else {
        throw UsageError("unknown config key: " + key);
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("ill-typed config value: ") + e.what());
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.n < kMinRank || cfg.n > kMaxRank) {
    throw UsageError("n must lie in [2, 8], got " + std::to_string(cfg.n));
  }
  if (cfg.samples < 1) throw UsageError("samples must be >= 1");
  if (!cfg.module.empty() && !known_module(cfg.module)) {
    throw UsageError("unknown module: " + cfg.module);
  }
  if (cfg.command == "flow" && (cfg.flow_index < 1 || cfg.flow_index > cfg.n - 1)) {
    throw UsageError("flow index i must lie in [1, n - 1]");
  }
  if (cfg.command == "flow" && cfg.times.empty()) throw UsageError("empty time list");
  if (cfg.command == "cjl" && !(cfg.fd_step >= 1e-8 && cfg.fd_step <= 1e-4)) {
    throw UsageError("fd_step must lie in [1e-8, 1e-4]");
  }
  if (cfg.diag && cfg.diag->size() != cfg.n) throw UsageError("diag needs n entries");
  if (cfg.roots && cfg.roots->size() != cfg.n - 1) throw UsageError("roots needs n - 1 entries");
}

RunConfig parse_args(int argc, const char* const* argv) {
  // --tol.<name> cannot be declared up front; peel those off before CLI11.
  std::vector<std::pair<std::string, std::string>> tol_flags;
  std::vector<std::string> rest;
  for (int k = 1; k < argc; ++k) {
    const std::string a = argv[k];
    if (a.rfind("--tol.", 0) == 0) {
      const auto eq = a.find('=');
      if (eq != std::string::npos) {
        tol_flags.emplace_back(a.substr(6, eq - 6), a.substr(eq + 1));
      } else {
        if (k + 1 >= argc) throw UsageError(a + " needs a value");
        tol_flags.emplace_back(a.substr(6), argv[++k]);
      }
    } else {
      rest.push_back(a);
    }
  }

  CLI::App app{"Universal centralizer and Kostant-Toda numerical laboratory", "centralizer_lab"};
  app.require_subcommand(1, 1);
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<std::string> config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> format;
  std::optional<std::string> module;
  std::optional<int> flow_index;
  std::optional<std::string> times;
  std::optional<std::string> diag;
  std::optional<std::string> roots;
  std::optional<double> fd_step;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--n", n, "rank + 1 of sl_n, 2..8");
    sub->add_option("--seed", seed, "64-bit seed");
    sub->add_option("--samples", samples, "samples per check");
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  CLI::App* check = app.add_subcommand("check", "run the property suites");
  common(check);
  check->add_option("--module", module, "restrict to one module");
  CLI::App* flow = app.add_subcommand("flow", "Toda trajectory by factorisation");
  common(flow);
  flow->add_option("--i", flow_index, "flow label, 1..n-1");
  flow->add_option("--t", times, "comma-separated times (complex allowed: 0.3+0.2j)");
  flow->add_option("--diag", diag, "comma-separated diagonal part");
  flow->add_option("--roots", roots, "comma-separated root coordinates");
  CLI::App* embed = app.add_subcommand("embed", "embed a Toda point into the universal centraliser");
  common(embed);
  embed->add_option("--diag", diag, "comma-separated diagonal part");
  embed->add_option("--roots", roots, "comma-separated root coordinates");
  CLI::App* cjl = app.add_subcommand("cjl", "chart pullback of the symplectic form");
  common(cjl);
  cjl->add_option("--fd-step", fd_step, "central difference step, 1e-8..1e-4");

  std::vector<std::string> reversed(rest.rbegin(), rest.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw UsageError("cannot read config file " + *config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    apply_json_config(cfg, buf.str());
  }
  if (n) cfg.n = *n;
  if (seed) cfg.seed = *seed;
  if (samples) cfg.samples = *samples;
  if (out_path) cfg.out_path = *out_path;
  if (format) {
    cfg.format = *format == "csv" ? Format::Csv : Format::Json;
    cfg.format_given = true;
  }
  if (module) cfg.module = *module;
  if (flow_index) cfg.flow_index = *flow_index;
  if (times) cfg.times = parse_complex_list(*times);
  if (diag) {
    const auto v = parse_complex_list(*diag);
    cfg.diag = Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  if (roots) {
    const auto v = parse_complex_list(*roots);
    cfg.roots = Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  if (fd_step) cfg.fd_step = *fd_step;
  for (const auto& [name, value] : tol_flags) apply_tolerance(cfg, name, parse_real(value));
  if (cfg.command == "flow" && !cfg.format_given) cfg.format = Format::Csv;
  validate(cfg);
  return cfg;
}

}  // namespace zlab::cli
