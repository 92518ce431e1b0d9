#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "zlab/centralizer.hpp"
#include "zlab/cli.hpp"
#include "zlab/errors.hpp"
#include "zlab/toda.hpp"

namespace zlab::cli {

namespace {

using json = nlohmann::json;

json real_json(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string real_text(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_json(v(k)));
  return out;
}

// Representative of a class in PGL_n: scaled so that the first entry of
// largest modulus (row-major) equals 1.
CMatrix normalized_representative(const CMatrix& g) {
  Eigen::Index bi = 0;
  Eigen::Index bj = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (std::abs(g(i, j)) > best * (1.0 + 1e-12)) {
        best = std::abs(g(i, j));
        bi = i;
        bj = j;
      }
    }
  }
  return g / g(bi, bj);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

TodaPoint input_point(const RunConfig& cfg, const ChevalleyData& chev) {
  const CVector diag = cfg.diag ? *cfg.diag : CVector::Zero(cfg.n);
  const CVector roots = cfg.roots ? *cfg.roots : CVector::Ones(cfg.n - 1);
  try {
    TodaPoint x(diag, roots);
    if (!in_embedding_domain(chev, x, cfg.tol)) {
      throw UsageError("input point is outside V: F(x) is not in the chamber image");
    }
    return x;
  } catch (const InvalidElement& e) {
    throw UsageError(std::string("invalid Toda point: ") + e.what());
  }
}

json check_json(const CheckResult& c) {
  json j;
  j["name"] = c.name;
  j["max_deviation"] = real_json(c.max_deviation);
  j["tolerance"] = real_json(c.tolerance);
  j["bound"] = c.lower_bound ? "lower" : "upper";
  j["pass"] = c.pass;
  j["samples"] = c.samples;
  j["skipped"] = c.skipped;
  j["errors"] = c.errors;
  if (!c.first_error.empty()) j["first_error"] = c.first_error;
  return j;
}

}  // namespace

std::string render_report(const Report& report, const std::string& command, Format format) {
  if (format == Format::Csv) {
    std::string out = "name,max_deviation,tolerance,bound,pass,samples,skipped,errors,first_error\n";
    for (const auto& c : report.checks) {
      out += c.name + "," + real_text(c.max_deviation) + "," + real_text(c.tolerance) + "," +
             (c.lower_bound ? "lower" : "upper") + "," + (c.pass ? "true" : "false") + "," +
             std::to_string(c.samples) + "," + std::to_string(c.skipped) + "," +
             std::to_string(c.errors) + "," + csv_quote(c.first_error) + "\n";
    }
    return out;
  }
  json j;
  j["command"] = command;
  j["n"] = report.n;
  j["seed"] = report.seed;
  j["pass"] = report.pass();
  j["checks"] = json::array();
  for (const auto& c : report.checks) j["checks"].push_back(check_json(c));
  return j.dump(2) + "\n";
}

CommandResult cmd_check(const RunConfig& cfg) {
  validate(cfg);
  const Report rep = run_suite(cfg.suite(), cfg.module);
  return {rep.pass() ? 0 : 1, render_report(rep, "check", cfg.format)};
}

CommandResult cmd_cjl(const RunConfig& cfg) {
  validate(cfg);
  SuiteConfig s = cfg.suite();
  s.tol.fd_step = cfg.fd_step;
  Report rep;
  rep.n = cfg.n;
  rep.seed = cfg.seed;
  rep.checks = check_cjl_pullback(s);
  return {rep.pass() ? 0 : 1, render_report(rep, "cjl", cfg.format)};
}

CommandResult cmd_flow(const RunConfig& cfg) {
  validate(cfg);
  const ChevalleyData chev = build_chevalley(cfg.n);
  const TodaPoint x0 = input_point(cfg, chev);
  const InvariantVector f0 = invariants(x0.matrix());

  struct Row {
    std::optional<TodaPoint> point;
    InvariantVector f;
    std::string marker;
  };
  std::vector<Row> rows(cfg.times.size());
  parallel_for(static_cast<int>(cfg.times.size()), [&](int k) {
    Row& row = rows[static_cast<std::size_t>(k)];
    try {
      row.point = toda_flow(chev, cfg.flow_index, cfg.times[static_cast<std::size_t>(k)], x0,
                            cfg.tol);
      row.f = invariants(row.point->matrix());
    } catch (const NotInGStar& e) {
      row.marker = "NotInGStar(minor=" + std::to_string(e.minor()) + ")";
    } catch (const std::exception& e) {
      row.marker = std::string("error: ") + e.what();
    }
  });

  int exit_code = 0;
  const double drift_tol = 1e-8;
  for (const Row& row : rows) {
    if (!row.point) {
      exit_code = 1;
    } else if ((row.f - f0).norm() > drift_tol * (1.0 + f0.norm())) {
      exit_code = 1;
    }
  }

  const int n = cfg.n;
  const int r = n - 1;
  if (cfg.format == Format::Csv) {
    std::string out = "t";
    for (int k = 1; k <= n; ++k) out += ",a" + std::to_string(k);
    for (int k = 1; k <= r; ++k) out += ",y" + std::to_string(k);
    for (int k = 1; k <= r; ++k) out += ",f" + std::to_string(k);
    out += "\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out += format_complex(cfg.times[k]);
      const Row& row = rows[k];
      if (!row.point) {
        out += "," + csv_quote(row.marker);
        for (int c = 1; c < n + 2 * r; ++c) out += ",";
      } else {
        for (int c = 0; c < n; ++c) out += "," + format_complex(row.point->diag_part()(c));
        for (int c = 0; c < r; ++c) out += "," + format_complex(row.point->root_coords()(c));
        for (int c = 0; c < r; ++c) out += "," + format_complex(row.f(c));
      }
      out += "\n";
    }
    return {exit_code, out};
  }
  json j;
  j["command"] = "flow";
  j["n"] = n;
  j["i"] = cfg.flow_index;
  j["rows"] = json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    json row;
    row["t"] = complex_json(cfg.times[k]);
    if (!rows[k].point) {
      row["error"] = rows[k].marker;
    } else {
      row["diag"] = vector_json(rows[k].point->diag_part());
      row["roots"] = vector_json(rows[k].point->root_coords());
      row["invariants"] = vector_json(rows[k].f);
    }
    j["rows"].push_back(std::move(row));
  }
  return {exit_code, j.dump() + "\n"};
}

CommandResult cmd_embed(const RunConfig& cfg) {
  validate(cfg);
  const ChevalleyData chev = build_chevalley(cfg.n);
  const TodaPoint x = input_point(cfg, chev);
  const ZPoint p = embed_in_centralizer(chev, x, cfg.tol);
  const TodaPoint back = embedding_inverse(chev, p, cfg.tol);
  const double err = std::max(toda_distance(back, x),
                              z_point_distance(embed_in_centralizer(chev, back, cfg.tol), p));
  const double tol = threshold(cfg.suite(), "toda.embedding_roundtrip", 1e-8);
  const int exit_code = err <= tol ? 0 : 1;
  const CMatrix g = normalized_representative(p.g().matrix());

  if (cfg.format == Format::Csv) {
    std::string out = "field,row,col,value\n";
    const auto dump = [&](const char* field, const CMatrix& m) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          out += std::string(field) + "," + std::to_string(i + 1) + "," + std::to_string(c + 1) +
                 "," + format_complex(m(i, c)) + "\n";
        }
      }
    };
    dump("g", g);
    dump("x", p.x().matrix());
    out += "roundtrip_error,,," + real_text(err) + "\n";
    return {exit_code, out};
  }
  json j;
  j["command"] = "embed";
  j["n"] = cfg.n;
  j["point"] = {{"diag", vector_json(x.diag_part())}, {"roots", vector_json(x.root_coords())}};
  j["g"] = {{"mod_scalar", true}, {"matrix", matrix_json(g)}};
  j["x"] = matrix_json(p.x().matrix());
  j["roundtrip_error"] = real_json(err);
  j["tolerance"] = tol;
  j["pass"] = exit_code == 0;
  return {exit_code, j.dump() + "\n"};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  RunConfig cfg;
  CommandResult result;
  try {
    cfg = parse_args(argc, argv);
    if (cfg.command == "check") {
      result = cmd_check(cfg);
    } else if (cfg.command == "flow") {
      result = cmd_flow(cfg);
    } else if (cfg.command == "embed") {
      result = cmd_embed(cfg);
    } else {
      result = cmd_cjl(cfg);
    }
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (cfg.out_path.empty()) {
    out << result.output;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
      err << "cannot write " << cfg.out_path << "\n";
      return 2;
    }
    file << result.output;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s: exit %d, %.3f s wall\n", cfg.command.c_str(),
                result.exit_code, secs);
  err << buf;
  return result.exit_code;
}

}  // namespace zlab::cli
