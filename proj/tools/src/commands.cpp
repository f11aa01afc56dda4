#include "tinv_cli/commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "tinv_cli/audit.hpp"
#include "tinv_cli/output.hpp"

namespace tinv::cli {
namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << text;
}

/// Config with command line overrides applied.
JobConfig effective_config(const RunOptions& opts, const std::string& fallback) {
  JobConfig cfg = load_config(opts.config.empty() ? fallback : opts.config);
  if (!opts.points.empty()) {
    for (const auto& p : opts.points) {
      if (p.size() != cfg.chart.size()) {
        throw ConfigError("--point needs " + std::to_string(cfg.chart.size()) + " coordinates");
      }
    }
    cfg.points.list = opts.points;
    cfg.points.count = 0;
  }
  if (opts.points_seed) {
    cfg.points.seed = *opts.points_seed;
    if (cfg.points.count == 0) cfg.points.count = 20;
  }
  if (opts.tol) cfg.tol = *opts.tol;
  if (opts.format) {
    if (*opts.format != "csv" && *opts.format != "json") throw ConfigError("--format must be csv or json");
    cfg.format = *opts.format;
  }
  if (opts.ricci) cfg.ricci = *opts.ricci;
  return cfg;
}

std::vector<Invariant> requested_invariants(const JobConfig& cfg, const Job& job) {
  std::vector<Invariant> out;
  if (!cfg.invariants.empty()) {
    for (const auto& n : cfg.invariants) out.push_back(invariant_from_string(n));
    return out;
  }
  out = classical_invariants();
  if (job.omegas) out.insert(out.end(), omega_invariants().begin(), omega_invariants().end());
  if (job.fplanar) {
    out.insert(out.end(), fplanar_literal_invariants().begin(), fplanar_literal_invariants().end());
  }
  return out;
}

std::vector<std::string> command_objects(const std::string& command, const JobConfig& cfg) {
  if (command == "christoffel") return {"christoffel"};
  if (command == "curvature") return {"curvature"};
  if (command == "ricci") {
    if (cfg.kind == SpaceKind::connection) return {"ricci", "ricci_antisymmetric"};
    return {"ricci"};
  }
  if (command == "thomas") return {"thomas"};
  if (command == "weyl") {
    if (cfg.kind == SpaceKind::metric) return {"weyl", "riemannian_weyl"};
    return {"weyl"};
  }
  if (command == "example-r3") return {"christoffel", "thomas", "calF", "calF_trace", "fplanar_rho", "weyl"};
  return cfg.objects;
}

void emit(const std::string& stem, const std::string& format, const std::string& csv_text,
          const nlohmann::json& json_doc, const RunOptions& opts, std::ostream& out) {
  const std::string body = format == "json" ? json_doc.dump(2) + "\n" : csv_text;
  if (opts.out_dir) {
    fs::create_directories(*opts.out_dir);
    write_file(fs::path(*opts.out_dir) / (stem + "." + format), body);
  } else {
    out << body;
  }
}

int tables(const std::string& command, const RunOptions& opts, std::ostream& out) {
  const JobConfig cfg = effective_config(opts, command == "example-r3" ? "example-r3" : "");
  const Job job = build_job(cfg);
  const auto points = job_points(cfg);
  std::vector<ObjectTable> t;
  if (command == "invariants") {
    t = compute_invariants(job, requested_invariants(cfg, job), points, cfg.ricci);
  } else {
    const auto names = command_objects(command, cfg);
    if (names.empty()) throw ConfigError("no objects requested (outputs.objects is empty)");
    t = compute_objects(job, names, points, cfg.ricci);
  }
  emit(command, cfg.format, cfg.format == "csv" ? to_csv(t, job.chart) : std::string(),
       cfg.format == "json" ? to_json(t, job.chart) : nlohmann::json(), opts, out);
  return kOk;
}

int verify(const RunOptions& opts, std::ostream& out) {
  const JobConfig cfg = effective_config(opts, "");
  const Job job = build_job(cfg);
  if (!job.target) throw ConfigError("verify needs a mapping: an fplanar block or an omega/omega_bar pair");
  VerifyRequest rq;
  rq.invariants = requested_invariants(cfg, job);
  rq.omegas = job.omegas;
  if (job.fplanar) rq.fplanar = fplanar_sides(*job.fplanar);
  rq.ricci = cfg.ricci;
  rq.source_derivatives = opts.source_derivatives;
  rq.tol = cfg.tol;
  const InvarianceReport report = verify_invariance(job.source, *job.target, rq, job_points(cfg));
  const nlohmann::json doc = to_json(report);
  if (opts.out_dir) {
    fs::create_directories(*opts.out_dir);
    write_file(fs::path(*opts.out_dir) / "report.json", doc.dump(2) + "\n");
    write_file(fs::path(*opts.out_dir) / "report.txt", to_table(report));
  }
  out << (cfg.format == "json" ? doc.dump(2) + "\n" : to_table(report));
  return report.passed() ? kOk : kVerificationFailed;
}

int audit(const RunOptions& opts, std::ostream& out) {
  AuditOptions a;
  if (opts.points_seed) a.seed = *opts.points_seed;
  if (opts.tol) a.tol = *opts.tol;
  const nlohmann::json findings = run_audit(a);
  const std::string text = findings_text(findings);
  const fs::path dir = opts.out_dir.value_or(".");
  fs::create_directories(dir);
  write_file(dir / "findings.json", findings.dump(2) + "\n");
  write_file(dir / "findings.txt", text);
  if (opts.format == "json") {
    out << findings.dump(2) << '\n';
  } else {
    out << text << "\nwritten: " << (dir / "findings.json").string() << ", " << (dir / "findings.txt").string()
        << '\n';
  }
  return kOk;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"christoffel", "curvature", "ricci",      "thomas",     "weyl",
                                              "invariants",  "verify",    "example-r3", "audit-paper"};
  return names;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    std::string_view cell = rest.substr(0, comma);
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
    double v = 0.0;
    const auto [q, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || q != cell.data() + cell.size()) {
      throw ConfigError("bad point '" + text + "': expected comma-separated numbers");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

int run(const std::string& command, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (command == "verify") return verify(opts, out);
    if (command == "audit-paper") return audit(opts, out);
    if (command == "example-r3" || command == "invariants" || command == "christoffel" || command == "curvature" ||
        command == "ricci" || command == "thomas" || command == "weyl") {
      return tables(command, opts, out);
    }
    err << "error: unknown command '" << command << "'\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kMathError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace tinv::cli
