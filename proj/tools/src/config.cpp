#include "tinv_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>

#include "tinv_cli/output.hpp"

namespace tinv::cli {
namespace {

using nlohmann::json;

const Signature kCovector{Variance::lower};
const Signature kVector{Variance::upper};
const Signature kAffinor{Variance::upper, Variance::lower};
const Signature kBilinear{Variance::lower, Variance::lower};
const Signature kConnection{Variance::upper, Variance::lower, Variance::lower};

std::size_t power(int n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<std::size_t>(n);
  return r;
}

std::string expr_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_double(v.get<double>());
  throw ConfigError(where + ": expected an expression string or a number");
}

std::string normalized(const std::string& text, const Chart& chart, const std::string& where) {
  try {
    return print(parse(text, chart), chart);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.position());
  }
}

/// "1,2,3" -> {0,1,2}
std::vector<int> parse_key(const std::string& key, int dim, std::size_t rank, const std::string& where) {
  std::vector<int> idx;
  const char* p = key.data();
  const char* end = key.data() + key.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == ',')) ++p;
    if (p == end) break;
    int v = 0;
    auto [q, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) throw ConfigError(where + ": bad index key '" + key + "'");
    if (v < 1 || v > dim) throw ConfigError(where + ": index out of range in '" + key + "'");
    idx.push_back(v - 1);
    p = q;
  }
  if (idx.size() != rank) {
    throw ConfigError(where + ": key '" + key + "' needs " + std::to_string(rank) + " indices");
  }
  return idx;
}

void fill_dense(const json& v, const Chart& chart, std::size_t depth, std::size_t rank,
                std::size_t offset, std::vector<std::string>& out, const std::string& where) {
  const int n = chart.dim();
  if (depth == rank) {
    out[offset] = normalized(expr_text(v, where), chart, where);
    return;
  }
  if (!v.is_array() || v.size() != static_cast<std::size_t>(n)) {
    throw ConfigError(where + ": expected an array of " + std::to_string(n) + " entries");
  }
  const std::size_t stride = power(n, rank - depth - 1);
  for (int i = 0; i < n; ++i) {
    fill_dense(v[static_cast<std::size_t>(i)], chart, depth + 1, rank, offset + stride * i, out, where);
  }
}

TensorSpec parse_tensor(const json& v, const Chart& chart, const Signature& sig,
                        const std::string& where) {
  const std::size_t rank = sig.size();
  const int n = chart.dim();
  TensorSpec t{sig, std::vector<std::string>(power(n, rank), "0")};
  if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      const auto idx = parse_key(key, n, rank, where);
      std::size_t off = 0;
      for (int i : idx) off = off * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
      t.entries[off] = normalized(expr_text(val, where + "[" + key + "]"), chart, where + "[" + key + "]");
    }
  } else {
    fill_dense(v, chart, 0, rank, 0, t.entries, where);
  }
  return t;
}

TensorSpec zero_tensor(int n, const Signature& sig) {
  return {sig, std::vector<std::string>(power(n, sig.size()), "0")};
}

json dense_json(const TensorSpec& t, int n) {
  const std::size_t rank = t.variance.size();
  if (rank == 1) return t.entries;
  json rows = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(t.entries[static_cast<std::size_t>(i * n + j)]);
    rows.push_back(std::move(row));
  }
  return rows;
}

json sparse_json(const TensorSpec& t, int n) {
  json m = json::object();
  for (std::size_t off = 0; off < t.entries.size(); ++off) {
    if (t.entries[off] == "0") continue;
    std::string key;
    std::size_t rem = off;
    std::vector<int> idx(t.variance.size());
    for (std::size_t s = idx.size(); s-- > 0;) {
      idx[s] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    for (std::size_t s = 0; s < idx.size(); ++s) {
      if (s) key += ',';
      key += std::to_string(idx[s] + 1);
    }
    m[key] = t.entries[off];
  }
  return m;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, val] : obj.items()) {
    (void)val;
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

OmegaBlock parse_omega(const json& v, const Chart& chart, const std::string& where) {
  check_keys(v, {"s", "rho", "sigma", "F", "phi", "sigma2"}, where);
  const int n = chart.dim();
  OmegaBlock b{{}, zero_tensor(n, kCovector), zero_tensor(n, kCovector), zero_tensor(n, kAffinor),
               zero_tensor(n, kVector), zero_tensor(n, kBilinear)};
  if (!v.contains("s")) throw ConfigError(where + ": missing s = [s1, s2, s3]");
  const auto s = v.at("s").get<std::vector<double>>();
  if (s.size() != 3) throw ConfigError(where + ": s needs three values");
  b.s = {s[0], s[1], s[2]};
  if (v.contains("rho")) b.rho = parse_tensor(v["rho"], chart, kCovector, where + ".rho");
  if (v.contains("sigma")) b.sigma = parse_tensor(v["sigma"], chart, kCovector, where + ".sigma");
  if (v.contains("F")) b.F = parse_tensor(v["F"], chart, kAffinor, where + ".F");
  if (v.contains("phi")) b.phi = parse_tensor(v["phi"], chart, kVector, where + ".phi");
  if (v.contains("sigma2")) b.sigma2 = parse_tensor(v["sigma2"], chart, kBilinear, where + ".sigma2");
  return b;
}

json emit_omega(const OmegaBlock& b, int n) {
  return {{"s", {b.s.s1, b.s.s2, b.s.s3}},   {"rho", dense_json(b.rho, n)},
          {"sigma", dense_json(b.sigma, n)}, {"F", dense_json(b.F, n)},
          {"phi", dense_json(b.phi, n)},     {"sigma2", dense_json(b.sigma2, n)}};
}

OmegaSpec make_omega(const Chart& chart, const OmegaBlock& b) {
  OmegaSpec w(chart.dim(), b.s);
  w.rho = make_field(chart, b.rho);
  w.sigma = make_field(chart, b.sigma);
  w.F = make_field(chart, b.F);
  w.phi = make_field(chart, b.phi);
  w.sigma2 = make_field(chart, b.sigma2);
  return w;
}

}  // namespace

std::string_view to_string(RicciConvention c) noexcept {
  return c == RicciConvention::last ? "last" : "middle";
}

RicciConvention ricci_from_string(std::string_view s) {
  if (s == "last") return RicciConvention::last;
  if (s == "middle") return RicciConvention::middle;
  throw ConfigError("ricci convention must be 'last' or 'middle'");
}

JobConfig parse_config(const json& doc) {
  check_keys(doc, {"name", "chart", "space", "omega", "omega_bar", "torsion_delta", "fplanar", "points",
                   "outputs", "tol", "ricci_convention"},
             "config");
  JobConfig cfg;
  try {
    cfg.name = doc.value("name", "");
    if (!doc.contains("chart")) throw ConfigError("config: missing chart");
    cfg.chart = doc.at("chart").get<std::vector<std::string>>();
    const Chart chart = [&] {
      try {
        return Chart(cfg.chart);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("chart: ") + e.what());
      }
    }();
    const int n = chart.dim();

    if (!doc.contains("space")) throw ConfigError("config: missing space");
    const json& space = doc.at("space");
    check_keys(space, {"metric", "connection"}, "space");
    if (space.contains("metric") == space.contains("connection")) {
      throw ConfigError("space: give exactly one of metric or connection");
    }
    if (space.contains("metric")) {
      cfg.kind = SpaceKind::metric;
      cfg.space = parse_tensor(space["metric"], chart, kBilinear, "space.metric");
    } else {
      cfg.kind = SpaceKind::connection;
      cfg.space = parse_tensor(space["connection"], chart, kConnection, "space.connection");
    }

    if (doc.contains("omega")) cfg.omega = parse_omega(doc["omega"], chart, "omega");
    if (doc.contains("omega_bar")) cfg.omega_bar = parse_omega(doc["omega_bar"], chart, "omega_bar");
    if (doc.contains("torsion_delta")) {
      cfg.torsion_delta = parse_tensor(doc["torsion_delta"], chart, kConnection, "torsion_delta");
    }
    if (doc.contains("fplanar")) {
      const json& f = doc["fplanar"];
      check_keys(f, {"psi", "sigma", "F"}, "fplanar");
      FPlanarBlock b{zero_tensor(n, kCovector), zero_tensor(n, kCovector), zero_tensor(n, kAffinor)};
      if (f.contains("psi")) b.psi = parse_tensor(f["psi"], chart, kCovector, "fplanar.psi");
      if (f.contains("sigma")) b.sigma = parse_tensor(f["sigma"], chart, kCovector, "fplanar.sigma");
      if (f.contains("F")) b.F = parse_tensor(f["F"], chart, kAffinor, "fplanar.F");
      cfg.fplanar = std::move(b);
    }
    if (cfg.omega_bar && !cfg.omega) throw ConfigError("omega_bar given without omega");
    if (cfg.omega && cfg.omega_bar && !(cfg.omega->s == cfg.omega_bar->s)) {
      throw ConfigError("omega and omega_bar must share s");
    }
    if (cfg.fplanar && cfg.omega) throw ConfigError("give either fplanar or omega blocks, not both");
    if (cfg.torsion_delta && !cfg.omega_bar) throw ConfigError("torsion_delta needs an omega/omega_bar pair");

    if (doc.contains("points")) {
      const json& p = doc["points"];
      if (p.is_array()) {
        cfg.points.list = p.get<std::vector<std::vector<double>>>();
      } else {
        check_keys(p, {"list", "seed", "count", "box"}, "points");
        if (p.contains("list")) cfg.points.list = p["list"].get<std::vector<std::vector<double>>>();
        cfg.points.seed = p.value("seed", std::uint64_t{1});
        cfg.points.count = p.value("count", 0);
        if (p.contains("box")) {
          const auto box = p["box"].get<std::vector<double>>();
          if (box.size() != 2 || !(box[0] < box[1])) throw ConfigError("points.box must be [lo, hi]");
          cfg.points.lo = box[0];
          cfg.points.hi = box[1];
        }
      }
      for (const auto& pt : cfg.points.list) {
        if (static_cast<int>(pt.size()) != n) {
          throw ConfigError("points: every point needs " + std::to_string(n) + " coordinates");
        }
      }
      if (cfg.points.count < 0) throw ConfigError("points.count must be non-negative");
    }
    if (doc.contains("outputs")) {
      const json& o = doc["outputs"];
      check_keys(o, {"objects", "invariants", "format"}, "outputs");
      cfg.objects = o.value("objects", std::vector<std::string>{});
      cfg.invariants = o.value("invariants", std::vector<std::string>{});
      for (const auto& name : cfg.invariants) (void)invariant_from_string(name);
      const auto& known = object_names();
      for (const auto& name : cfg.objects) {
        if (std::find(known.begin(), known.end(), name) == known.end()) {
          throw ConfigError("outputs.objects: unknown object '" + name + "'");
        }
      }
      cfg.format = o.value("format", "csv");
      if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("outputs.format must be csv or json");
    }
    cfg.tol = doc.value("tol", 1e-8);
    if (!(cfg.tol >= 0.0)) throw ConfigError("tol must be non-negative");
    cfg.ricci = ricci_from_string(doc.value("ricci_convention", "last"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

json emit_config(const JobConfig& cfg) {
  const int n = static_cast<int>(cfg.chart.size());
  json doc;
  doc["name"] = cfg.name;
  doc["chart"] = cfg.chart;
  if (cfg.kind == SpaceKind::metric) {
    doc["space"] = {{"metric", dense_json(cfg.space, n)}};
  } else {
    doc["space"] = {{"connection", sparse_json(cfg.space, n)}};
  }
  if (cfg.omega) doc["omega"] = emit_omega(*cfg.omega, n);
  if (cfg.omega_bar) doc["omega_bar"] = emit_omega(*cfg.omega_bar, n);
  if (cfg.torsion_delta) doc["torsion_delta"] = sparse_json(*cfg.torsion_delta, n);
  if (cfg.fplanar) {
    doc["fplanar"] = {{"psi", dense_json(cfg.fplanar->psi, n)},
                      {"sigma", dense_json(cfg.fplanar->sigma, n)},
                      {"F", dense_json(cfg.fplanar->F, n)}};
  }
  doc["points"] = {{"list", cfg.points.list},
                   {"seed", cfg.points.seed},
                   {"count", cfg.points.count},
                   {"box", {cfg.points.lo, cfg.points.hi}}};
  doc["outputs"] = {{"objects", cfg.objects}, {"invariants", cfg.invariants}, {"format", cfg.format}};
  doc["tol"] = cfg.tol;
  doc["ricci_convention"] = std::string(to_string(cfg.ricci));
  return doc;
}

JobConfig load_config(const std::string& name_or_path) {
  if (auto doc = builtin_config(name_or_path)) return parse_config(*doc);
  if (!std::filesystem::exists(name_or_path)) {
    std::string names;
    for (const auto& b : builtin_names()) names += (names.empty() ? "" : ", ") + b;
    throw ConfigError("config '" + name_or_path + "' is neither a file nor a built-in (" + names + ")");
  }
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("cannot read config '" + name_or_path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + name_or_path + "': " + e.what());
  }
  return parse_config(doc);
}

TensorField make_field(const Chart& chart, const TensorSpec& spec) {
  return TensorField::parse(chart, spec.variance, spec.entries);
}

std::vector<std::vector<double>> job_points(const JobConfig& cfg) {
  const int n = static_cast<int>(cfg.chart.size());
  std::vector<std::vector<double>> pts = cfg.points.list;
  int count = cfg.points.count;
  if (pts.empty() && count == 0) count = 20;
  auto sampled = sample_points(cfg.points.seed, count, n, cfg.points.lo, cfg.points.hi);
  pts.insert(pts.end(), sampled.begin(), sampled.end());
  return pts;
}

Job build_job(const JobConfig& cfg) {
  const Chart chart(cfg.chart);
  const TensorField space = make_field(chart, cfg.space);
  Space source = cfg.kind == SpaceKind::metric ? Space::from_metric(space) : Space::from_connection(space);
  Job job{chart, source, std::nullopt, std::nullopt, std::nullopt};
  if (cfg.fplanar) {
    FPlanarSpec f{make_field(chart, cfg.fplanar->psi), make_field(chart, cfg.fplanar->sigma),
                  make_field(chart, cfg.fplanar->F)};
    job.target = fplanar_build(source, f);
    job.omegas = fplanar_as_omega(source, f);
    job.fplanar = std::move(f);
  } else if (cfg.omega) {
    MappingSpec m{make_omega(chart, *cfg.omega), make_omega(chart, cfg.omega_bar.value_or(*cfg.omega)),
                  Field()};
    if (cfg.torsion_delta) m.torsion_delta = make_field(chart, *cfg.torsion_delta);
    const auto pts = job_points(cfg);
    m.source.check_symmetric(pts);
    m.target.check_symmetric(pts);
    if (cfg.omega_bar) job.target = apply_mapping(source, m);
    job.omegas = std::move(m);
  }
  return job;
}

}  // namespace tinv::cli
