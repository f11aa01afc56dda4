#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tinv/mappings.hpp"

namespace tinv {
namespace {

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 3);
  return std::string(buf, res.ptr);
}

nlohmann::json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json to_json(const InvarianceReport& report) {
  nlohmann::json j;
  j["tol"] = report.tol;
  j["passed"] = report.passed();
  auto& results = j["invariants"] = nlohmann::json::array();
  for (const auto& r : report.results) {
    nlohmann::json e;
    e["name"] = r.name;
    e["max_abs"] = number_or_null(r.max_abs);
    e["passed"] = r.passed;
    auto& pts = e["points"] = nlohmann::json::array();
    for (const auto& p : r.points) {
      nlohmann::json pj{{"point", p.point}, {"max_abs", number_or_null(p.max_abs)}};
      if (!p.error.empty()) pj["error"] = p.error;
      pts.push_back(std::move(pj));
    }
    results.push_back(std::move(e));
  }
  return j;
}

std::string to_table(const InvarianceReport& report) {
  std::size_t width = 9;
  for (const auto& r : report.results) width = std::max(width, r.name.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "invariant" << "  "
     << std::setw(10) << "max_abs" << "  " << std::setw(6) << "points" << "  verdict\n";
  for (const auto& r : report.results) {
    os << std::setw(static_cast<int>(width)) << r.name << "  " << std::setw(10) << sci(r.max_abs)
       << "  " << std::setw(6) << r.points.size() << "  " << (r.passed ? "ok" : "FAIL") << '\n';
    for (const auto& p : r.points) {
      if (!p.error.empty()) os << "  error: " << p.error << '\n';
    }
  }
  os << "tolerance " << sci(report.tol) << ": " << (report.passed() ? "all invariant" : "not invariant")
     << '\n';
  return os.str();
}

}  // namespace tinv
