#include "nilcycle/bifurcation/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nilcycle/error.hpp"

namespace nilcycle {

using Json = nlohmann::ordered_json;

bool ExperimentReport::passed() const {
  for (const auto& c : criteria) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json rational(const Rational& q) { return to_string(q); }

Json rationals(const std::vector<Rational>& qs) {
  Json out = Json::array();
  for (const auto& q : qs) out.push_back(rational(q));
  return out;
}

std::string_view side_name(Side s) { return s == Side::kPositive ? "pos" : "neg"; }

std::string_view crossing_name(Crossing c) { return c == Crossing::kPlusToMinus ? "+-" : "-+"; }

Json to_json(const NilpotentClass& c) {
  Json j;
  j["n"] = c.n;
  j["a"] = rational(c.a);
  j["b"] = rational(c.b);
  j["discriminant"] = rational(c.discriminant());
  j["monodromic"] = c.monodromic;
  j["p_n"] = c.p_n;
  j["low_order_divergence"] = c.low_order_divergence;
  return j;
}

Json to_json(const FocalReport& r) {
  Json j;
  j["n"] = r.n;
  j["p_n"] = r.p_n;
  j["B"] = rationals(r.B);
  j["first_odd_nonzero"] = r.first_odd_nonzero ? Json(*r.first_odd_nonzero) : Json(nullptr);
  j["focus_order"] = r.focus_order ? Json(*r.focus_order) : Json(nullptr);
  j["stability"] = std::string(to_string(r.stability));
  j["node_range"] = r.node_range;
  j["monodromic"] = r.monodromic;
  j["symmetric_center"] = r.symmetric_center;
  j["case"] = std::string(to_string(r.hypothesis_case));
  return j;
}

Json to_json(const FittedFocal& f) {
  Json j;
  Json v = Json::array();
  for (double x : f.v) v.push_back(number(x));
  j["v"] = v;
  Json se = Json::array();
  for (double x : f.standard_error) se.push_back(number(x));
  j["standard_error"] = se;
  j["residual"] = number(f.residual);
  j["condition"] = number(f.condition);
  j["ill_conditioned"] = f.ill_conditioned;
  return j;
}

Json to_json(const CycleSet& s) {
  Json j;
  j["count"] = s.count;
  j["r_min"] = number(s.r_min);
  j["r_max"] = number(s.r_max);
  Json brackets = Json::array();
  for (const auto& b : s.brackets) {
    brackets.push_back(Json{{"lo", number(b.lo)}, {"hi", number(b.hi)}, {"crossing", crossing_name(b.crossing)}});
  }
  j["brackets"] = brackets;
  Json roots = Json::array();
  for (const auto& r : s.roots) {
    Json root;
    root["x"] = number(r.x);
    root["crossing"] = crossing_name(r.crossing);
    root["paired_negative"] = r.paired_negative ? number(*r.paired_negative) : Json(nullptr);
    roots.push_back(root);
  }
  j["roots"] = roots;
  j["all_paired"] = s.all_paired();
  j["scan_points"] = s.scan.size();
  j["warnings"] = s.warnings;
  return j;
}

Json to_json(const UnfoldingPlan& p) {
  Json j;
  j["k"] = p.target_count;
  j["eps"] = rational(p.eps);
  j["ratio"] = rational(p.ratio);
  j["ladder_indices"] = p.ladder_indices;
  j["target_B"] = rationals(p.target_B);
  Json assign;
  for (const auto& [name, value] : p.assignments) assign[name] = rational(value);
  j["assignments"] = assign.is_null() ? Json::object() : assign;
  j["jacobian_rank"] = p.jacobian_rank ? Json(*p.jacobian_rank) : Json(nullptr);
  Json sv = Json::array();
  for (double s : p.singular_values) sv.push_back(number(s));
  j["singular_values"] = sv;
  j["ladder_holds"] = ladder_holds(p);
  j["realized"] = format_system(p.realized);
  return j;
}

Json to_json(const ReturnMapTable& t) {
  Json j;
  j["side"] = side_name(t.side);
  j["samples"] = t.samples.size();
  j["min_denominator"] = number(t.min_denominator);
  j["steps"] = t.stats.steps;
  j["rejected"] = t.stats.rejected;
  return j;
}

template <class T>
Json named(const Named<T>& items) {
  Json j = Json::object();
  for (const auto& [name, value] : items) j[name] = to_json(value);
  return j;
}

// nlohmann prints doubles with the shortest round-trip form; the report
// format fixes 17 significant digits instead.
void write(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 2);
      }
      os << '\n' << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        write(os, v, indent + 2);
      }
      os << '\n' << close << ']';
      return;
    }
    case Json::value_t::number_float: {
      std::string s = format_float(j.get<double>());
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      os << s;
      return;
    }
    default:
      os << j.dump();
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  os << content;
  if (!os) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace

std::string render_json(const ExperimentReport& r) {
  Json j;
  j["experiment"] = r.experiment;
  j["passed"] = r.passed();
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  if (r.classification) j["classification"] = to_json(*r.classification);
  if (r.focal) j["focal"] = to_json(*r.focal);
  if (r.filippov) j["filippov"] = std::string(to_string(*r.filippov));
  if (!r.fits.empty()) j["fits"] = named(r.fits);
  if (!r.cycles.empty()) j["cycles"] = named(r.cycles);
  if (!r.plans.empty()) j["plans"] = named(r.plans);
  if (!r.tables.empty()) j["tables"] = named(r.tables);
  if (!r.metrics.empty()) {
    Json m = Json::object();
    for (const auto& [k, v] : r.metrics) m[k] = number(v);
    j["metrics"] = m;
  }
  Json criteria = Json::array();
  for (const auto& c : r.criteria) {
    criteria.push_back(Json{{"id", c.id}, {"description", c.description}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["criteria"] = criteria;
  j["notes"] = r.notes;
  j["artifacts"] = r.artifacts;
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

std::string render_plotdata(const ExperimentReport& r) {
  std::ostringstream os;
  bool first = true;
  auto block = [&](const std::string& header) {
    if (!first) os << "\n\n";
    first = false;
    os << "# " << header << '\n';
  };
  for (const auto& [name, table] : r.tables) {
    block("table " + name + ": x0 d");
    for (const auto& s : table.samples) os << format_float(s.x0) << ' ' << format_float(s.d) << '\n';
  }
  for (const auto& [name, set] : r.cycles) {
    block("scan " + name + ": x0 d");
    for (const auto& [x, d] : set.scan) os << format_float(x) << ' ' << format_float(d) << '\n';
    block("brackets " + name + ": lo hi crossing");
    for (const auto& b : set.brackets) {
      os << format_float(b.lo) << ' ' << format_float(b.hi) << ' ' << crossing_name(b.crossing) << '\n';
    }
  }
  for (const auto& [name, line] : r.polylines) {
    block("orbit " + name + ": x y");
    for (const auto& [x, y] : line) os << format_float(x) << ' ' << format_float(y) << '\n';
  }
  return os.str();
}

void emit_report(ExperimentReport& report, const std::vector<ReportFormat>& formats,
                 const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  const std::string stem = report.experiment;
  bool json = false;
  for (const auto f : formats) {
    if (f == ReportFormat::kJson) {
      json = true;
    } else if (f == ReportFormat::kCsv) {
      for (const auto& [name, table] : report.tables) {
        const std::string file = stem + "_" + name + ".csv";
        std::ostringstream os;
        write_csv(os, table);
        write_file(dir / file, os.str());
        report.artifacts.push_back(file);
      }
    } else if (!report.tables.empty() || !report.cycles.empty() || !report.polylines.empty()) {
      const std::string file = stem + ".plot.dat";
      write_file(dir / file, render_plotdata(report));
      report.artifacts.push_back(file);
    }
  }
  if (json) {
    const std::string file = stem + ".json";
    report.artifacts.push_back(file);
    write_file(dir / file, render_json(report));
  }
}

}  // namespace nilcycle
