#include "nilcycle/system/planar_system.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "nilcycle/error.hpp"

namespace nilcycle {

std::string_view to_string(SystemKind kind) {
  return kind == SystemKind::kLienard ? "lienard" : "general";
}

PlanarSystem make_lienard(const TruncatedSeries& g, const TruncatedSeries& f, int order,
                          std::string label) {
  PlanarSystem sys;
  sys.kind = SystemKind::kLienard;
  sys.series_order = order;
  sys.label = std::move(label);
  sys.X = BivariateTruncated(order);
  sys.Y = BivariateTruncated(order);
  for (int j = 0; j <= g.order(); ++j) {
    if (sgn(g[j]) != 0) sys.Y.accumulate(j, 0, -g[j]);
  }
  for (int j = 0; j <= f.order(); ++j) {
    if (sgn(f[j]) != 0) sys.Y.accumulate(j, 1, -f[j]);
  }
  return sys;
}

TruncatedSeries section_curve(const PlanarSystem& sys) { return section_curve(sys, sys.series_order); }

TruncatedSeries section_curve(const PlanarSystem& sys, int order) {
  if (sys.X.is_zero()) return TruncatedSeries(order);
  const BivariateTruncated X = sys.X.with_order(order);
  TruncatedSeries F(order);
  // Each pass fixes at least one more coefficient since X = O(|x, y|^2).
  for (int pass = 0; pass <= order + 1; ++pass) {
    TruncatedSeries next = -X.substitute(F);
    if (next == F) break;
    F = std::move(next);
  }
  return F;
}

LienardParts extract_fg(const PlanarSystem& sys) { return extract_fg(sys, section_curve(sys)); }

LienardParts extract_fg(const PlanarSystem& sys, const TruncatedSeries& section) {
  const int order = section.order();
  const BivariateTruncated X = sys.X.with_order(order);
  const BivariateTruncated Y = sys.Y.with_order(order);
  BivariateTruncated divergence = X.partial_x();
  divergence += Y.partial_y();
  return {-Y.substitute(section), -divergence.substitute(section)};
}

int parity_index(int n) { return n % 2 == 0 ? 1 : 0; }

NilpotentClass classify_nilpotent(const TruncatedSeries& g, const TruncatedSeries& f) {
  const auto v = g.valuation();
  if (!v) {
    throw Error(ErrorCode::kDegenerateLine,
                "g vanishes through order " + std::to_string(g.order()));
  }
  if (*v % 2 == 0) {
    throw Error(ErrorCode::kNotOddLeadingPower,
                "lowest term of g has even degree " + std::to_string(*v));
  }
  if (*v < 3) {
    throw Error(ErrorCode::kHypothesisViolation, "leading power of g must be at least 3");
  }
  NilpotentClass c;
  c.n = (*v + 1) / 2;
  c.a = -g[*v];
  c.b = -f[c.n - 1];
  c.p_n = parity_index(c.n);
  for (int j = 0; j < c.n - 1; ++j) {
    if (sgn(f[j]) != 0) c.low_order_divergence = true;
  }
  c.monodromic = !c.low_order_divergence && sgn(c.a) < 0 && sgn(c.discriminant()) < 0;
  return c;
}

NilpotentClass classify(const PlanarSystem& sys) {
  const auto [g, f] = extract_fg(sys);
  return classify_nilpotent(g, f);
}

PlanarSystem truncate_degree(const PlanarSystem& sys, int m) {
  PlanarSystem out = sys;
  out.X = sys.X.truncated_degree(m);
  out.Y = sys.Y.truncated_degree(m);
  return out;
}

LienardParts lienard_parts(const PlanarSystem& sys) {
  const int order = sys.series_order;
  // y f(x) has total degree one above f, so f is known one order less.
  LienardParts parts{TruncatedSeries(order), TruncatedSeries(std::max(order - 1, 0))};
  for (const auto& [m, c] : sys.Y.terms()) {
    if (m.j == 0) parts.g.set(m.i, -c);
    if (m.j == 1) parts.f.set(m.i, -c);
  }
  return parts;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& token, int line) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    parse_fail(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) parse_fail(line, "expected an integer, got '" + token + "'");
  return value;
}

Rational parse_coefficient(const std::string& token, int line) {
  try {
    return parse_rational(token);
  } catch (const std::invalid_argument& e) {
    parse_fail(line, e.what());
  }
}

struct RawTerm {
  char target;
  int i;
  int j;
  Rational c;
  int line;
};

}  // namespace

PlanarSystem parse_system(std::string_view text, std::string label) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  bool have_kind = false;
  SystemKind kind = SystemKind::kGeneral;
  int orientation = +1;
  int order = kDefaultOrderCap;
  std::vector<RawTerm> terms;

  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& key = tok[0];
    if (!have_kind) {
      if (key != "kind" || tok.size() != 2) parse_fail(line_no, "first directive must be 'kind general|lienard'");
      if (tok[1] == "general") kind = SystemKind::kGeneral;
      else if (tok[1] == "lienard") kind = SystemKind::kLienard;
      else parse_fail(line_no, "unknown kind '" + tok[1] + "'");
      have_kind = true;
      continue;
    }
    if (key == "kind") parse_fail(line_no, "duplicate kind directive");
    if (key == "orientation") {
      if (tok.size() != 2) parse_fail(line_no, "orientation takes one value");
      if (tok[1] == "+1" || tok[1] == "1") orientation = +1;
      else if (tok[1] == "-1") orientation = -1;
      else parse_fail(line_no, "orientation must be +1 or -1");
      continue;
    }
    if (key == "order") {
      if (tok.size() != 2) parse_fail(line_no, "order takes one value");
      order = parse_int(tok[1], line_no);
      if (order < 2) parse_fail(line_no, "order must be at least 2");
      continue;
    }
    if (key == "label") {
      label = raw.substr(raw.find("label") + 5);
      label.erase(0, label.find_first_not_of(" \t"));
      label.erase(label.find_last_not_of(" \t\r") + 1);
      continue;
    }

    const bool general_term = key == "X" || key == "Y";
    const bool lienard_term = key == "g" || key == "f";
    if (!general_term && !lienard_term) parse_fail(line_no, "unknown directive '" + key + "'");
    if (general_term && kind != SystemKind::kGeneral) parse_fail(line_no, "X/Y terms need kind general");
    if (lienard_term && kind != SystemKind::kLienard) parse_fail(line_no, "g/f terms need kind lienard");

    RawTerm t{key[0], 0, 0, Rational(0), line_no};
    if (general_term) {
      if (tok.size() != 4) parse_fail(line_no, "expected '" + key + " <i> <j> <p/q>'");
      t.i = parse_int(tok[1], line_no);
      t.j = parse_int(tok[2], line_no);
      t.c = parse_coefficient(tok[3], line_no);
    } else {
      if (tok.size() != 3) parse_fail(line_no, "expected '" + key + " <j> <p/q>'");
      t.i = parse_int(tok[1], line_no);
      t.c = parse_coefficient(tok[2], line_no);
    }
    if (t.i < 0 || t.j < 0) parse_fail(line_no, "negative exponent");
    terms.push_back(std::move(t));
  }
  if (!have_kind) throw Error(ErrorCode::kParseError, "line 1: missing 'kind' directive");

  PlanarSystem sys;
  sys.kind = kind;
  sys.series_order = order;
  sys.label = std::move(label);
  sys.X = BivariateTruncated(order);
  sys.Y = BivariateTruncated(order);

  for (const auto& t : terms) {
    int degree = 0;
    switch (t.target) {
      case 'X':
      case 'Y':
        degree = t.i + t.j;
        if (degree <= 1) {
          throw Error(ErrorCode::kInvalidLowOrderTerms,
                      "line " + std::to_string(t.line) + ": " + t.target +
                          " may not contain constant or linear terms");
        }
        break;
      case 'g':
        degree = t.i;
        if (degree <= 1) {
          throw Error(ErrorCode::kInvalidLowOrderTerms,
                      "line " + std::to_string(t.line) + ": g may not contain constant or linear terms");
        }
        break;
      case 'f':
        // f_0 y is the only linear term admitted: it moves the origin into
        // the node regime used by the unfolding experiments.
        degree = t.i + 1;
        break;
    }
    if (degree > order) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(t.line) +
                                              ": term degree exceeds order " + std::to_string(order));
    }
    switch (t.target) {
      case 'X': sys.X.accumulate(t.i, t.j, t.c); break;
      case 'Y': sys.Y.accumulate(t.i, t.j, t.c); break;
      case 'g': sys.Y.accumulate(t.i, 0, -t.c); break;
      case 'f': sys.Y.accumulate(t.i, 1, -t.c); break;
    }
  }

  sys.input_orientation = orientation;
  if (orientation < 0) {
    // x' = -y + X(x, y): with w = -y this is x' = w + X(x, -w), w' = -Y(x, -w).
    sys.X = sys.X.reflected_y();
    sys.Y = -sys.Y.reflected_y();
  }
  return sys;
}

PlanarSystem load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str(), path.stem().string());
}

std::string format_system(const PlanarSystem& sys) {
  std::ostringstream os;
  os << "kind " << to_string(sys.kind) << '\n';
  os << "order " << sys.series_order << '\n';
  if (!sys.label.empty()) os << "label " << sys.label << '\n';
  if (sys.kind == SystemKind::kLienard) {
    const auto parts = lienard_parts(sys);
    for (int j = 0; j <= parts.g.order(); ++j) {
      if (sgn(parts.g[j]) != 0) os << "g " << j << ' ' << parts.g[j].get_str() << '\n';
    }
    for (int j = 0; j <= parts.f.order(); ++j) {
      if (sgn(parts.f[j]) != 0) os << "f " << j << ' ' << parts.f[j].get_str() << '\n';
    }
  } else {
    for (const auto& [m, c] : sys.X.terms()) os << "X " << m.i << ' ' << m.j << ' ' << c.get_str() << '\n';
    for (const auto& [m, c] : sys.Y.terms()) os << "Y " << m.i << ' ' << m.j << ' ' << c.get_str() << '\n';
  }
  return os.str();
}

}  // namespace nilcycle
