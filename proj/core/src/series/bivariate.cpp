#include "nilcycle/series/bivariate.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

#include "nilcycle/error.hpp"

namespace nilcycle {

Rational BivariateTruncated::coeff(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

void BivariateTruncated::accumulate(int i, int j, const Rational& c) {
  if (i < 0 || j < 0 || i + j > order_) return;
  auto& slot = terms_[{i, j}];
  slot += c;
  if (sgn(slot) == 0) terms_.erase({i, j});
}

int BivariateTruncated::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int BivariateTruncated::min_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = d < 0 ? m.degree() : std::min(d, m.degree());
  return d;
}

BivariateTruncated BivariateTruncated::with_order(int order) const {
  BivariateTruncated r(order);
  for (const auto& [m, c] : terms_) r.accumulate(m.i, m.j, c);
  return r;
}

BivariateTruncated BivariateTruncated::partial_x() const {
  BivariateTruncated r(std::max(order_ - 1, 0));
  for (const auto& [m, c] : terms_) {
    if (m.i > 0) r.accumulate(m.i - 1, m.j, c * m.i);
  }
  return r;
}

BivariateTruncated BivariateTruncated::partial_y() const {
  BivariateTruncated r(std::max(order_ - 1, 0));
  for (const auto& [m, c] : terms_) {
    if (m.j > 0) r.accumulate(m.i, m.j - 1, c * m.j);
  }
  return r;
}

BivariateTruncated BivariateTruncated::reflected_y() const {
  BivariateTruncated r(order_);
  for (const auto& [m, c] : terms_) r.accumulate(m.i, m.j, m.j % 2 == 0 ? c : Rational(-c));
  return r;
}

BivariateTruncated BivariateTruncated::truncated_degree(int m) const {
  BivariateTruncated r(order_);
  for (const auto& [mono, c] : terms_) {
    if (mono.degree() <= m) r.accumulate(mono.i, mono.j, c);
  }
  return r;
}

TruncatedSeries BivariateTruncated::substitute(const TruncatedSeries& y) const {
  if (sgn(y[0]) != 0) {
    throw Error(ErrorCode::kCompositionRequiresZeroConstant, "substituted y(0) must vanish");
  }
  const int n = std::min(order_, y.order());
  int max_j = 0;
  for (const auto& [m, c] : terms_) max_j = std::max(max_j, m.j);
  std::vector<TruncatedSeries> ypow;
  ypow.reserve(static_cast<std::size_t>(max_j) + 1);
  ypow.push_back(TruncatedSeries::constant(Rational(1), n));
  const TruncatedSeries yt = y.truncated(n);
  for (int j = 1; j <= max_j; ++j) ypow.push_back(ypow.back() * yt);
  TruncatedSeries out(n);
  for (const auto& [m, c] : terms_) {
    if (m.i > n) continue;
    const TruncatedSeries& p = ypow[static_cast<std::size_t>(m.j)];
    for (int k = 0; k + m.i <= n; ++k) {
      if (sgn(p[k]) == 0) continue;
      out.set(k + m.i, out[k + m.i] + c * p[k]);
    }
  }
  return out;
}

BivariateTruncated BivariateTruncated::operator-() const {
  BivariateTruncated r(order_);
  for (const auto& [m, c] : terms_) r.accumulate(m.i, m.j, -c);
  return r;
}

BivariateTruncated& BivariateTruncated::operator+=(const BivariateTruncated& rhs) {
  order_ = std::min(order_, rhs.order_);
  std::map<Monomial, Rational> kept;
  for (const auto& [m, c] : terms_) {
    if (m.degree() <= order_) kept.emplace(m, c);
  }
  terms_ = std::move(kept);
  for (const auto& [m, c] : rhs.terms_) accumulate(m.i, m.j, c);
  return *this;
}

std::string BivariateTruncated::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << '-';
    first = false;
    os << Rational(abs(c)).get_str();
    if (m.i > 0) os << "*x" << (m.i > 1 ? "^" + std::to_string(m.i) : "");
    if (m.j > 0) os << "*y" << (m.j > 1 ? "^" + std::to_string(m.j) : "");
  }
  if (first) os << '0';
  return os.str();
}

namespace {
constexpr int kMaxNumericDegree = 127;
}

NumericPolynomial::NumericPolynomial(const BivariateTruncated& p) {
  for (const auto& [m, c] : p.terms()) {
    if (m.i > kMaxNumericDegree || m.j > kMaxNumericDegree) {
      throw std::length_error("monomial degree too large for numeric evaluation");
    }
    terms_.push_back({m.i, m.j, to_double(c)});
    max_i_ = std::max(max_i_, m.i);
    max_j_ = std::max(max_j_, m.j);
  }
}

double NumericPolynomial::operator()(double x, double y) const {
  if (terms_.empty()) return 0.0;
  std::array<double, kMaxNumericDegree + 1> xp;
  std::array<double, kMaxNumericDegree + 1> yp;
  xp[0] = 1.0;
  yp[0] = 1.0;
  for (int k = 1; k <= max_i_; ++k) xp[static_cast<std::size_t>(k)] = xp[static_cast<std::size_t>(k - 1)] * x;
  for (int k = 1; k <= max_j_; ++k) yp[static_cast<std::size_t>(k)] = yp[static_cast<std::size_t>(k - 1)] * y;
  double acc = 0.0;
  for (const auto& t : terms_) {
    acc += t.c * xp[static_cast<std::size_t>(t.i)] * yp[static_cast<std::size_t>(t.j)];
  }
  return acc;
}

}  // namespace nilcycle
