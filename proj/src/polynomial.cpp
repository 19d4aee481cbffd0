#include "mase/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace mase {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
  if (c_.empty()) c_.push_back(0.0);
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::magnitude(double x) const noexcept {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial{0.0};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(c_.size() + 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(a));
}

std::pair<Polynomial, double> Polynomial::deflate(double root) const {
  if (c_.size() <= 1) return {Polynomial{0.0}, c_[0]};
  const std::size_t n = c_.size() - 1;
  std::vector<double> q(n);
  double carry = c_[n];
  for (std::size_t i = n; i-- > 0;) {
    q[i] = carry;
    carry = c_[i] + carry * root;
  }
  return {Polynomial(std::move(q)), carry};
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c(a.c_);
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

namespace {

constexpr double kRoundoff = 64.0 * 2.220446049250313e-16;

// `floor` sets an absolute noise level; critical points pass the coefficient
// sum so that a double root at the origin, where every term vanishes, is seen.
int sign_of(const Polynomial& p, double x, double floor = 0.0) {
  const double v = p(x);
  if (std::abs(v) <= kRoundoff * std::max(p.magnitude(x), floor)) return 0;
  return v > 0.0 ? 1 : -1;
}

// p monotone on [a, b] with a strict sign change.
double bisect(const Polynomial& p, double a, double b, double tol) {
  int sa = p(a) > 0.0 ? 1 : -1;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double v = p(m);
    if (v == 0.0) return m;
    if ((v > 0.0 ? 1 : -1) == sa) {
      a = m;
    } else {
      b = m;
    }
    // Keep halving past tol: the extra iterations are cheap and callers
    // deflate by these roots.
    if (b - a < tol * 1e-4) break;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<RealRoot> isolate_real_roots(const Polynomial& p, double lo, double hi, double tol) {
  std::vector<RealRoot> roots;
  if (p.degree() <= 0 || !(lo < hi)) return roots;
  if (p.degree() == 1) {
    const double r = -p.coefficients()[0] / p.coefficients()[1];
    if (r >= lo && r <= hi) roots.push_back({r, false});
    return roots;
  }

  std::vector<double> knots{lo};
  for (const RealRoot& cp : isolate_real_roots(p.derivative(), lo, hi, tol)) {
    if (cp.value > knots.back()) knots.push_back(cp.value);
  }
  if (hi > knots.back()) knots.push_back(hi);

  std::vector<int> signs(knots.size());
  const double coefficient_sum = p.magnitude(1.0);
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const bool interior = i > 0 && i + 1 < knots.size();
    signs[i] = sign_of(p, knots[i], interior ? coefficient_sum : 0.0);
  }

  for (std::size_t i = 0; i < knots.size(); ++i) {
    const bool interior = i > 0 && i + 1 < knots.size();
    if (signs[i] == 0) {
      roots.push_back({knots[i], interior});
    }
    if (i + 1 < knots.size() && signs[i] != 0 && signs[i + 1] != 0 && signs[i] != signs[i + 1]) {
      roots.push_back({bisect(p, knots[i], knots[i + 1], tol), false});
    }
  }
  std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return roots;
}

}  // namespace mase
