#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

namespace mase {

/// Dense real polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coefficients() const noexcept { return c_; }

  double operator()(double x) const noexcept;
  /// Sum of |c_i| |x|^i; the natural scale for rounding error in operator().
  double magnitude(double x) const noexcept;

  Polynomial derivative() const;
  /// Antiderivative vanishing at zero.
  Polynomial antiderivative() const;
  /// Synthetic division by (x - root): returns quotient and remainder p(root).
  std::pair<Polynomial, double> deflate(double root) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

 private:
  void trim();
  std::vector<double> c_;
};

struct RealRoot {
  double value = 0.0;
  bool tangency = false;  // even multiplicity: p and p' vanish together
};

/// Isolates every real root of p in [lo, hi]. Critical points (roots of p')
/// are found recursively and split the interval into monotone pieces; each
/// piece with a sign change is bisected to `tol`. A critical point where p
/// vanishes to rounding accuracy is reported as a tangency root.
std::vector<RealRoot> isolate_real_roots(const Polynomial& p, double lo, double hi, double tol = 1e-12);

}  // namespace mase
