#ifndef CDLAB_TRIG_POLYNOMIAL_HPP
#define CDLAB_TRIG_POLYNOMIAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cdlab {

/// a0 + sum_k (a_k cos k phi + b_k sin k phi), k = 1..degree.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
      : a0_(a0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    const std::size_t d = std::max(cos_.size(), sin_.size());
    cos_.resize(d, 0.0);
    sin_.resize(d, 0.0);
    for (double v : cos_)
      if (!std::isfinite(v)) throw std::invalid_argument("trig polynomial coefficients must be finite");
    for (double v : sin_)
      if (!std::isfinite(v)) throw std::invalid_argument("trig polynomial coefficients must be finite");
    if (!std::isfinite(a0_)) throw std::invalid_argument("trig polynomial coefficients must be finite");
  }

  static TrigPolynomial constant(double c) { return {c, {}, {}}; }
  static TrigPolynomial cos_k(std::size_t k, double scale = 1.0) {
    if (k == 0) return constant(scale);
    std::vector<double> c(k, 0.0);
    c[k - 1] = scale;
    return {0.0, std::move(c), {}};
  }
  static TrigPolynomial sin_k(std::size_t k, double scale = 1.0) {
    if (k == 0) throw std::invalid_argument("sin_k needs k >= 1");
    std::vector<double> s(k, 0.0);
    s[k - 1] = scale;
    return {0.0, {}, std::move(s)};
  }

  double a0() const { return a0_; }
  std::size_t degree() const { return cos_.size(); }
  /// a_k and b_k for k >= 1; zero beyond the degree.
  double a(std::size_t k) const { return k >= 1 && k <= cos_.size() ? cos_[k - 1] : 0.0; }
  double b(std::size_t k) const { return k >= 1 && k <= sin_.size() ? sin_[k - 1] : 0.0; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }

  double operator()(double phi) const {
    double v = a0_;
    for (std::size_t k = 1; k <= degree(); ++k) {
      const double kp = static_cast<double>(k) * phi;
      v += a(k) * std::cos(kp) + b(k) * std::sin(kp);
    }
    return v;
  }

  /// (a_k, b_k) -> (k b_k, -k a_k); the constant term drops.
  TrigPolynomial derivative() const {
    std::vector<double> c(degree()), s(degree());
    for (std::size_t k = 1; k <= degree(); ++k) {
      c[k - 1] = static_cast<double>(k) * b(k);
      s[k - 1] = -static_cast<double>(k) * a(k);
    }
    return {0.0, std::move(c), std::move(s)};
  }

  /// phi -> f(phi + pi): harmonic k picks up (-1)^k.
  TrigPolynomial shifted_by_pi() const {
    TrigPolynomial out = *this;
    for (std::size_t k = 1; k <= degree(); k += 2) {
      out.cos_[k - 1] = -out.cos_[k - 1];
      out.sin_[k - 1] = -out.sin_[k - 1];
    }
    return out;
  }

  /// Even harmonics including the constant term.
  TrigPolynomial even_part() const {
    TrigPolynomial out = *this;
    for (std::size_t k = 1; k <= degree(); k += 2) out.cos_[k - 1] = out.sin_[k - 1] = 0.0;
    return out;
  }
  TrigPolynomial odd_part() const {
    TrigPolynomial out = *this;
    out.a0_ = 0.0;
    for (std::size_t k = 2; k <= degree(); k += 2) out.cos_[k - 1] = out.sin_[k - 1] = 0.0;
    return out;
  }

  TrigPolynomial& operator+=(const TrigPolynomial& o) {
    const std::size_t d = std::max(degree(), o.degree());
    cos_.resize(d, 0.0);
    sin_.resize(d, 0.0);
    a0_ += o.a0_;
    for (std::size_t k = 1; k <= o.degree(); ++k) {
      cos_[k - 1] += o.a(k);
      sin_[k - 1] += o.b(k);
    }
    return *this;
  }
  TrigPolynomial& operator*=(double s) {
    a0_ *= s;
    for (auto& v : cos_) v *= s;
    for (auto& v : sin_) v *= s;
    return *this;
  }
  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
  friend TrigPolynomial operator-(TrigPolynomial a, TrigPolynomial b) { return a += (b *= -1.0); }
  friend TrigPolynomial operator*(double s, TrigPolynomial a) { return a *= s; }

  /// Product via the product-to-sum identities.
  friend TrigPolynomial operator*(const TrigPolynomial& f, const TrigPolynomial& g) {
    const std::size_t d = f.degree() + g.degree();
    std::vector<double> c(d, 0.0), s(d, 0.0);
    double c0 = 0.0;
    auto add_cos = [&](long k, double v) {
      if (k < 0) k = -k;
      if (k == 0)
        c0 += v;
      else
        c[static_cast<std::size_t>(k) - 1] += v;
    };
    auto add_sin = [&](long k, double v) {
      if (k == 0) return;
      if (k < 0) {
        k = -k;
        v = -v;
      }
      s[static_cast<std::size_t>(k) - 1] += v;
    };
    // Index 0 carries the constant term with a zero sine partner.
    for (std::size_t i = 0; i <= f.degree(); ++i) {
      const double fa = i == 0 ? f.a0() : f.a(i);
      const double fb = i == 0 ? 0.0 : f.b(i);
      for (std::size_t j = 0; j <= g.degree(); ++j) {
        const double ga = j == 0 ? g.a0() : g.a(j);
        const double gb = j == 0 ? 0.0 : g.b(j);
        const long sum = static_cast<long>(i + j);
        const long diff = static_cast<long>(i) - static_cast<long>(j);
        // cos i cos j = (cos(i-j) + cos(i+j)) / 2
        add_cos(diff, 0.5 * fa * ga);
        add_cos(sum, 0.5 * fa * ga);
        // sin i sin j = (cos(i-j) - cos(i+j)) / 2
        add_cos(diff, 0.5 * fb * gb);
        add_cos(sum, -0.5 * fb * gb);
        // sin i cos j = (sin(i+j) + sin(i-j)) / 2
        add_sin(sum, 0.5 * fb * ga);
        add_sin(diff, 0.5 * fb * ga);
        // cos i sin j = (sin(i+j) - sin(i-j)) / 2
        add_sin(sum, 0.5 * fa * gb);
        add_sin(diff, -0.5 * fa * gb);
      }
    }
    return {c0, std::move(c), std::move(s)};
  }

  /// Euclidean norm of the coefficient vector.
  double coefficient_norm() const {
    double acc = a0_ * a0_;
    for (double v : cos_) acc += v * v;
    for (double v : sin_) acc += v * v;
    return std::sqrt(acc);
  }

  bool is_zero() const { return coefficient_norm() == 0.0; }

  friend bool operator==(const TrigPolynomial&, const TrigPolynomial&) = default;

 private:
  double a0_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// A map S^1 -> R^3 with trigonometric-polynomial components.
struct MapTriple {
  std::array<TrigPolynomial, 3> components;
};

}  // namespace cdlab

#endif  // CDLAB_TRIG_POLYNOMIAL_HPP
