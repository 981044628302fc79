// Bivariate polynomials in reference coordinates with degree <= 4 per axis.
#ifndef FEM4SP_POLYNOMIAL_HPP
#define FEM4SP_POLYNOMIAL_HPP

#include <Eigen/Core>

#include <stdexcept>

namespace fem4sp {

/// sum_{i,j} c(i, j) xi^i eta^j
template <typename Scalar>
class BiPoly {
public:
  static constexpr int kMaxDegree = 4;
  static constexpr int kSize = kMaxDegree + 1;
  using Coeffs = Eigen::Matrix<Scalar, kSize, kSize>;

  BiPoly() : c_(Coeffs::Zero()) {}
  explicit BiPoly(const Coeffs& c) : c_(c) {}

  static BiPoly constant(Scalar v) {
    BiPoly p;
    p.c_(0, 0) = v;
    return p;
  }
  static BiPoly monomial(int i, int j, Scalar v = Scalar(1)) {
    if (i < 0 || j < 0 || i > kMaxDegree || j > kMaxDegree) {
      throw std::out_of_range("BiPoly: monomial degree exceeds 4 per axis");
    }
    BiPoly p;
    p.c_(i, j) = v;
    return p;
  }
  static BiPoly xi() { return monomial(1, 0); }
  static BiPoly eta() { return monomial(0, 1); }

  const Coeffs& coeffs() const { return c_; }
  Scalar coeff(int i, int j) const { return c_(i, j); }

  /// Horner in both variables.
  Scalar operator()(Scalar x, Scalar y) const {
    Scalar result = 0;
    for (int i = kMaxDegree; i >= 0; --i) {
      Scalar row = 0;
      for (int j = kMaxDegree; j >= 0; --j) row = row * y + c_(i, j);
      result = result * x + row;
    }
    return result;
  }
  Scalar operator()(const Eigen::Matrix<Scalar, 2, 1>& p) const { return (*this)(p.x(), p.y()); }

  BiPoly d_xi() const {
    BiPoly d;
    for (int i = 1; i <= kMaxDegree; ++i) d.c_.row(i - 1) = Scalar(i) * c_.row(i);
    return d;
  }
  BiPoly d_eta() const {
    BiPoly d;
    for (int j = 1; j <= kMaxDegree; ++j) d.c_.col(j - 1) = Scalar(j) * c_.col(j);
    return d;
  }

  /// Exact integral over [-1, 1]^2.
  Scalar integral() const {
    Scalar sum = 0;
    for (int i = 0; i <= kMaxDegree; i += 2) {
      for (int j = 0; j <= kMaxDegree; j += 2) sum += c_(i, j) * Scalar(4) / Scalar((i + 1) * (j + 1));
    }
    return sum;
  }

  BiPoly& operator+=(const BiPoly& o) {
    c_ += o.c_;
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    c_ -= o.c_;
    return *this;
  }
  BiPoly& operator*=(Scalar s) {
    c_ *= s;
    return *this;
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(BiPoly a) { return a *= Scalar(-1); }
  friend BiPoly operator*(BiPoly a, Scalar s) { return a *= s; }
  friend BiPoly operator*(Scalar s, BiPoly a) { return a *= s; }
  friend BiPoly operator+(BiPoly a, Scalar s) {
    a.c_(0, 0) += s;
    return a;
  }
  friend BiPoly operator+(Scalar s, BiPoly a) { return a + s; }
  friend BiPoly operator-(Scalar s, const BiPoly& a) { return (-a) + s; }
  friend BiPoly operator-(BiPoly a, Scalar s) { return a + (-s); }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (int i = 0; i <= kMaxDegree; ++i) {
      for (int j = 0; j <= kMaxDegree; ++j) {
        if (a.c_(i, j) == Scalar(0)) continue;
        for (int k = 0; k <= kMaxDegree; ++k) {
          for (int l = 0; l <= kMaxDegree; ++l) {
            if (b.c_(k, l) == Scalar(0)) continue;
            if (i + k > kMaxDegree || j + l > kMaxDegree) {
              throw std::domain_error("BiPoly: product exceeds degree 4 per axis");
            }
            r.c_(i + k, j + l) += a.c_(i, j) * b.c_(k, l);
          }
        }
      }
    }
    return r;
  }

private:
  Coeffs c_;
};

}  // namespace fem4sp

#endif  // FEM4SP_POLYNOMIAL_HPP
