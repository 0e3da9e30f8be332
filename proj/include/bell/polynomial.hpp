#pragma once

#include <array>
#include <cassert>
#include <cstddef>

namespace bell {

/// Dense polynomial in the three area coordinates (L1, L2, L3) up to total
/// degree 5 -- enough to hold the quintic plate shape functions and
/// everything obtained from them by differentiation.
class TriPoly {
 public:
  static constexpr int kMaxDegree = 5;
  static constexpr int kTerms = 56;  // number of exponent triples with i+j+k <= 5

  static constexpr int index(int i, int j, int k) {
    int idx = 0;
    for (int p = 0; p < i; ++p) {
      const int r = kMaxDegree - p;
      idx += (r + 1) * (r + 2) / 2;
    }
    for (int q = 0; q < j; ++q) {
      idx += kMaxDegree - i - q + 1;
    }
    return idx + k;
  }

  static const std::array<std::array<int, 3>, kTerms>& exponents() {
    static const auto table = [] {
      std::array<std::array<int, 3>, kTerms> t{};
      int n = 0;
      for (int i = 0; i <= kMaxDegree; ++i) {
        for (int j = 0; j + i <= kMaxDegree; ++j) {
          for (int k = 0; k + i + j <= kMaxDegree; ++k) {
            t[n++] = {i, j, k};
          }
        }
      }
      return t;
    }();
    return table;
  }

  double coefficient(int i, int j, int k) const { return c_[index(i, j, k)]; }

  void add_term(int i, int j, int k, double value) {
    assert(i >= 0 && j >= 0 && k >= 0 && i + j + k <= kMaxDegree);
    c_[index(i, j, k)] += value;
  }

  void axpy(double alpha, const TriPoly& other) {
    for (int n = 0; n < kTerms; ++n) {
      c_[n] += alpha * other.c_[n];
    }
  }

  /// Partial derivative with respect to one area coordinate (axis 0..2).
  TriPoly diff(int axis) const {
    TriPoly out;
    const auto& exp = exponents();
    for (int n = 0; n < kTerms; ++n) {
      if (c_[n] == 0.0) continue;
      auto e = exp[n];
      if (e[axis] == 0) continue;
      const double coeff = c_[n] * e[axis];
      e[axis] -= 1;
      out.add_term(e[0], e[1], e[2], coeff);
    }
    return out;
  }

  double eval(double l1, double l2, double l3) const {
    std::array<double, kMaxDegree + 1> p1{}, p2{}, p3{};
    p1[0] = p2[0] = p3[0] = 1.0;
    for (int d = 1; d <= kMaxDegree; ++d) {
      p1[d] = p1[d - 1] * l1;
      p2[d] = p2[d - 1] * l2;
      p3[d] = p3[d - 1] * l3;
    }
    const auto& exp = exponents();
    double sum = 0.0;
    for (int n = 0; n < kTerms; ++n) {
      if (c_[n] == 0.0) continue;
      sum += c_[n] * p1[exp[n][0]] * p2[exp[n][1]] * p3[exp[n][2]];
    }
    return sum;
  }

 private:
  std::array<double, kTerms> c_{};
};

}  // namespace bell
