#pragma once

namespace einwave {

/// Second-order jet (f, f', f'') of a function of one variable.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static constexpr Jet constant(double c) { return {c, 0.0, 0.0}; }

  constexpr Jet& operator+=(const Jet& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  constexpr Jet& operator*=(double c) {
    v *= c;
    d1 *= c;
    d2 *= c;
    return *this;
  }
  constexpr double derivative(int order) const {
    return order == 0 ? v : (order == 1 ? d1 : d2);
  }
};

constexpr Jet operator+(Jet a, const Jet& b) { return a += b; }
constexpr Jet operator-(const Jet& a, const Jet& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
constexpr Jet operator*(Jet a, double c) { return a *= c; }
constexpr Jet operator*(double c, Jet a) { return a *= c; }
constexpr Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

/// f^n for integer n; negative n requires f.v != 0.
inline Jet pow(const Jet& f, int n) {
  if (n == 0) return Jet::constant(1.0);
  if (n == 1) return f;
  double pn2 = 1.0;  // f^(n-2)
  const int m = n - 2;
  if (m > 0) {
    for (int i = 0; i < m; ++i) pn2 *= f.v;
  } else {
    for (int i = 0; i < -m; ++i) pn2 /= f.v;
  }
  const double pn1 = pn2 * f.v;
  const double pn = pn1 * f.v;
  const double dn = static_cast<double>(n);
  return {pn, dn * pn1 * f.d1, dn * (dn - 1.0) * pn2 * f.d1 * f.d1 + dn * pn1 * f.d2};
}

}  // namespace einwave
