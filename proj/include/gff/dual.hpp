#pragma once

#include <cmath>

namespace gff {

// ---------------------------------------------------------------------------
// Forward-mode dual number; nesting Dual<Dual<...>> gives exact higher-order
// derivatives (never divided finite differences).
// ---------------------------------------------------------------------------

template <class T>
struct Dual {
    T v{};  // value
    T d{};  // derivative payload

    Dual() = default;
    Dual(double x) : v(x), d() {}  // NOLINT: implicit for numeric literals
    Dual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

// plain value of an arbitrarily nested dual
inline double val(double x) { return x; }
template <class T>
double val(const Dual<T>& x) { return val(x.v); }

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.v * b.v, a.v * b.d + a.d * b.v};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}

template <class T> Dual<T> operator+(const Dual<T>& a, double b) { return a + Dual<T>(b); }
template <class T> Dual<T> operator+(double a, const Dual<T>& b) { return Dual<T>(a) + b; }
template <class T> Dual<T> operator-(const Dual<T>& a, double b) { return a - Dual<T>(b); }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return Dual<T>(a) - b; }
template <class T> Dual<T> operator*(const Dual<T>& a, double b) { return a * Dual<T>(b); }
template <class T> Dual<T> operator*(double a, const Dual<T>& b) { return Dual<T>(a) * b; }
template <class T> Dual<T> operator/(const Dual<T>& a, double b) { return a / Dual<T>(b); }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) / b; }

template <class T>
Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { a = a + b; return a; }
template <class T>
Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) { a = a - b; return a; }
template <class T>
Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { a = a * b; return a; }

using std::cos;
using std::exp;
using std::sin;
using std::sqrt;

template <class T>
Dual<T> sin(const Dual<T>& a) { return {sin(a.v), cos(a.v) * a.d}; }
template <class T>
Dual<T> cos(const Dual<T>& a) { return {cos(a.v), -sin(a.v) * a.d}; }
template <class T>
Dual<T> exp(const Dual<T>& a) {
    T e = exp(a.v);
    return {e, e * a.d};
}
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    T r = sqrt(a.v);
    return {r, a.d / (2.0 * r)};
}

// integer power by repeated multiplication, defined for every base
inline double ipow(double a, int k) {
    if (k < 0) return 1.0 / ipow(a, -k);
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= a;
    return r;
}
template <class T>
Dual<T> ipow(const Dual<T>& a, int k) {
    if (k < 0) return Dual<T>(1.0) / ipow(a, -k);
    Dual<T> r(1.0);
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

}  // namespace gff
