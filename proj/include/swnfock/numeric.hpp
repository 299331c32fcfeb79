#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cmath>
#include <compare>
#include <string>

namespace swnfock {

using rational = boost::multiprecision::cpp_rational;

inline double to_double(double x) { return x; }
inline double to_double(const rational& x) { return x.convert_to<double>(); }

/// Complex number over a scalar ring S (double or exact rational).
/// std::complex is not usable with multiprecision rationals, so we roll our
/// own minimal type; only ring operations are needed on the exact side.
template <class S>
struct cplx {
    S re{};
    S im{};

    cplx() = default;
    cplx(S r) : re(std::move(r)) {}
    cplx(S r, S i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    cplx conj() const { return {re, S(-im)}; }
    S norm_sq() const { return re * re + im * im; }

    friend cplx operator+(const cplx& a, const cplx& b) { return {S(a.re + b.re), S(a.im + b.im)}; }
    friend cplx operator-(const cplx& a, const cplx& b) { return {S(a.re - b.re), S(a.im - b.im)}; }
    friend cplx operator*(const cplx& a, const cplx& b) {
        return {S(a.re * b.re - a.im * b.im), S(a.re * b.im + a.im * b.re)};
    }
    friend cplx operator*(const S& s, const cplx& a) { return {S(s * a.re), S(s * a.im)}; }
    friend cplx operator*(const cplx& a, const S& s) { return s * a; }
    friend cplx operator/(const cplx& a, const S& s) { return {S(a.re / s), S(a.im / s)}; }
    cplx& operator+=(const cplx& b) { re += b.re; im += b.im; return *this; }
    cplx& operator*=(const cplx& b) { *this = *this * b; return *this; }
    friend bool operator==(const cplx& a, const cplx& b) { return a.re == b.re && a.im == b.im; }

    // lexicographic order, used only for canonical sorting
    friend bool lex_less(const cplx& a, const cplx& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

template <class S>
std::complex<double> to_std(const cplx<S>& z) {
    return {to_double(z.re), to_double(z.im)};
}

template <class S>
double abs_value(const cplx<S>& z) {
    return std::abs(to_std(z));
}

/// Exact conversion: every double is a dyadic rational.
template <class S>
S scalar_from_double(double x);

template <>
inline double scalar_from_double<double>(double x) { return x; }

template <>
inline rational scalar_from_double<rational>(double x) { return rational(x); }

template <class S>
cplx<S> cplx_from_std(const std::complex<double>& z) {
    return {scalar_from_double<S>(z.real()), scalar_from_double<S>(z.imag())};
}

}  // namespace swnfock
