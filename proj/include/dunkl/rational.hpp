#pragma once

#include <gmpxx.h>
#include <string>

namespace dunkl {

/// Exact complex rational a + b*i with arbitrary-precision components.
/// This is the coefficient field of every polynomial in the engine; keeping
/// i inside the field (rather than as a formal parameter) makes canonical
/// forms unique.
struct GaussianRational {
    mpq_class re{0};
    mpq_class im{0};

    GaussianRational() = default;
    GaussianRational(long n) : re(n) {}
    GaussianRational(const mpq_class& r) : re(r) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long num, long den) : re(mpq_class(num, den)) { re.canonicalize(); }

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    bool isZero() const { return re == 0 && im == 0; }
    bool isOne() const { return re == 1 && im == 0; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational conj() const { return {re, -im}; }
    /// Multiplicative inverse; undefined (division by zero) on 0.
    GaussianRational inv() const {
        mpq_class n = re * re + im * im;
        return {re / n, -im / n};
    }
    GaussianRational operator/(const GaussianRational& o) const { return *this * o.inv(); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        *this = *this * o;
        return *this;
    }

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    /// Deterministic rendering: "3/2", "-i", "1/2*i", "(1 - 2/3*i)".
    std::string str() const;
};

std::string rationalStr(const mpq_class& q);

} // namespace dunkl
