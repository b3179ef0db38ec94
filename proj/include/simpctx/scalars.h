/**
 * Exact scalar types used throughout the library: arbitrary-precision
 * rationals and integers (GMP) and Gaussian rationals, wired into Eigen
 * dense matrices.
 */
#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>

namespace simpctx {

using Rational = mpq_class;
using Integer = mpz_class;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = DenseMatrix<Rational>;
using RationalVector = DenseVector<Rational>;
using IntegerMatrix = DenseMatrix<Integer>;
using IntegerVector = DenseVector<Integer>;

/// Canonicalized rational from a numerator/denominator pair.
inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "a/b" or "a" (optionally signed). Returns nullopt on malformed input.
std::optional<Rational> parseRational(const std::string& text);

/// Renders a rational as "a" or "a/b" in lowest terms.
std::string formatRational(const Rational& q);

/// Complex number with exact rational real and imaginary parts.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(long r) : re(r), im(0) {}                 // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool isReal() const { return im == 0; }
    GaussianRational conj() const { return {re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

using ComplexMatrix = DenseMatrix<GaussianRational>;

inline GaussianRational gaussianI() { return {Rational(0), Rational(1)}; }

std::string formatGaussian(const GaussianRational& z);

}  // namespace simpctx

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 150,
        MulCost = 150,
    };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    typedef mpz_class Real;
    typedef mpz_class NonInteger;
    typedef mpz_class Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 100,
        MulCost = 100,
    };
};

template <>
struct NumTraits<simpctx::GaussianRational> : GenericNumTraits<simpctx::GaussianRational> {
    typedef mpq_class Real;
    typedef simpctx::GaussianRational NonInteger;
    typedef simpctx::GaussianRational Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,  // conjugation is handled explicitly by callers
        RequireInitialization = 1,
        ReadCost = 16,
        AddCost = 300,
        MulCost = 600,
    };
};

}  // namespace Eigen
