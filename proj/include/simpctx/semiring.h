/**
 * Commutative semirings that distributions take values in.  Two instances
 * are wired up: exact nonnegative rationals (probabilities) and the Boolean
 * semiring (possibilistic data).  Both are semifields, which the gluing
 * ansatz requires.
 */
#pragma once

#include <stdexcept>
#include <string>

#include "simpctx/scalars.h"

namespace simpctx {

/// Boolean semiring: add = OR, mul = AND.
struct Bool01 {
    bool v = false;
    Bool01() = default;
    Bool01(bool b) : v(b) {}  // NOLINT(google-explicit-constructor)
    friend bool operator==(const Bool01&, const Bool01&) = default;
    friend auto operator<=>(const Bool01&, const Bool01&) = default;
};

template <typename R>
struct SemiringTraits;

template <>
struct SemiringTraits<Rational> {
    static constexpr bool isSemifield = true;
    static constexpr bool isBoolean = false;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational add(const Rational& a, const Rational& b) { return a + b; }
    static Rational mul(const Rational& a, const Rational& b) { return a * b; }
    static Rational div(const Rational& a, const Rational& b) {
        if (b == 0) throw std::domain_error("division by zero");
        return a / b;
    }
    static bool isZero(const Rational& a) { return a == 0; }
    /// Distribution values must be nonnegative; anything else is rejected.
    static bool isAdmissible(const Rational& a) { return a >= 0; }
    static std::string str(const Rational& a) { return formatRational(a); }
};

template <>
struct SemiringTraits<Bool01> {
    static constexpr bool isSemifield = true;
    static constexpr bool isBoolean = true;
    static Bool01 zero() { return Bool01(false); }
    static Bool01 one() { return Bool01(true); }
    static Bool01 add(const Bool01& a, const Bool01& b) { return Bool01(a.v || b.v); }
    static Bool01 mul(const Bool01& a, const Bool01& b) { return Bool01(a.v && b.v); }
    static Bool01 div(const Bool01& a, const Bool01& b) {
        if (!b.v) throw std::domain_error("division by zero");
        return a;
    }
    static bool isZero(const Bool01& a) { return !a.v; }
    static bool isAdmissible(const Bool01&) { return true; }
    static std::string str(const Bool01& a) { return a.v ? "1" : "0"; }
};

/// The semiring homomorphism that forgets magnitudes: positive -> 1, 0 -> 0.
struct SupportHomomorphism {
    Bool01 operator()(const Rational& a) const { return Bool01(a != 0); }
};

struct IdentityHomomorphism {
    template <typename R>
    R operator()(const R& a) const {
        return a;
    }
};

/// Spot-checks the homomorphism laws on 0, 1 and sampled sums/products.
template <typename Phi, typename R, typename S>
bool checkHomomorphism(const Phi& phi, const std::vector<R>& samples) {
    using TR = SemiringTraits<R>;
    using TS = SemiringTraits<S>;
    if (!(phi(TR::zero()) == TS::zero())) return false;
    if (!(phi(TR::one()) == TS::one())) return false;
    for (const R& a : samples)
        for (const R& b : samples) {
            if (!(phi(TR::add(a, b)) == TS::add(phi(a), phi(b)))) return false;
            if (!(phi(TR::mul(a, b)) == TS::mul(phi(a), phi(b)))) return false;
        }
    return true;
}

}  // namespace simpctx
