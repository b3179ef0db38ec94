/**
 * Outcome spaces with enumerable simplices in each dimension: the nerve of
 * Z_d (XOR-inferable outcomes), the circle realized inside the nerve, and
 * the discrete outcome simplex used for embedding discrete scenarios.
 */
#pragma once

#include <string>
#include <vector>

#include "simpctx/word.h"

namespace simpctx {

/// An n-outcome, stored as the integer tuple of the ambient model:
/// length n for nerve/circle simplices, length n+1 for the discrete simplex.
using Outcome = std::vector<int>;

struct OutcomeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class OutcomeSpace {
public:
    enum class Kind { Nerve, Circle, DiscretePower };

    static OutcomeSpace nerve(int d);
    static OutcomeSpace circle(int d);
    static OutcomeSpace discretePower(int d);

    Kind kind() const { return kind_; }
    int d() const { return d_; }
    int tupleLength(int n) const { return kind_ == Kind::DiscretePower ? n + 1 : n; }

    /// Number of n-simplices.
    long countSimplices(int n) const;
    /// Enumerates the n-simplices in lexicographic order.
    std::vector<Outcome> simplices(int n) const;
    bool contains(const Outcome& theta, int n) const;

    Outcome face(const Outcome& theta, int i) const;
    Outcome degeneracy(const Outcome& theta, int j) const;
    /// Word action (faces first, then degeneracies).
    Outcome apply(const Outcome& theta, const OperatorWord& w) const;

    /// Dimension of a tuple in this model.
    int dimOf(const Outcome& theta) const {
        return kind_ == Kind::DiscretePower ? static_cast<int>(theta.size()) - 1
                                            : static_cast<int>(theta.size());
    }

    std::string name() const;
    friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
        return a.kind_ == b.kind_ && a.d_ == b.d_;
    }

private:
    OutcomeSpace(Kind kind, int d) : kind_(kind), d_(d) {}
    Kind kind_;
    int d_;
};

/// Renders an outcome tuple as a digit string ("01", "120"); requires d <= 10.
std::string formatOutcome(const Outcome& theta);
/// Parses a digit string into a tuple.
Outcome parseOutcome(const std::string& text);

/// Inclusion h : circle -> nerve on simplices (the identity on tuples).
inline Outcome circleToNerve(const Outcome& theta) { return theta; }

}  // namespace simpctx
