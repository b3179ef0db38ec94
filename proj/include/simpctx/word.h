/**
 * Simplicial operator words in normal form.
 *
 * A word is the epi-mono factorization of a composite of face and degeneracy
 * operators: faces are applied first, degeneracies second.  The face part is
 * stored as the strictly increasing set of deleted vertex positions; the
 * degeneracy part as the strictly decreasing sequence s_{j1} s_{j2} ... of
 * the composite.  Composition goes through the dual monotone maps on finite
 * ordinals, so the simplicial identities hold by construction and any
 * bracketing of a composite yields the same normal form.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace simpctx {

struct WordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class OperatorWord {
public:
    OperatorWord() = default;
    OperatorWord(std::vector<int> degeneracies, std::vector<int> faces);

    static OperatorWord identity() { return {}; }
    static OperatorWord face(int i);
    static OperatorWord degeneracy(int j);
    /// Pure-degeneracy word s_{j1} s_{j2} ... with j strictly decreasing.
    static OperatorWord degeneracies(std::vector<int> js);

    const std::vector<int>& degeneracyPart() const { return degen_; }
    const std::vector<int>& facePart() const { return faces_; }
    bool isIdentity() const { return degen_.empty() && faces_.empty(); }
    bool isPureDegeneracy() const { return faces_.empty(); }

    /// Smallest simplex dimension the word can act on.
    int minInputDim() const;
    /// Output dimension when applied to a simplex of dimension n.
    int outputDim(int n) const;
    bool validFor(int n) const;

    /// Dual monotone map [m] -> [n] for an application to dimension n.
    std::vector<int> dualMap(int n) const;

    friend bool operator==(const OperatorWord& a, const OperatorWord& b) {
        return a.degen_ == b.degen_ && a.faces_ == b.faces_;
    }
    friend bool operator!=(const OperatorWord& a, const OperatorWord& b) { return !(a == b); }

    std::string str() const;

private:
    std::vector<int> degen_;  // strictly decreasing
    std::vector<int> faces_;  // strictly increasing
};

/// Normal form of w1 after w2 (w2 is applied first), acting on dimension n.
OperatorWord composeWords(const OperatorWord& w1, const OperatorWord& w2, int n);

/// As above with n chosen minimal; the normal form does not depend on n.
OperatorWord composeWords(const OperatorWord& w1, const OperatorWord& w2);

/// Recovers the normal form from a dual monotone map [m] -> [n].
OperatorWord wordFromDualMap(const std::vector<int>& map, int n);

}  // namespace simpctx
