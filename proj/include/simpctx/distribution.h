/**
 * Finite-support normalized distributions on outcome simplices, and
 * simplicial distributions: face-compatible assignments of such
 * distributions to every nondegenerate simplex of a measurement space.
 */
#pragma once

#include <array>
#include <functional>
#include <map>
#include <sstream>

#include "simpctx/outcomes.h"
#include "simpctx/semiring.h"
#include "simpctx/sset.h"

namespace simpctx {

struct DistributionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-support distribution with values in a commutative semiring R.
/// Only nonzero values are stored; the support sums to one.
template <typename R>
class Distribution {
public:
    using Traits = SemiringTraits<R>;

    Distribution() = default;

    static Distribution delta(const Outcome& theta) {
        Distribution p;
        p.support_[theta] = Traits::one();
        return p;
    }

    static Distribution fromPairs(std::vector<std::pair<Outcome, R>> pairs) {
        Distribution p;
        for (auto& [theta, value] : pairs) p.add(theta, value);
        return p;
    }

    void add(const Outcome& theta, const R& value) {
        if (!Traits::isAdmissible(value))
            throw DistributionError("inadmissible distribution value");
        if (Traits::isZero(value)) return;
        auto it = support_.find(theta);
        if (it == support_.end()) {
            support_[theta] = value;
        } else {
            it->second = Traits::add(it->second, value);
            if (Traits::isZero(it->second)) support_.erase(it);
        }
    }

    R at(const Outcome& theta) const {
        auto it = support_.find(theta);
        return it == support_.end() ? Traits::zero() : it->second;
    }

    const std::map<Outcome, R>& support() const { return support_; }
    bool isNormalized() const {
        R total = Traits::zero();
        for (const auto& [theta, value] : support_) total = Traits::add(total, value);
        return total == Traits::one();
    }

    friend bool operator==(const Distribution& a, const Distribution& b) {
        return a.support_ == b.support_;
    }
    friend bool operator!=(const Distribution& a, const Distribution& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (const auto& [theta, value] : support_) {
            if (!first) os << ", ";
            os << formatOutcome(theta) << ": " << Traits::str(value);
            first = false;
        }
        os << '}';
        return os.str();
    }

private:
    std::map<Outcome, R> support_;
};

/// D_R applied to a function between outcome sets: sums over preimages.
template <typename R>
Distribution<R> pushforwardDist(const std::function<Outcome(const Outcome&)>& f,
                                const Distribution<R>& p) {
    Distribution<R> out;
    for (const auto& [theta, value] : p.support()) out.add(f(theta), value);
    return out;
}

/// D_R of an operator word acting through the outcome space structure maps.
template <typename R>
Distribution<R> pushforwardWord(const OutcomeSpace& Y, const OperatorWord& w,
                                const Distribution<R>& p) {
    return pushforwardDist<R>([&](const Outcome& theta) { return Y.apply(theta, w); }, p);
}

template <typename R>
Distribution<R> faceDist(const OutcomeSpace& Y, int i, const Distribution<R>& p) {
    return pushforwardWord(Y, OperatorWord::face(i), p);
}

template <typename R>
Distribution<R> degeneracyDist(const OutcomeSpace& Y, int j, const Distribution<R>& p) {
    return pushforwardWord(Y, OperatorWord::degeneracy(j), p);
}

/// Applies a semiring homomorphism valuewise.
template <typename R, typename S, typename Phi>
Distribution<S> mapValues(const Phi& phi, const Distribution<R>& p) {
    Distribution<S> out;
    for (const auto& [theta, value] : p.support()) out.add(theta, phi(value));
    return out;
}

// Dense views in the two-outcome notation for nerve(2) dimensions <= 2.
template <typename R>
std::array<R, 4> densePair(const Distribution<R>& p) {
    return {p.at({0, 0}), p.at({0, 1}), p.at({1, 0}), p.at({1, 1})};
}
template <typename R>
std::array<R, 2> denseEdge(const Distribution<R>& p) {
    return {p.at({0}), p.at({1})};
}
template <typename R>
Distribution<R> pairDist(const R& p00, const R& p01, const R& p10, const R& p11) {
    return Distribution<R>::fromPairs(
        {{{0, 0}, p00}, {{0, 1}, p01}, {{1, 0}, p10}, {{1, 1}, p11}});
}
template <typename R>
Distribution<R> edgeDist(const R& p0, const R& p1) {
    return Distribution<R>::fromPairs({{{0}, p0}, {{1}, p1}});
}

/// A simplicial distribution: a normalized distribution on Y_n for every
/// nondegenerate n-simplex of X, face-compatible (checked separately).
template <typename R>
class SimplicialDistribution {
public:
    SimplicialDistribution() = default;
    SimplicialDistribution(SSetPtr X, OutcomeSpace Y)
        : X_(std::move(X)), Y_(std::move(Y)), table_(X_->maxDim() + 1) {
        for (int dim = 0; dim <= X_->maxDim(); ++dim) table_[dim].resize(X_->count(dim));
        // Dimension-zero distributions on nerve-like outcome spaces are
        // forced: the unique vertex outcome with weight one.
        for (int id = 0; id < X_->count(0); ++id)
            if (Y_.kind() != OutcomeSpace::Kind::DiscretePower)
                table_[0][id] = Distribution<R>::delta(Outcome{});
    }

    const PresentedSSet& space() const { return *X_; }
    const SSetPtr& spacePtr() const { return X_; }
    const OutcomeSpace& outcomes() const { return Y_; }

    void set(SimplexId s, Distribution<R> p) { table_[s.dim][s.id] = std::move(p); }
    const Distribution<R>& at(SimplexId s) const { return table_[s.dim][s.id]; }

    /// Value at a possibly-degenerate simplex, through the degeneracy action.
    Distribution<R> eval(const SimplexRef& r) const {
        if (!r.isDegenerate()) return at(r.base);
        return pushforwardWord(Y_, OperatorWord::degeneracies(r.degeneracies), at(r.base));
    }

    struct Violation {
        SimplexId simplex;
        int face = 0;
        std::string expected;
        std::string found;
    };

    /// Empty iff every distribution is normalized, supported in Y, and every
    /// face-compatibility equation d_i p_sigma = p_{d_i sigma} holds exactly.
    std::vector<Violation> check() const {
        std::vector<Violation> out;
        for (int dim = 0; dim <= X_->maxDim(); ++dim) {
            for (int id = 0; id < X_->count(dim); ++id) {
                const Distribution<R>& p = at({dim, id});
                if (!p.isNormalized())
                    out.push_back({{dim, id}, -1, "normalized distribution", p.str()});
                for (const auto& [theta, value] : p.support())
                    if (!Y_.contains(theta, dim))
                        out.push_back(
                            {{dim, id}, -1, "support inside " + Y_.name(), formatOutcome(theta)});
                if (dim == 0) continue;
                for (int i = 0; i <= dim; ++i) {
                    Distribution<R> marg = faceDist(Y_, i, p);
                    Distribution<R> target = eval(X_->tableFace({dim, id}, i));
                    if (marg != target)
                        out.push_back({{dim, id}, i, target.str(), marg.str()});
                }
            }
        }
        return out;
    }
    bool isValid() const { return check().empty(); }

private:
    SSetPtr X_;
    OutcomeSpace Y_ = OutcomeSpace::nerve(2);
    std::vector<std::vector<Distribution<R>>> table_;
};

/// Iterated marginal of the distribution at sigma along an operator word.
template <typename R>
Distribution<R> marginal(const SimplicialDistribution<R>& p, SimplexId sigma,
                         const OperatorWord& w) {
    if (!w.validFor(sigma.dim)) throw DistributionError("marginal: word does not apply");
    return pushforwardWord(p.outcomes(), w, p.at(sigma));
}

/// Builds a simplicial distribution from values on the generating simplices,
/// deriving the rest by marginalization.  Derivation conflicts and gaps are
/// reported; the result is meaningful only when the report stays empty and
/// the final check() passes.
template <typename R>
SimplicialDistribution<R> assembleDistribution(const SSetPtr& X, const OutcomeSpace& Y,
                                               const std::map<SimplexId, Distribution<R>>& given,
                                               std::vector<std::string>* report = nullptr) {
    SimplicialDistribution<R> p(X, Y);
    std::vector<std::vector<bool>> known(X->maxDim() + 1);
    for (int dim = 0; dim <= X->maxDim(); ++dim)
        known[dim].assign(X->count(dim), dim == 0 && Y.kind() != OutcomeSpace::Kind::DiscretePower);
    auto note = [&](const std::string& msg) {
        if (report) report->push_back(msg);
    };
    for (const auto& [s, dist] : given) {
        p.set(s, dist);
        known[s.dim][s.id] = true;
    }
    for (int dim = X->maxDim(); dim >= 1; --dim) {
        for (int id = 0; id < X->count(dim); ++id) {
            if (!known[dim][id]) continue;
            for (int i = 0; i <= dim; ++i) {
                SimplexRef t = X->tableFace({dim, id}, i);
                Distribution<R> marg = faceDist(Y, i, p.at({dim, id}));
                if (t.isDegenerate()) {
                    // Recover the base through the retraction d_{j1} d_{j2} ...
                    // (outermost degeneracy cancelled first).
                    Distribution<R> cur = marg;
                    for (int j : t.degeneracies) cur = faceDist(Y, j, cur);
                    if (known[t.base.dim][t.base.id]) {
                        if (!(p.at(t.base) == cur))
                            note("conflicting derivations at " + X->label(t.base));
                    } else {
                        p.set(t.base, cur);
                        known[t.base.dim][t.base.id] = true;
                    }
                } else {
                    if (known[t.base.dim][t.base.id]) {
                        if (!(p.at(t.base) == marg))
                            note("conflicting derivations at " + X->label(t.base));
                    } else {
                        p.set(t.base, marg);
                        known[t.base.dim][t.base.id] = true;
                    }
                }
            }
        }
    }
    for (int dim = 0; dim <= X->maxDim(); ++dim)
        for (int id = 0; id < X->count(dim); ++id)
            if (!known[dim][id]) note("no value derived for " + X->label({dim, id}));
    return p;
}

/// Valuewise change of semiring along a homomorphism phi : R -> S.
template <typename S, typename R, typename Phi>
SimplicialDistribution<S> semiringMap(const Phi& phi, const SimplicialDistribution<R>& p) {
    SimplicialDistribution<S> out(p.spacePtr(), p.outcomes());
    for (int dim = 0; dim <= p.space().maxDim(); ++dim)
        for (int id = 0; id < p.space().count(dim); ++id)
            out.set({dim, id}, mapValues<R, S>(phi, p.at({dim, id})));
    return out;
}

/// Boolean shadow of a probability distribution (support homomorphism).
template <typename R>
SimplicialDistribution<Bool01> booleanShadow(const SimplicialDistribution<R>& p) {
    return semiringMap<Bool01>(SupportHomomorphism{}, p);
}

/// Reinterprets a distribution over circle outcomes inside the nerve: the
/// inclusion of outcome spaces is the identity on tuples.
template <typename R>
SimplicialDistribution<R> circleEmbed(const SimplicialDistribution<R>& p) {
    if (p.outcomes().kind() != OutcomeSpace::Kind::Circle)
        throw DistributionError("circleEmbed expects circle outcomes");
    SimplicialDistribution<R> out(p.spacePtr(), OutcomeSpace::nerve(p.outcomes().d()));
    for (int dim = 0; dim <= p.space().maxDim(); ++dim)
        for (int id = 0; id < p.space().count(dim); ++id) out.set({dim, id}, p.at({dim, id}));
    return out;
}

/// Distribution-level form of the circle embedding: an n-simplex of D_R S^1
/// given by the tuple (p^1, ..., p^n) maps to the nerve distribution with
/// p^k on the k-th unit tuple and 1 - sum p^k on the zero tuple.
inline Distribution<Rational> circleTupleToNerve(const std::vector<Rational>& tuple) {
    int n = static_cast<int>(tuple.size());
    Distribution<Rational> out;
    Rational rest(1);
    for (int k = 0; k < n; ++k) {
        Outcome unit(n, 0);
        unit[k] = 1;
        out.add(unit, tuple[k]);
        rest -= tuple[k];
    }
    out.add(Outcome(n, 0), rest);
    return out;
}

}  // namespace simpctx
