#include "simpctx/lp.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace simpctx {

void LinearSystem::addRow(const RationalVector& a, Rel r, const Rational& rhs) {
    if (A.rows() == 0 && A.cols() == 0) A.resize(0, a.size());
    if (a.size() != A.cols()) throw std::invalid_argument("addRow: arity mismatch");
    A.conservativeResize(A.rows() + 1, Eigen::NoChange);
    A.row(A.rows() - 1) = a.transpose();
    rel.push_back(r);
    b.conservativeResize(b.size() + 1);
    b(b.size() - 1) = rhs;
}

namespace {

// Dense phase-1/phase-2 simplex tableau over exact rationals, Bland's rule.
// Rows: constraints (equalities after slack introduction); columns: decision
// variables then artificials; the basis starts on the artificials.
class Tableau {
public:
    Tableau(const RationalMatrix& A, const RationalVector& b) {
        m_ = static_cast<int>(A.rows());
        n_ = static_cast<int>(A.cols());
        T_.resize(m_, n_ + m_ + 1);
        basis_.resize(m_);
        for (int r = 0; r < m_; ++r) {
            Rational sign = b(r) < 0 ? Rational(-1) : Rational(1);
            for (int c = 0; c < n_; ++c) T_(r, c) = sign * A(r, c);
            for (int c = 0; c < m_; ++c) T_(r, n_ + c) = (r == c) ? Rational(1) : Rational(0);
            T_(r, n_ + m_) = sign * b(r);
            basis_[r] = n_ + r;
        }
    }

    // Minimizes the sum of artificial variables.  Returns the optimum.
    Rational phase1() {
        std::vector<Rational> cost(n_ + m_, Rational(0));
        for (int c = n_; c < n_ + m_; ++c) cost[c] = 1;
        runSimplex(cost);
        Rational z = 0;
        for (int r = 0; r < m_; ++r)
            if (basis_[r] >= n_) z += T_(r, n_ + m_);
        return z;
    }

    // Pivots zero-valued basic artificials onto decision columns wherever
    // possible, so phase 2 can never grow them again.
    void driveOutArtificials() {
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < n_) continue;
            for (int c = 0; c < n_; ++c)
                if (T_(r, c) != 0) {
                    pivot(r, c);
                    break;
                }
        }
    }

    // Maximizes obj over the feasible region reached by phase1 == 0.
    // Artificial columns are pinned by treating them as forbidden entering
    // columns.  Returns false when unbounded.
    bool phase2(const std::vector<Rational>& obj, Rational* value) {
        driveOutArtificials();
        std::vector<Rational> cost(n_ + m_, Rational(0));
        for (int c = 0; c < n_; ++c) cost[c] = -obj[c];  // minimize the negative
        if (!runSimplex(cost, /*allow_artificial=*/false)) return false;
        Rational z = 0;
        for (int r = 0; r < m_; ++r)
            if (basis_[r] < n_) z += obj[basis_[r]] * T_(r, n_ + m_);
        *value = z;
        return true;
    }

    RationalVector solution() const {
        RationalVector x = RationalVector::Zero(n_);
        for (int r = 0; r < m_; ++r)
            if (basis_[r] < n_) x(basis_[r]) = T_(r, n_ + m_);
        return x;
    }

    // Dual vector of phase 1 in the original row order (sign flips undone by
    // the caller via the stored flips; here rows were already flipped, so
    // the certificate is returned for the flipped system).
    RationalVector phase1Duals(const std::vector<Rational>& cost) const {
        RationalVector y(m_);
        for (int i = 0; i < m_; ++i) y(i) = Rational(1) - reducedCost(cost, n_ + i);
        return y;
    }

    Rational reducedCost(const std::vector<Rational>& cost, int col) const {
        Rational rc = cost[col];
        for (int r = 0; r < m_; ++r) rc -= cost[basis_[r]] * T_(r, col);
        return rc;
    }

private:
    // Bland's rule simplex on the current tableau for min cost.x.
    // Returns false iff unbounded.
    bool runSimplex(const std::vector<Rational>& cost, bool allow_artificial = true) {
        while (true) {
            int entering = -1;
            for (int c = 0; c < n_ + (allow_artificial ? m_ : 0); ++c) {
                if (isBasic(c)) continue;
                if (reducedCost(cost, c) < 0) {
                    entering = c;
                    break;
                }
            }
            if (entering < 0) return true;
            int leaving = -1;
            Rational best;
            for (int r = 0; r < m_; ++r) {
                if (T_(r, entering) <= 0) continue;
                Rational ratio = T_(r, n_ + m_) / T_(r, entering);
                if (leaving < 0 || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leaving])) {
                    best = ratio;
                    leaving = r;
                }
            }
            if (leaving < 0) return false;
            pivot(leaving, entering);
        }
    }

    bool isBasic(int col) const {
        return std::find(basis_.begin(), basis_.end(), col) != basis_.end();
    }

    void pivot(int row, int col) {
        Rational p = T_(row, col);
        T_.row(row) /= p;
        for (int r = 0; r < m_; ++r) {
            if (r == row) continue;
            Rational f = T_(r, col);
            if (f != 0) T_.row(r) -= T_.row(row) * f;
        }
        basis_[row] = col;
    }

    int m_ = 0, n_ = 0;
    RationalMatrix T_;
    std::vector<int> basis_;
};

}  // namespace

StandardFeasibility solveStandardFeasibility(const RationalMatrix& A, const RationalVector& b) {
    const int m = static_cast<int>(A.rows());
    Tableau tab(A, b);
    std::vector<Rational> cost(static_cast<std::size_t>(A.cols()) + m, Rational(0));
    for (int c = 0; c < m; ++c) cost[A.cols() + c] = 1;

    StandardFeasibility out;
    Rational z = tab.phase1();
    if (z == 0) {
        out.feasible = true;
        out.point = tab.solution();
        // Exact re-verification of the feasible point.
        RationalVector residual = A * out.point - b;
        for (int r = 0; r < m; ++r)
            if (residual(r) != 0) throw std::logic_error("simplex produced an invalid point");
        for (int c = 0; c < out.point.size(); ++c)
            if (out.point(c) < 0) throw std::logic_error("simplex produced a negative coordinate");
        return out;
    }

    // Farkas certificate for the sign-flipped rows; undo the flips.
    RationalVector yflip = tab.phase1Duals(cost);
    RationalVector y(m);
    for (int r = 0; r < m; ++r) y(r) = b(r) < 0 ? -yflip(r) : yflip(r);
    RationalVector yA = A.transpose() * y;
    for (int c = 0; c < yA.size(); ++c)
        if (yA(c) > 0) throw std::logic_error("invalid Farkas certificate (y.A)");
    Rational yb = y.dot(b);
    if (yb <= 0) throw std::logic_error("invalid Farkas certificate (y.b)");
    out.feasible = false;
    out.farkas = y;
    return out;
}

LpResult maximize(const LinearSystem& sys, const RationalVector& c) {
    // Free variables x = u - v; inequalities get slacks.
    const int n = sys.cols();
    int slacks = 0;
    for (Rel r : sys.rel)
        if (r == Rel::Le) ++slacks;
    const int cols = 2 * n + slacks;
    RationalMatrix A = RationalMatrix::Zero(sys.rows(), cols);
    int s = 0;
    for (int r = 0; r < sys.rows(); ++r) {
        for (int cix = 0; cix < n; ++cix) {
            A(r, cix) = sys.A(r, cix);
            A(r, n + cix) = -sys.A(r, cix);
        }
        if (sys.rel[r] == Rel::Le) A(r, 2 * n + s++) = 1;
    }
    Tableau tab(A, sys.b);
    LpResult out;
    if (tab.phase1() != 0) {
        out.status = LpStatus::Infeasible;
        return out;
    }
    std::vector<Rational> obj(cols, Rational(0));
    for (int cix = 0; cix < n; ++cix) {
        obj[cix] = c(cix);
        obj[n + cix] = -c(cix);
    }
    Rational value;
    if (!tab.phase2(obj, &value)) {
        out.status = LpStatus::Unbounded;
        return out;
    }
    out.status = LpStatus::Optimal;
    out.value = value;
    RationalVector full = tab.solution();
    out.point = RationalVector::Zero(n);
    for (int cix = 0; cix < n; ++cix) out.point(cix) = full(cix) - full(n + cix);
    return out;
}

namespace {

// Primitive integer form of (a, b): clears denominators, divides by the gcd.
// Equalities also fix the sign of the first nonzero coefficient.
Facet normalizeRow(const RationalVector& a, const Rational& b, bool fix_sign) {
    Integer lcm = 1;
    for (int c = 0; c < a.size(); ++c)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(c).get_den().get_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), b.get_den().get_mpz_t());
    Integer gcd = 0;
    auto scaled = [&](const Rational& q) { return Integer(q.get_num() * (lcm / q.get_den())); };
    for (int c = 0; c < a.size(); ++c)
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled(a(c)).get_mpz_t());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled(b).get_mpz_t());
    if (gcd == 0) gcd = 1;
    Facet f;
    f.a = RationalVector::Zero(a.size());
    int first_nonzero = -1;
    for (int c = 0; c < a.size(); ++c) {
        f.a(c) = Rational(scaled(a(c)) / gcd);
        if (first_nonzero < 0 && f.a(c) != 0) first_nonzero = c;
    }
    f.b = Rational(scaled(b) / gcd);
    if (fix_sign && first_nonzero >= 0 && f.a(first_nonzero) < 0) {
        f.a = -f.a;
        f.b = -f.b;
    }
    return f;
}

bool facetLess(const Facet& x, const Facet& y) {
    for (int c = 0; c < x.a.size(); ++c) {
        if (x.a(c) != y.a(c)) return x.a(c) < y.a(c);
    }
    return x.b < y.b;
}

}  // namespace

LinearSystem simplifySystem(const LinearSystem& sys) {
    LinearSystem out;
    out.names = sys.names;
    out.A.resize(0, sys.cols());
    std::vector<Facet> rows;
    std::vector<Rel> rels;
    for (int r = 0; r < sys.rows(); ++r) {
        RationalVector a = sys.A.row(r).transpose();
        bool zero = true;
        for (int c = 0; c < a.size(); ++c) zero = zero && a(c) == 0;
        if (zero) {
            bool ok = sys.rel[r] == Rel::Le ? (sys.b(r) >= 0) : (sys.b(r) == 0);
            if (!ok) throw std::domain_error("simplifySystem: inconsistent constant row");
            continue;
        }
        Facet f = normalizeRow(a, sys.b(r), sys.rel[r] == Rel::Eq);
        bool dup = false;
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (rels[k] == sys.rel[r] && rows[k] == f) dup = true;
        if (dup) continue;
        rows.push_back(f);
        rels.push_back(sys.rel[r]);
    }
    for (std::size_t k = 0; k < rows.size(); ++k) out.addRow(rows[k].a, rels[k], rows[k].b);
    return out;
}

LinearSystem fourierMotzkin(const LinearSystem& sys, int var) {
    if (var < 0 || var >= sys.cols()) throw std::invalid_argument("fourierMotzkin: no such variable");
    // Expand equalities into <= pairs.
    std::vector<std::pair<RationalVector, Rational>> rows;
    for (int r = 0; r < sys.rows(); ++r) {
        RationalVector a = sys.A.row(r).transpose();
        rows.push_back({a, sys.b(r)});
        if (sys.rel[r] == Rel::Eq) rows.push_back({-a, -sys.b(r)});
    }
    std::vector<int> pos, neg, zero;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        const Rational& coef = rows[r].first(var);
        if (coef > 0)
            pos.push_back(r);
        else if (coef < 0)
            neg.push_back(r);
        else
            zero.push_back(r);
    }
    LinearSystem out;
    out.A.resize(0, sys.cols());
    out.names = sys.names;
    for (int r : zero) out.addRow(rows[r].first, Rel::Le, rows[r].second);
    for (int p : pos)
        for (int q : neg) {
            Rational alpha = rows[p].first(var);   // > 0
            Rational beta = -rows[q].first(var);   // > 0
            RationalVector a = beta * rows[p].first + alpha * rows[q].first;
            Rational bb = beta * rows[p].second + alpha * rows[q].second;
            a(var) = 0;
            out.addRow(a, Rel::Le, bb);
        }
    return simplifySystem(out);
}

LinearSystem removeRedundant(const LinearSystem& sys) {
    LinearSystem current = simplifySystem(sys);
    bool removed = true;
    while (removed) {
        removed = false;
        for (int r = 0; r < current.rows(); ++r) {
            if (current.rel[r] == Rel::Eq) continue;
            LinearSystem rest;
            rest.A.resize(0, current.cols());
            rest.names = current.names;
            for (int k = 0; k < current.rows(); ++k)
                if (k != r) rest.addRow(current.A.row(k).transpose(), current.rel[k], current.b(k));
            LpResult res = maximize(rest, current.A.row(r).transpose());
            bool redundant =
                res.status == LpStatus::Optimal && res.value <= current.b(r);
            if (redundant) {
                current = rest;
                removed = true;
                break;
            }
        }
    }
    return current;
}

// ---------------------------------------------------------------------------
// Double description on the polar cone.

namespace {

struct Ray {
    RationalVector v;
    std::vector<int> tight;  // indices of processed constraints with m.v == 0
};

int rankOf(std::vector<RationalVector> vecs) {
    int rank = 0;
    const int n = vecs.empty() ? 0 : static_cast<int>(vecs[0].size());
    for (int col = 0; col < n && rank < static_cast<int>(vecs.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(vecs.size()); ++r)
            if (vecs[r](col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(vecs[rank], vecs[pivot]);
        for (int r = 0; r < static_cast<int>(vecs.size()); ++r) {
            if (r == rank || vecs[r](col) == 0) continue;
            Rational f = vecs[r](col) / vecs[rank](col);
            vecs[r] -= vecs[rank] * f;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

HullDescription hullFacets(const std::vector<RationalVector>& points) {
    if (points.empty()) throw std::invalid_argument("hullFacets: no points");
    const int n = static_cast<int>(points[0].size());
    const int dim = n + 1;  // homogenized (a, a0)

    // Constraints of the polar cone: (a, a0) with a.v_i + a0 >= 0.
    std::vector<RationalVector> M;
    for (const auto& v : points) {
        RationalVector row(dim);
        for (int c = 0; c < n; ++c) row(c) = v(c);
        row(n) = 1;
        M.push_back(row);
    }

    std::vector<RationalVector> lineality;
    for (int k = 0; k < dim; ++k) {
        RationalVector e = RationalVector::Zero(dim);
        e(k) = 1;
        lineality.push_back(e);
    }
    std::vector<Ray> rays;

    for (int ci = 0; ci < static_cast<int>(M.size()); ++ci) {
        const RationalVector& mrow = M[ci];
        auto dot = [&](const RationalVector& v) { return mrow.dot(v); };
        int lhit = -1;
        for (int l = 0; l < static_cast<int>(lineality.size()); ++l)
            if (dot(lineality[l]) != 0) {
                lhit = l;
                break;
            }
        if (lhit >= 0) {
            RationalVector w = lineality[lhit];
            if (dot(w) < 0) w = -w;
            Rational dw = mrow.dot(w);
            std::vector<RationalVector> newlin;
            for (int l = 0; l < static_cast<int>(lineality.size()); ++l) {
                if (l == lhit) continue;
                RationalVector adj = lineality[l] - w * (dot(lineality[l]) / dw);
                newlin.push_back(adj);
            }
            lineality = std::move(newlin);
            for (Ray& r : rays) {
                Rational d = dot(r.v);
                if (d != 0) r.v -= w * (d / dw);
                r.tight.push_back(ci);
            }
            Ray nr;
            nr.v = w;
            // w is tight on everything processed before (it lay in the
            // lineality space) but not on ci.
            for (int j = 0; j < ci; ++j) nr.tight.push_back(j);
            rays.push_back(std::move(nr));
            continue;
        }
        std::vector<Ray> plusz, minus;
        for (Ray& r : rays) {
            Rational d = dot(r.v);
            if (d == 0) {
                r.tight.push_back(ci);
                plusz.push_back(r);
            } else if (d > 0) {
                plusz.push_back(r);
            } else {
                minus.push_back(r);
            }
        }
        // Combine adjacent (+,-) pairs into boundary rays.  Adjacency: the
        // constraints tight at both must cut the cone down to a 2-face,
        // i.e. have rank dim - |lineality| - 2.
        std::vector<Ray> created;
        const int needed_rank = dim - static_cast<int>(lineality.size()) - 2;
        for (const Ray& rp : rays) {
            if (dot(rp.v) <= 0) continue;
            for (const Ray& rm : rays) {
                if (dot(rm.v) >= 0) continue;
                std::vector<int> common;
                std::set_intersection(rp.tight.begin(), rp.tight.end(), rm.tight.begin(),
                                      rm.tight.end(), std::back_inserter(common));
                std::vector<RationalVector> tightrows;
                for (int j : common) tightrows.push_back(M[j]);
                if (rankOf(tightrows) < needed_rank) continue;
                Ray nr;
                nr.v = rp.v * (-dot(rm.v)) + rm.v * dot(rp.v);
                for (int j = 0; j <= ci; ++j)
                    if (M[j].dot(nr.v) == 0) nr.tight.push_back(j);
                created.push_back(std::move(nr));
            }
        }
        rays = std::move(plusz);
        auto canon = [](const RationalVector& v) {
            RationalVector c = v;
            for (int k = 0; k < c.size(); ++k)
                if (c(k) != 0) {
                    Rational s = c(k) < 0 ? -c(k) : c(k);
                    c /= s;
                    break;
                }
            return c;
        };
        for (Ray& r : created) {
            RationalVector rc = canon(r.v);
            bool dup = false;
            for (const Ray& e : rays) dup = dup || canon(e.v) == rc;
            if (!dup) rays.push_back(std::move(r));
        }
    }

    HullDescription out;
    // Affine-hull equations come from the lineality space: (a, a0) and
    // -(a, a0) both valid means a.x + a0 == 0 on every point.
    std::set<std::vector<std::string>> seen;
    for (const auto& l : lineality) {
        RationalVector a(n);
        for (int c = 0; c < n; ++c) a(c) = -l(c);
        bool zero = true;
        for (int c = 0; c < n; ++c) zero = zero && a(c) == 0;
        if (zero) continue;
        out.equations.push_back(normalizeRow(a, l(n), true));
    }
    for (const Ray& r : rays) {
        RationalVector a(n);
        bool zero = true;
        for (int c = 0; c < n; ++c) {
            a(c) = -r.v(c);
            zero = zero && a(c) == 0;
        }
        if (zero) continue;  // the trivial 0 <= 1 ray
        out.facets.push_back(normalizeRow(a, r.v(n), false));
    }
    std::sort(out.facets.begin(), out.facets.end(), facetLess);
    out.facets.erase(std::unique(out.facets.begin(), out.facets.end()), out.facets.end());
    std::sort(out.equations.begin(), out.equations.end(), facetLess);
    out.equations.erase(std::unique(out.equations.begin(), out.equations.end()),
                        out.equations.end());
    out.dimension = n - static_cast<int>(out.equations.size());
    return out;
}

std::vector<Facet> canonicalFacets(const LinearSystem& sys) {
    std::vector<Facet> out;
    for (int r = 0; r < sys.rows(); ++r)
        out.push_back(normalizeRow(sys.A.row(r).transpose(), sys.b(r), sys.rel[r] == Rel::Eq));
    std::sort(out.begin(), out.end(), facetLess);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace simpctx
