#include "simpctx/linalg.h"

#include <algorithm>
#include <stdexcept>

namespace simpctx {

namespace {

Integer absInt(const Integer& a) { return a < 0 ? Integer(-a) : a; }

long invModP(long a, long p) {
    long t0 = 0, t1 = 1, r0 = p, r1 = ((a % p) + p) % p;
    while (r1 != 0) {
        long q = r0 / r1;
        long tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 != 1) throw std::domain_error("invModP: not invertible");
    return ((t0 % p) + p) % p;
}

}  // namespace

SmithForm smithNormalForm(const IntegerMatrix& A) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    SmithForm f;
    f.S = A;
    f.U = IntegerMatrix::Identity(m, m);
    f.V = IntegerMatrix::Identity(n, n);

    int t = 0;
    while (t < m && t < n) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        int pr = -1, pc = -1;
        Integer best = 0;
        for (int r = t; r < m; ++r)
            for (int c = t; c < n; ++c)
                if (f.S(r, c) != 0 && (pr < 0 || absInt(f.S(r, c)) < best)) {
                    best = absInt(f.S(r, c));
                    pr = r;
                    pc = c;
                }
        if (pr < 0) break;
        f.S.row(t).swap(f.S.row(pr));
        f.U.row(t).swap(f.U.row(pr));
        f.S.col(t).swap(f.S.col(pc));
        f.V.col(t).swap(f.V.col(pc));

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = t + 1; r < m; ++r) {
                if (f.S(r, t) == 0) continue;
                Integer q = f.S(r, t) / f.S(t, t);
                if (q != 0) {
                    f.S.row(r) -= f.S.row(t) * q;
                    f.U.row(r) -= f.U.row(t) * q;
                }
                if (f.S(r, t) != 0) {
                    f.S.row(t).swap(f.S.row(r));
                    f.U.row(t).swap(f.U.row(r));
                    clean = false;
                }
            }
            for (int c = t + 1; c < n; ++c) {
                if (f.S(t, c) == 0) continue;
                Integer q = f.S(t, c) / f.S(t, t);
                if (q != 0) {
                    f.S.col(c) -= f.S.col(t) * q;
                    f.V.col(c) -= f.V.col(t) * q;
                }
                if (f.S(t, c) != 0) {
                    f.S.col(t).swap(f.S.col(c));
                    f.V.col(t).swap(f.V.col(c));
                    clean = false;
                }
            }
        }
        ++t;
    }

    for (int k = 0; k < std::min(m, n); ++k) {
        if (f.S(k, k) < 0) {
            f.S.col(k) = -f.S.col(k);
            f.V.col(k) = -f.V.col(k);
        }
    }

    // Enforce the divisibility chain s_k | s_{k+1} on the 2x2 diagonal
    // blocks: fold, then re-diagonalize with the extended gcd.
    bool again = true;
    while (again) {
        again = false;
        for (int k = 0; k + 1 < std::min(m, n); ++k) {
            Integer a = f.S(k, k), b = f.S(k + 1, k + 1);
            if (a == 0 || b == 0 || b % a == 0) continue;
            Integer g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            f.S.col(k) += f.S.col(k + 1);
            f.V.col(k) += f.V.col(k + 1);
            // Block is now [[a, 0], [b, b]]; the unimodular row transform
            // [[x, y], [-b/g, a/g]] turns it into [[g, yb], [0, ab/g]].
            IntegerMatrix Sr = f.S, Ur = f.U;
            f.S.row(k) = x * Sr.row(k) + y * Sr.row(k + 1);
            f.U.row(k) = x * Ur.row(k) + y * Ur.row(k + 1);
            f.S.row(k + 1) = Sr.row(k) * Integer(-b / g) + Sr.row(k + 1) * Integer(a / g);
            f.U.row(k + 1) = Ur.row(k) * Integer(-b / g) + Ur.row(k + 1) * Integer(a / g);
            Integer q = f.S(k, k + 1) / g;
            f.S.col(k + 1) -= f.S.col(k) * q;
            f.V.col(k + 1) -= f.V.col(k) * q;
            if (f.S(k, k) < 0) {
                f.S.col(k) = -f.S.col(k);
                f.V.col(k) = -f.V.col(k);
            }
            if (f.S(k + 1, k + 1) < 0) {
                f.S.col(k + 1) = -f.S.col(k + 1);
                f.V.col(k + 1) = -f.V.col(k + 1);
            }
            if (f.S(k, k + 1) != 0 || f.S(k + 1, k) != 0)
                throw std::logic_error("smith: divisibility repair failed");
            again = true;
        }
    }

    f.rank = 0;
    for (int k = 0; k < std::min(m, n); ++k)
        if (f.S(k, k) != 0) ++f.rank;
    return f;
}

long ModSolutions::countBound(long cap) const {
    long total = 1;
    for (long o : orders) {
        if (o <= 0) return cap + 1;
        if (total > cap / o) return cap + 1;
        total *= o;
    }
    return total;
}

ModSolutions solveMod(const IntegerMatrix& A, const IntegerVector& b, int d) {
    if (d < 2) throw std::invalid_argument("solveMod: modulus must be >= 2");
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    SmithForm f = smithNormalForm(A);
    IntegerVector c = f.U * b;
    Integer D(d);

    ModSolutions out;
    std::vector<Integer> y(n, 0);
    for (int k = 0; k < f.rank; ++k) {
        Integer s = f.diag(k);
        Integer rhs = ((c(k) % D) + D) % D;
        Integer g;
        mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), D.get_mpz_t());
        if (rhs % g != 0) return out;
        Integer s1 = (s / g) % D, d1 = D / g, r1 = rhs / g;
        Integer inv;
        if (d1 == 1) {
            y[k] = 0;
        } else {
            if (mpz_invert(inv.get_mpz_t(), s1.get_mpz_t(), d1.get_mpz_t()) == 0)
                throw std::logic_error("solveMod: inverse must exist");
            y[k] = ((r1 * inv) % d1 + d1) % d1;
        }
    }
    // Rows beyond the rank impose 0 = c_r (mod d).
    for (int r = f.rank; r < m; ++r)
        if (c(r) % D != 0) return out;

    out.solvable = true;
    IntegerVector yv(n);
    for (int k = 0; k < n; ++k) yv(k) = y[k];
    IntegerVector x = f.V * yv;
    out.particular.resize(n);
    for (int k = 0; k < n; ++k)
        out.particular[k] = static_cast<int>(mpz_class(((x(k) % D) + D) % D).get_si());

    // Solutions of s*y = 0 (mod d) per transformed coordinate: multiples of
    // d/gcd(s,d), of which there are gcd(s,d); free coordinates take all of
    // Z_d.  The unimodular V makes the product enumeration duplicate-free.
    for (int k = 0; k < n; ++k) {
        Integer step, order;
        if (k < f.rank) {
            Integer s = f.diag(k);
            Integer g;
            mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), D.get_mpz_t());
            if (g == 1) continue;
            step = D / g;
            order = g;
        } else {
            step = 1;
            order = D;
        }
        std::vector<int> gen(n);
        bool nonzero = false;
        for (int r = 0; r < n; ++r) {
            Integer v = ((f.V(r, k) * step) % D + D) % D;
            gen[r] = static_cast<int>(v.get_si());
            nonzero = nonzero || gen[r] != 0;
        }
        if (!nonzero) continue;
        out.generators.push_back(std::move(gen));
        out.orders.push_back(order.get_si());
    }
    return out;
}

std::vector<std::vector<int>> enumerateMod(const ModSolutions& sols, int d, long cap) {
    std::vector<std::vector<int>> out;
    if (!sols.solvable) return out;
    if (sols.countBound(cap) > cap)
        throw std::length_error("solution enumeration exceeds the resource cap");
    const int n = static_cast<int>(sols.particular.size());
    std::vector<long> counter(sols.generators.size(), 0);
    while (true) {
        std::vector<int> x = sols.particular;
        for (std::size_t g = 0; g < sols.generators.size(); ++g) {
            if (counter[g] == 0) continue;
            for (int k = 0; k < n; ++k)
                x[k] = static_cast<int>(
                    (x[k] + static_cast<long>(sols.generators[g][k]) * counter[g]) % d);
        }
        out.push_back(std::move(x));
        std::size_t g = 0;
        for (; g < counter.size(); ++g) {
            if (++counter[g] < sols.orders[g]) break;
            counter[g] = 0;
        }
        if (g == counter.size()) break;
    }
    return out;
}

int echelonModP(std::vector<std::vector<int>>& rows, int p) {
    if (rows.empty()) return 0;
    const int n = static_cast<int>(rows[0].size());
    int rank = 0;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (((rows[r][col] % p) + p) % p != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        long inv = invModP(rows[rank][col], p);
        for (int c = 0; c < n; ++c)
            rows[rank][c] =
                static_cast<int>(((static_cast<long>(rows[rank][c]) * inv) % p + p) % p);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank) continue;
            long factor = ((rows[r][col] % p) + p) % p;
            if (factor == 0) continue;
            for (int c = 0; c < n; ++c)
                rows[r][c] = static_cast<int>(
                    (((rows[r][c] - factor * rows[rank][c]) % p) + static_cast<long>(p) * p) % p);
        }
        ++rank;
    }
    return rank;
}

std::optional<RationalMatrix> solveLinear(RationalMatrix A, RationalMatrix B) {
    const int n = static_cast<int>(A.rows());
    if (A.cols() != n || B.rows() != n) return std::nullopt;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (A(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        A.row(col).swap(A.row(pivot));
        B.row(col).swap(B.row(pivot));
        Rational p = A(col, col);
        A.row(col) /= p;
        B.row(col) /= p;
        for (int r = 0; r < n; ++r) {
            if (r == col || A(r, col) == 0) continue;
            Rational f = A(r, col);
            A.row(r) -= A.row(col) * f;
            B.row(r) -= B.row(col) * f;
        }
    }
    return B;
}

std::vector<Integer> cokernelInvariants(const IntegerMatrix& M, int n) {
    if (M.cols() == 0) return std::vector<Integer>(n, 0);
    SmithForm f = smithNormalForm(M);
    std::vector<Integer> out;
    for (int k = 0; k < n; ++k) {
        Integer s = k < f.rank ? f.diag(k) : Integer(0);
        if (s == 1) continue;
        out.push_back(s);
    }
    return out;
}

}  // namespace simpctx
