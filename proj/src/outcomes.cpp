#include "simpctx/outcomes.h"

#include <algorithm>

namespace simpctx {

OutcomeSpace OutcomeSpace::nerve(int d) {
    if (d < 2) throw OutcomeError("nerve: d must be at least 2");
    return OutcomeSpace(Kind::Nerve, d);
}

OutcomeSpace OutcomeSpace::circle(int d) {
    if (d < 2) throw OutcomeError("circle: d must be at least 2");
    return OutcomeSpace(Kind::Circle, d);
}

OutcomeSpace OutcomeSpace::discretePower(int d) {
    if (d < 2) throw OutcomeError("discrete: d must be at least 2");
    return OutcomeSpace(Kind::DiscretePower, d);
}

long OutcomeSpace::countSimplices(int n) const {
    long total = 1;
    switch (kind_) {
        case Kind::Nerve:
            for (int k = 0; k < n; ++k) total *= d_;
            return total;
        case Kind::Circle:
            return n + 1;
        case Kind::DiscretePower:
            for (int k = 0; k <= n; ++k) total *= d_;
            return total;
    }
    return 0;
}

std::vector<Outcome> OutcomeSpace::simplices(int n) const {
    if (n < 0) throw OutcomeError("negative dimension");
    std::vector<Outcome> out;
    if (kind_ == Kind::Circle) {
        // The zero tuple and the unit tuples, per the embedding into the nerve.
        out.push_back(Outcome(n, 0));
        for (int k = 0; k < n; ++k) {
            Outcome e(n, 0);
            e[k] = 1;
            out.push_back(e);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    int len = tupleLength(n);
    Outcome cur(len, 0);
    while (true) {
        out.push_back(cur);
        int pos = len - 1;
        while (pos >= 0 && cur[pos] == d_ - 1) {
            cur[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++cur[pos];
    }
    if (len == 0) out = {Outcome{}};
    return out;
}

bool OutcomeSpace::contains(const Outcome& theta, int n) const {
    if (static_cast<int>(theta.size()) != tupleLength(n)) return false;
    for (int a : theta)
        if (a < 0 || a >= d_) return false;
    if (kind_ == Kind::Circle) {
        int ones = 0;
        for (int a : theta) {
            if (a == 1)
                ++ones;
            else if (a != 0)
                return false;
        }
        return ones <= 1;
    }
    return true;
}

Outcome OutcomeSpace::face(const Outcome& theta, int i) const {
    int n = dimOf(theta);
    if (n < 1) throw OutcomeError("face of a 0-dimensional outcome");
    if (i < 0 || i > n) throw OutcomeError("face index out of range");
    Outcome out;
    if (kind_ == Kind::DiscretePower) {
        out = theta;
        out.erase(out.begin() + i);
        return out;
    }
    // Nerve faces: drop at the ends, add adjacent entries mod d inside.
    if (i == 0) {
        out.assign(theta.begin() + 1, theta.end());
    } else if (i == n) {
        out.assign(theta.begin(), theta.end() - 1);
    } else {
        out = theta;
        out[i - 1] = (out[i - 1] + out[i]) % d_;
        out.erase(out.begin() + i);
    }
    return out;
}

Outcome OutcomeSpace::degeneracy(const Outcome& theta, int j) const {
    int n = dimOf(theta);
    if (j < 0 || j > n) throw OutcomeError("degeneracy index out of range");
    Outcome out = theta;
    if (kind_ == Kind::DiscretePower) {
        out.insert(out.begin() + j, theta[j]);
    } else {
        out.insert(out.begin() + j, 0);
    }
    return out;
}

Outcome OutcomeSpace::apply(const Outcome& theta, const OperatorWord& w) const {
    Outcome cur = theta;
    std::vector<int> faces = w.facePart();
    while (!faces.empty()) {
        int f = faces.back();
        faces.pop_back();
        cur = face(cur, f);
    }
    const auto& degs = w.degeneracyPart();
    for (auto it = degs.rbegin(); it != degs.rend(); ++it) cur = degeneracy(cur, *it);
    return cur;
}

std::string OutcomeSpace::name() const {
    switch (kind_) {
        case Kind::Nerve:
            return "nerve(" + std::to_string(d_) + ")";
        case Kind::Circle:
            return "circle(" + std::to_string(d_) + ")";
        case Kind::DiscretePower:
            return "discrete(" + std::to_string(d_) + ")";
    }
    return "?";
}

std::string formatOutcome(const Outcome& theta) {
    std::string out;
    for (int a : theta) {
        if (a < 0 || a > 9) throw OutcomeError("formatOutcome requires digits 0..9");
        out += static_cast<char>('0' + a);
    }
    return out;
}

Outcome parseOutcome(const std::string& text) {
    Outcome out;
    for (char c : text) {
        if (c < '0' || c > '9') throw OutcomeError("malformed outcome string '" + text + "'");
        out.push_back(c - '0');
    }
    return out;
}

}  // namespace simpctx
