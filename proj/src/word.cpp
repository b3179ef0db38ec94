#include "simpctx/word.h"

#include <algorithm>
#include <sstream>

namespace simpctx {

OperatorWord::OperatorWord(std::vector<int> degeneracies, std::vector<int> faces)
    : degen_(std::move(degeneracies)), faces_(std::move(faces)) {
    for (std::size_t k = 0; k + 1 < degen_.size(); ++k)
        if (degen_[k] <= degen_[k + 1]) throw WordError("degeneracy indices must be strictly decreasing");
    for (std::size_t k = 0; k + 1 < faces_.size(); ++k)
        if (faces_[k] >= faces_[k + 1]) throw WordError("face indices must be strictly increasing");
    for (int j : degen_)
        if (j < 0) throw WordError("negative degeneracy index");
    for (int i : faces_)
        if (i < 0) throw WordError("negative face index");
}

OperatorWord OperatorWord::face(int i) { return OperatorWord({}, {i}); }

OperatorWord OperatorWord::degeneracy(int j) { return OperatorWord({j}, {}); }

OperatorWord OperatorWord::degeneracies(std::vector<int> js) { return OperatorWord(std::move(js), {}); }

int OperatorWord::minInputDim() const {
    // The face part needs every deleted position present; the degeneracy part
    // then needs each s_j applied in an admissible dimension.
    int n = faces_.empty() ? 0 : std::max<int>(faces_.back(), static_cast<int>(faces_.size()));
    while (true) {
        int mid = n - static_cast<int>(faces_.size());
        if (mid < 0) {
            ++n;
            continue;
        }
        bool ok = true;
        int dim = mid;
        for (auto it = degen_.rbegin(); it != degen_.rend(); ++it) {
            if (*it > dim) {
                ok = false;
                break;
            }
            ++dim;
        }
        if (ok) return n;
        ++n;
    }
}

int OperatorWord::outputDim(int n) const {
    return n - static_cast<int>(faces_.size()) + static_cast<int>(degen_.size());
}

bool OperatorWord::validFor(int n) const { return n >= minInputDim(); }

std::vector<int> OperatorWord::dualMap(int n) const {
    if (!validFor(n)) throw WordError("operator word not applicable in dimension " + std::to_string(n));
    // Injection part: [mid] -> [n] hitting the complement of the face set.
    std::vector<int> inj;
    inj.reserve(n + 1 - faces_.size());
    std::size_t fp = 0;
    for (int t = 0; t <= n; ++t) {
        if (fp < faces_.size() && faces_[fp] == t) {
            ++fp;
            continue;
        }
        inj.push_back(t);
    }
    // Degeneracy part: compose the dual surjections.  For the word
    // s_{j1} s_{j2} ... s_{jk} (applied right to left) the dual map is
    // sigma_{jk} o ... o sigma_{j1}, built here by repeated duplication.
    std::vector<int> map = inj;
    for (auto it = degen_.rbegin(); it != degen_.rend(); ++it) {
        int j = *it;
        if (j + 1 > static_cast<int>(map.size()))
            throw WordError("degeneracy index out of range for dimension " + std::to_string(n));
        map.insert(map.begin() + j, map[j]);
    }
    return map;
}

std::string OperatorWord::str() const {
    if (isIdentity()) return "id";
    std::ostringstream os;
    bool first = true;
    for (int j : degen_) {
        if (!first) os << ' ';
        os << 's' << j;
        first = false;
    }
    if (!faces_.empty()) {
        if (!first) os << ' ';
        os << "d{";
        for (std::size_t k = 0; k < faces_.size(); ++k) {
            if (k) os << ',';
            os << faces_[k];
        }
        os << '}';
    }
    return os.str();
}

OperatorWord wordFromDualMap(const std::vector<int>& map, int n) {
    for (std::size_t k = 0; k + 1 < map.size(); ++k)
        if (map[k] > map[k + 1]) throw WordError("dual map is not monotone");
    // Deleted positions = complement of the image.
    std::vector<int> faces;
    std::size_t mp = 0;
    for (int t = 0; t <= n; ++t) {
        while (mp < map.size() && map[mp] < t) ++mp;
        if (mp >= map.size() || map[mp] != t) faces.push_back(t);
    }
    // Duplicated positions, recorded in decreasing order.  A monotone
    // surjection is determined by its duplicated-position set, and inserting
    // duplicates bottom-up reproduces exactly that set, so no index
    // adjustment is needed.
    std::vector<int> degen;
    for (int j = static_cast<int>(map.size()) - 2; j >= 0; --j)
        if (map[j] == map[j + 1]) degen.push_back(j);
    return OperatorWord(std::move(degen), std::move(faces));
}

OperatorWord composeWords(const OperatorWord& w1, const OperatorWord& w2, int n) {
    std::vector<int> inner = w2.dualMap(n);
    int mid = w2.outputDim(n);
    std::vector<int> outer = w1.dualMap(mid);
    std::vector<int> total(outer.size());
    for (std::size_t t = 0; t < outer.size(); ++t) total[t] = inner[outer[t]];
    return wordFromDualMap(total, n);
}

OperatorWord composeWords(const OperatorWord& w1, const OperatorWord& w2) {
    int n = w2.minInputDim();
    while (!w1.validFor(w2.outputDim(n))) ++n;
    return composeWords(w1, w2, n);
}

}  // namespace simpctx
