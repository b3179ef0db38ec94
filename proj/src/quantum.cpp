#include "simpctx/quantum.h"

#include <algorithm>

#include "simpctx/builtins.h"

namespace simpctx {

namespace {

// Single-qubit Pauli product: returns (phase exponent k of i^k, letter).
std::pair<int, char> letterProduct(char a, char b) {
    if (a == 'I') return {0, b};
    if (b == 'I') return {0, a};
    if (a == b) return {0, 'I'};
    // Cyclic: XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
    static const std::string order = "XYZ";
    int ia = static_cast<int>(order.find(a));
    int ib = static_cast<int>(order.find(b));
    char c = order[3 - ia - ib];
    bool forward = (ib - ia + 3) % 3 == 1;
    return {forward ? 1 : 3, c};
}

ComplexMatrix letterMatrix(char a) {
    ComplexMatrix m(2, 2);
    GaussianRational z0(Rational(0)), one(Rational(1));
    GaussianRational i = gaussianI();
    switch (a) {
        case 'I':
            m << one, z0, z0, one;
            break;
        case 'X':
            m << z0, one, one, z0;
            break;
        case 'Y':
            m << z0, GaussianRational(Rational(0), Rational(-1)), i, z0;
            break;
        case 'Z':
            m << one, z0, z0, GaussianRational(Rational(-1));
            break;
        default:
            throw QuantumError("unknown Pauli letter");
    }
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// Determinant by fraction-free-ish Gaussian elimination over the field.
GaussianRational determinant(ComplexMatrix m) {
    const int n = static_cast<int>(m.rows());
    GaussianRational det(Rational(1));
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!(m(r, col) == GaussianRational())) {
                pivot = r;
                break;
            }
        if (pivot < 0) return GaussianRational();
        if (pivot != col) {
            m.row(col).swap(m.row(pivot));
            det = -det;
        }
        det = det * m(col, col);
        for (int r = col + 1; r < n; ++r) {
            GaussianRational f = m(r, col) / m(col, col);
            for (int c = col; c < n; ++c) m(r, c) = m(r, c) - f * m(col, c);
        }
    }
    return det;
}

}  // namespace

Pauli parsePauli(const std::string& text) {
    Pauli p;
    std::size_t k = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        p.negative = text[k] == '-';
        ++k;
    }
    if (k == text.size()) throw QuantumError("empty Pauli word");
    for (; k < text.size(); ++k) {
        char c = text[k];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
            throw QuantumError("malformed Pauli word '" + text + "'");
        p.word += c;
    }
    return p;
}

std::string formatPauli(const Pauli& p) { return (p.negative ? "-" : "+") + p.word; }

Pauli pauliProduct(const Pauli& a, const Pauli& b) {
    if (a.qubits() != b.qubits()) throw QuantumError("Pauli qubit count mismatch");
    int phase = (a.negative ? 2 : 0) + (b.negative ? 2 : 0);
    Pauli out;
    for (int q = 0; q < a.qubits(); ++q) {
        auto [k, c] = letterProduct(a.word[q], b.word[q]);
        phase += k;
        out.word += c;
    }
    phase %= 4;
    if (phase == 1 || phase == 3)
        throw QuantumError("product of anticommuting Paulis is not Hermitian");
    out.negative = phase == 2;
    return out;
}

bool pauliCommute(const Pauli& a, const Pauli& b) {
    if (a.qubits() != b.qubits()) throw QuantumError("Pauli qubit count mismatch");
    int anti = 0;
    for (int q = 0; q < a.qubits(); ++q) {
        char x = a.word[q], y = b.word[q];
        if (x != 'I' && y != 'I' && x != y) ++anti;
    }
    return anti % 2 == 0;
}

ComplexMatrix pauliMatrix(const Pauli& p) {
    ComplexMatrix m = letterMatrix(p.word.empty() ? 'I' : p.word[0]);
    if (p.word.empty()) throw QuantumError("empty Pauli word");
    for (int q = 1; q < p.qubits(); ++q) m = kron(m, letterMatrix(p.word[q]));
    if (p.negative) {
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
    }
    return m;
}

ComplexMatrix adjointOf(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(c, r) = m(r, c).conj();
    return out;
}

GaussianRational traceOf(const ComplexMatrix& m) {
    GaussianRational t;
    for (int r = 0; r < m.rows(); ++r) t += m(r, r);
    return t;
}

bool isHermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return false;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!(m(r, c) == m(c, r).conj())) return false;
    return true;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : rho(std::move(m)) {
    if (rho.rows() != rho.cols()) throw QuantumError("density matrix must be square");
    if (!isHermitian(rho)) throw QuantumError("density matrix must be Hermitian");
    if (!(traceOf(rho) == GaussianRational(Rational(1))))
        throw QuantumError("density matrix must have trace one");
    // Positive semidefiniteness: every principal minor of a Hermitian matrix
    // must be nonnegative (and real).
    const int n = dim();
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> idx;
        for (int k = 0; k < n; ++k)
            if (mask & (1 << k)) idx.push_back(k);
        ComplexMatrix sub(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = rho(idx[r], idx[c]);
        GaussianRational det = determinant(sub);
        if (!det.isReal() || det.re < 0)
            throw QuantumError("density matrix is not positive semidefinite");
    }
}

const ComplexMatrix& ProjectiveMeasurement::at(const Outcome& theta) const {
    for (const auto& [o, m] : projectors)
        if (o == theta) return m;
    throw QuantumError("no projector for this outcome");
}

ProjectiveMeasurement spectralMeasurement(const std::vector<Pauli>& tuple) {
    if (tuple.empty()) throw QuantumError("spectralMeasurement needs at least one observable");
    const int q = tuple[0].qubits();
    for (const Pauli& p : tuple)
        if (p.qubits() != q) throw QuantumError("mixed qubit counts in tuple");
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j)
            if (!pauliCommute(tuple[i], tuple[j]))
                throw QuantumError("tuple is not pairwise commuting");
    const int dim = 1 << q;
    ComplexMatrix identity = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) identity(k, k) = GaussianRational(Rational(1));

    std::vector<ComplexMatrix> obs;
    for (const Pauli& p : tuple) obs.push_back(pauliMatrix(p));

    ProjectiveMeasurement out;
    const int n = static_cast<int>(tuple.size());
    std::vector<int> a(n, 0);
    while (true) {
        ComplexMatrix proj = identity;
        for (int k = 0; k < n; ++k) {
            ComplexMatrix factor = identity;
            Rational half(1, 2);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) {
                    GaussianRational term = obs[k](r, c);
                    if (a[k] == 1) term = -term;
                    factor(r, c) = (identity(r, c) + term) * GaussianRational(half);
                }
            proj = proj * factor;
        }
        out.projectors.push_back({Outcome(a.begin(), a.end()), proj});
        int k = 0;
        for (; k < n; ++k) {
            if (++a[k] < 2) break;
            a[k] = 0;
        }
        if (k == n) break;
    }

    // Verify completeness, orthogonality, idempotence and Hermiticity.
    auto isZeroMatrix = [](const ComplexMatrix& m) {
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                if (!(m(r, c) == GaussianRational())) return false;
        return true;
    };
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto& [theta, proj] : out.projectors) {
        if (!isHermitian(proj)) throw QuantumError("projector is not Hermitian");
        if (!isZeroMatrix(proj * proj - proj)) throw QuantumError("projector is not idempotent");
        sum = sum + proj;
    }
    if (!isZeroMatrix(sum - identity)) throw QuantumError("projectors do not sum to one");
    for (std::size_t i = 0; i < out.projectors.size(); ++i)
        for (std::size_t j = i + 1; j < out.projectors.size(); ++j)
            if (!isZeroMatrix(out.projectors[i].second * out.projectors[j].second))
                throw QuantumError("projectors are not orthogonal");
    return out;
}

std::vector<Pauli> tupleFromMeasurement(const ProjectiveMeasurement& m, int n_qubits) {
    if (m.projectors.empty()) throw QuantumError("empty measurement");
    const int n = static_cast<int>(m.projectors.front().first.size());
    const int dim = 1 << n_qubits;
    std::vector<Pauli> out;
    for (int k = 0; k < n; ++k) {
        ComplexMatrix A = ComplexMatrix::Zero(dim, dim);
        for (const auto& [theta, proj] : m.projectors) {
            GaussianRational sign(Rational(theta[k] == 0 ? 1 : -1));
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) A(r, c) += sign * proj(r, c);
        }
        // Match against signed Pauli words.
        bool found = false;
        std::vector<std::string> words = {""};
        for (int q = 0; q < n_qubits; ++q) {
            std::vector<std::string> next;
            for (const std::string& w : words)
                for (char c : {'I', 'X', 'Y', 'Z'}) next.push_back(w + c);
            words = std::move(next);
        }
        for (const std::string& w : words) {
            for (bool neg : {false, true}) {
                Pauli p{neg, w};
                ComplexMatrix pm = pauliMatrix(p);
                bool equal = true;
                for (int r = 0; r < dim && equal; ++r)
                    for (int c = 0; c < dim && equal; ++c) equal = pm(r, c) == A(r, c);
                if (equal) {
                    out.push_back(p);
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) throw QuantumError("recovered observable is not a signed Pauli word");
    }
    return out;
}

CommutingTupleAssignment::CommutingTupleAssignment(SSetPtr X, int qubits)
    : X_(std::move(X)), qubits_(qubits) {
    Pauli id;
    id.word = std::string(qubits_, 'I');
    edges_.assign(X_->count(1), id);
}

void CommutingTupleAssignment::setEdge(SimplexId edge, Pauli p) {
    if (edge.dim != 1) throw QuantumError("observables live on edges");
    if (p.qubits() != qubits_) throw QuantumError("observable qubit count mismatch");
    edges_[edge.id] = std::move(p);
}

void CommutingTupleAssignment::setEdge(const std::string& label, const std::string& pauli) {
    setEdge(X_->byLabel(label), parsePauli(pauli));
}

Pauli CommutingTupleAssignment::edge(const SimplexRef& e) const {
    if (e.isDegenerate()) return Pauli{false, std::string(qubits_, 'I')};
    return edges_[e.base.id];
}

std::vector<Pauli> CommutingTupleAssignment::tuple(SimplexId s) const {
    std::vector<Pauli> out;
    for (int i = 1; i <= s.dim; ++i) out.push_back(edge(X_->spineEdge(s, i)));
    return out;
}

std::vector<CommutingTupleAssignment::Violation> CommutingTupleAssignment::check() const {
    std::vector<Violation> out;
    const PresentedSSet& X = *X_;
    for (int dim = 2; dim <= X.maxDim(); ++dim) {
        for (int id = 0; id < X.count(dim); ++id) {
            std::vector<Pauli> t = tuple({dim, id});
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    if (!pauliCommute(t[i], t[j]))
                        out.push_back({{dim, id},
                                       "observables " + formatPauli(t[i]) + " and " +
                                           formatPauli(t[j]) + " do not commute"});
        }
    }
    for (int id = 0; id < X.count(2); ++id) {
        SimplexId s{2, id};
        Pauli a = edge(X.tableFace(s, 2));
        Pauli b = edge(X.tableFace(s, 0));
        Pauli c = edge(X.tableFace(s, 1));
        if (!pauliCommute(a, b)) continue;  // already reported above
        Pauli prod = pauliProduct(a, b);
        if (!(prod == c))
            out.push_back({s, "product " + formatPauli(a) + " * " + formatPauli(b) + " = " +
                                  formatPauli(prod) + " does not match the d1 edge " +
                                  formatPauli(c)});
    }
    return out;
}

SimplicialDistribution<Rational> born(const CommutingTupleAssignment& A, const DensityMatrix& rho) {
    auto violations = A.check();
    if (!violations.empty())
        throw QuantumError("invalid assignment: " + violations.front().message);
    if (rho.dim() != (1 << A.qubits())) throw QuantumError("state dimension mismatch");
    const PresentedSSet& X = A.space();
    SimplicialDistribution<Rational> p(A.spacePtr(), OutcomeSpace::nerve(2));
    for (int dim = 1; dim <= X.maxDim(); ++dim) {
        for (int id = 0; id < X.count(dim); ++id) {
            ProjectiveMeasurement m = spectralMeasurement(A.tuple({dim, id}));
            Distribution<Rational> cell;
            for (const auto& [theta, proj] : m.projectors) {
                GaussianRational tr = traceOf(rho.rho * proj);
                if (!tr.isReal()) throw QuantumError("Born probability has an imaginary part");
                cell.add(theta, tr.re);
            }
            p.set({dim, id}, std::move(cell));
        }
    }
    auto report = p.check();
    if (!report.empty()) throw std::logic_error("Born distribution failed the simplicial check");
    return p;
}

ContextualityVerdict isStateContextual(const CommutingTupleAssignment& A, const DensityMatrix& rho,
                                       long cap) {
    return isNoncontextual(born(A, rho), cap);
}

StrongContextualityReport isStateStronglyContextual(const CommutingTupleAssignment& A,
                                                    const DensityMatrix& rho, long cap) {
    return isStronglyContextual(born(A, rho), cap);
}

MeasurementContextualityReport isMeasurementContextual(const CommutingTupleAssignment& A,
                                                       const std::string& loop_subspace,
                                                       const std::vector<DensityMatrix>& states,
                                                       long cap) {
    MeasurementContextualityReport out;
    Subspace Z = A.space().namedSubspace(loop_subspace);
    // Any state works for the witness: the restriction to the loop is
    // state-independent.  Use the maximally mixed state when none is given.
    DensityMatrix probe = states.empty() ? maximallyMixed(A.qubits()) : states.front();
    SimplicialDistribution<Rational> p = born(A, probe);
    out.witness = clWitness(p, Z, cap);
    out.contextual_measurement =
        out.witness.verdict == WitnessResult::Verdict::StronglyContextualByWitness;
    for (const DensityMatrix& rho : states)
        out.state_strongly_contextual.push_back(
            isStateStronglyContextual(A, rho, cap).strongly_contextual);
    return out;
}

ValueAssignmentResult valueAssignmentExists(const CommutingTupleAssignment& A,
                                            const std::map<SimplexId, int>& constraints,
                                            long cap) {
    auto violations = A.check();
    if (!violations.empty())
        throw QuantumError("invalid assignment: " + violations.front().message);
    ValueAssignmentResult out;
    auto sols = enumerateDeterministic(A.spacePtr(), OutcomeSpace::nerve(2), constraints, cap);
    out.exists = !sols.empty();
    if (out.exists) out.assignment = sols.front();
    return out;
}

DensityMatrix pureState(const std::vector<GaussianRational>& amplitudes) {
    const int dim = static_cast<int>(amplitudes.size());
    ComplexMatrix rho(dim, dim);
    GaussianRational norm;
    for (const auto& a : amplitudes) norm += a * a.conj();
    if (!(norm == GaussianRational(Rational(1))))
        throw QuantumError("amplitudes are not normalized");
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) rho(r, c) = amplitudes[r] * amplitudes[c].conj();
    return DensityMatrix(std::move(rho));
}

DensityMatrix bellPhiPlus() {
    // |phi> = (|00> + |11>)/sqrt(2); rho has exact entries 1/2.
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    Rational half(1, 2);
    rho(0, 0) = GaussianRational(half);
    rho(0, 3) = GaussianRational(half);
    rho(3, 0) = GaussianRational(half);
    rho(3, 3) = GaussianRational(half);
    return DensityMatrix(std::move(rho));
}

DensityMatrix ghz3() {
    ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
    Rational half(1, 2);
    rho(0, 0) = GaussianRational(half);
    rho(0, 7) = GaussianRational(half);
    rho(7, 0) = GaussianRational(half);
    rho(7, 7) = GaussianRational(half);
    return DensityMatrix(std::move(rho));
}

DensityMatrix maximallyMixed(int n) {
    const int dim = 1 << n;
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    Rational w(1, dim);
    for (int k = 0; k < dim; ++k) rho(k, k) = GaussianRational(w);
    return DensityMatrix(std::move(rho));
}

namespace {

CommutingTupleAssignment merminCore(const char* space_name) {
    SSetPtr X = builtinSpace(space_name);
    CommutingTupleAssignment A(X, 2);
    A.setEdge("x0", "+XI");
    A.setEdge("y0", "+IX");
    A.setEdge("x1", "+ZI");
    A.setEdge("y1", "+IZ");
    A.setEdge("x0+y0", "+XX");
    A.setEdge("x1+y0", "+ZX");
    A.setEdge("x0+y1", "+XZ");
    A.setEdge("x1+y1", "+ZZ");
    A.setEdge("diag", "+YY");
    return A;
}

}  // namespace

CommutingTupleAssignment merminStateDepAssignment() {
    return merminCore("mermin_square_state_dep");
}

CommutingTupleAssignment merminStateIndepAssignment() {
    CommutingTupleAssignment A = merminCore("mermin_square_state_indep");
    A.setEdge("w", "-YY");
    A.setEdge("loop", "-II");
    return A;
}

std::vector<std::vector<std::string>> merminStarContexts() {
    // The four GHZ contexts of the star, one list of commuting observables
    // per context; the omitted nonlocal context would carry +XXX.
    return {
        {"+XII", "+IYI", "+IIY"},  // product +XYY
        {"+YII", "+IXI", "+IIY"},  // product +YXY
        {"+YII", "+IYI", "+IIX"},  // product +YYX
        {"+XII", "+IXI", "+IIX"},  // product +XXX
    };
}

}  // namespace simpctx
