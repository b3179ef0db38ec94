/**
 * Exact quantum layer for Pauli observables: Gaussian-rational matrices,
 * signed Pauli words, simultaneous eigenprojectors of commuting tuples,
 * Born-rule simplicial distributions, and eigenvalue-assignment checks.
 * Everything stays in exact arithmetic; the 1/sqrt(2) amplitudes of the entangled fixtures
 * disappear inside the density matrices.
 */
#pragma once

#include "simpctx/cohomology.h"

namespace simpctx {

struct QuantumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Signed tensor word over {I, X, Y, Z}; phase is +1 or -1 (Hermitian).
struct Pauli {
    bool negative = false;
    std::string word;  // one letter per qubit, e.g. "XX", "IZ"

    int qubits() const { return static_cast<int>(word.size()); }
    friend bool operator==(const Pauli&, const Pauli&) = default;
    friend auto operator<=>(const Pauli&, const Pauli&) = default;
};

/// Parses "+XX", "-IZ", "XI"; throws on malformed input.
Pauli parsePauli(const std::string& text);
std::string formatPauli(const Pauli& p);

/// Product of Pauli words; throws when the product carries a phase of +-i
/// (i.e. the factors anticommute).
Pauli pauliProduct(const Pauli& a, const Pauli& b);
bool pauliCommute(const Pauli& a, const Pauli& b);

/// Dense matrix of a signed Pauli word (dimension 2^qubits).
ComplexMatrix pauliMatrix(const Pauli& p);

ComplexMatrix adjointOf(const ComplexMatrix& m);
GaussianRational traceOf(const ComplexMatrix& m);
bool isHermitian(const ComplexMatrix& m);

/// Exact density matrix checks: Hermitian, trace one, and positive
/// semidefiniteness via all principal minors (fixture scale).
struct DensityMatrix {
    ComplexMatrix rho;
    explicit DensityMatrix(ComplexMatrix m);
    int dim() const { return static_cast<int>(rho.rows()); }
};

/// Outcome-indexed projective measurement on Z_2^n.
struct ProjectiveMeasurement {
    std::vector<std::pair<Outcome, ComplexMatrix>> projectors;
    const ComplexMatrix& at(const Outcome& theta) const;
};

/// Simultaneous eigenprojectors of a pairwise-commuting involutive tuple:
/// Pi(a) = prod_i (1 + (-1)^{a_i} A_i) / 2, verified complete, orthogonal,
/// idempotent and Hermitian.
ProjectiveMeasurement spectralMeasurement(const std::vector<Pauli>& tuple);

/// Recovers the tuple from a projective measurement (the inverse direction
/// of the spectral correspondence).
std::vector<Pauli> tupleFromMeasurement(const ProjectiveMeasurement& m, int n_qubits);

/// Assignment of observables to the edges of a measurement space; tuples on
/// higher simplices are read off the spine.
class CommutingTupleAssignment {
public:
    CommutingTupleAssignment() = default;
    CommutingTupleAssignment(SSetPtr X, int qubits);

    const PresentedSSet& space() const { return *X_; }
    const SSetPtr& spacePtr() const { return X_; }
    int qubits() const { return qubits_; }

    void setEdge(SimplexId edge, Pauli p);
    void setEdge(const std::string& label, const std::string& pauli);
    /// Observable on a possibly-degenerate edge (identity on degenerates).
    Pauli edge(const SimplexRef& e) const;
    /// The commuting tuple on an n-simplex.
    std::vector<Pauli> tuple(SimplexId s) const;

    struct Violation {
        SimplexId simplex;
        std::string message;
    };
    /// Empty iff every simplex carries pairwise-commuting involutive
    /// observables and all triangle product relations hold.
    std::vector<Violation> check() const;
    bool isValid() const { return check().empty(); }

private:
    SSetPtr X_;
    int qubits_ = 1;
    std::vector<Pauli> edges_;
};

/// Born rule: p_sigma(a) = Tr(rho Pi_sigma(a)), exact; the result passes the
/// simplicial checks by construction (asserted).
SimplicialDistribution<Rational> born(const CommutingTupleAssignment& A, const DensityMatrix& rho);

/// Contextuality of a state with respect to a simplicial measurement.
ContextualityVerdict isStateContextual(const CommutingTupleAssignment& A, const DensityMatrix& rho,
                                       long cap = kDefaultEnumerationCap);
StrongContextualityReport isStateStronglyContextual(const CommutingTupleAssignment& A,
                                                    const DensityMatrix& rho,
                                                    long cap = kDefaultEnumerationCap);

/// Measurement-level contextuality: the cohomological witness on the given
/// loop subspace decides the for-every-state claim; the supplied states are
/// checked directly as corroborating evidence.
struct MeasurementContextualityReport {
    bool contextual_measurement = false;   // witness-backed universal claim
    WitnessResult witness;
    std::vector<bool> state_strongly_contextual;
};
MeasurementContextualityReport isMeasurementContextual(const CommutingTupleAssignment& A,
                                                       const std::string& loop_subspace,
                                                       const std::vector<DensityMatrix>& states,
                                                       long cap = kDefaultEnumerationCap);

/// Eigenvalue assignments respecting the product relations: reduces to the
/// mod-2 edge system with the constrained edges pinned.
struct ValueAssignmentResult {
    bool exists = false;
    std::optional<DeterministicAssignment> assignment;
};
ValueAssignmentResult valueAssignmentExists(const CommutingTupleAssignment& A,
                                            const std::map<SimplexId, int>& constraints,
                                            long cap = kDefaultEnumerationCap);

// Fixtures.
DensityMatrix bellPhiPlus();          // (|00> + |11>)/sqrt(2), as a density matrix
DensityMatrix ghz3();                 // (|000> + |111>)/sqrt(2)
DensityMatrix maximallyMixed(int n);  // 1/2^n on n qubits
/// Pure state from exact amplitudes (must have unit norm).
DensityMatrix pureState(const std::vector<GaussianRational>& amplitudes);

/// The Mermin square observables on the state-dependent space (edge labels
/// x0, x1, y0, y1, x0+y0, ..., diag).
CommutingTupleAssignment merminStateDepAssignment();
/// The refined state-independent space, with w -> -YY and loop -> -II.
CommutingTupleAssignment merminStateIndepAssignment();
/// Three-qubit GHZ/Mermin star data: the four commuting contexts as signed
/// Pauli words, for user-supplied measurement spaces.
std::vector<std::vector<std::string>> merminStarContexts();

}  // namespace simpctx
