#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qmem/qcore/state_vector.hpp"
#include "qmem/qcore/unitary.hpp"

namespace qmem {

/// Row-major 2^n x 2^n density operator. Entry (r, c) lives at r * dim + c,
/// so the flattened index carries column qubit q at bit q and row qubit q at
/// bit n + q.
class DensityMatrix {
public:
    static constexpr double kTolerance = 1e-10;
    static constexpr double kEigenFloor = -1e-9;

    /// |0...0><0...0|.
    explicit DensityMatrix(int n_qubits);
    /// Validates shape, hermiticity, unit trace and positivity.
    DensityMatrix(int n_qubits, std::vector<Complex> entries);

    static DensityMatrix from_state(const StateVector& psi);
    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const { return n_; }
    std::size_t dim() const { return dim_; }
    Complex operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    std::span<const Complex> entries() const { return entries_; }
    std::span<Complex> mutable_entries() { return entries_; }

    Complex trace() const;
    std::vector<double> eigenvalues() const;
    /// Hermitian, unit trace and eigenvalues >= kEigenFloor.
    bool is_valid(double tol = kTolerance) const;

    void apply(const Unitary2& u, int qubit);
    /// rho <- M rho M^dagger for an arbitrary 2x2 M (Kraus or Pauli).
    void conjugate_by(const Mat2& m, int qubit);
    void cnot(int control, int target);
    void swap(int a, int b);

private:
    struct Unchecked {};
    DensityMatrix(int n_qubits, std::vector<Complex> entries, Unchecked);
    void check_qubit(int q) const;
    void permute(std::size_t (*map)(std::size_t, int, int), int a, int b);

    int n_;
    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// Reduced state of qubit 0 with every other qubit traced out. Throws for 1 qubit.
DensityMatrix partial_trace_to_qubit0(const StateVector& psi);
DensityMatrix partial_trace_to_qubit0(const DensityMatrix& rho);

/// Reduced state of any single qubit (returns the input's own state for n = 1).
DensityMatrix reduced_qubit(const StateVector& psi, int qubit);
DensityMatrix reduced_qubit(const DensityMatrix& rho, int qubit);

/// -tr(rho log2 rho). Eigenvalues below 1e-12 contribute nothing; eigenvalues
/// below -1e-9 raise NumericalError.
double von_neumann_entropy(const DensityMatrix& rho);

/// (tr rho X, tr rho Y, tr rho Z) of a 1-qubit density matrix.
BlochVector bloch_coordinates(const DensityMatrix& rho);
/// Bloch vector of one qubit's reduced state.
BlochVector bloch_of_qubit(const StateVector& psi, int qubit);
BlochVector bloch_of_qubit(const DensityMatrix& rho, int qubit);

}  // namespace qmem
