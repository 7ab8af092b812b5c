#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "qmem/qcore/unitary.hpp"

namespace qmem {

inline constexpr int kMaxQubits = 4;

/// Pure state over 2^n basis states; qubit q is bit q of the basis index.
class StateVector {
public:
    static constexpr double kNormTolerance = 1e-10;

    /// |0...0>.
    explicit StateVector(int n_qubits);
    /// Validates length 2^n and unit norm.
    StateVector(int n_qubits, std::vector<Complex> amps);

    /// Computational basis state; character k of `bits` is qubit k ("10" = qubit 0 set).
    static StateVector basis(std::string_view bits);

    int n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amps() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    double norm_squared() const;

    void apply(const Unitary2& u, int qubit);
    void cnot(int control, int target);
    void swap(int a, int b);

private:
    void check_qubit(int q) const;

    int n_;
    std::vector<Complex> amps_;
};

StateVector apply_single_qubit(StateVector state, const Unitary2& u, int qubit);
StateVector apply_cnot(StateVector state, int control, int target);
StateVector apply_swap(StateVector state, int a, int b);

/// Throws InvalidArgument unless 1 <= n <= kMaxQubits.
void check_qubit_count(int n);

}  // namespace qmem
