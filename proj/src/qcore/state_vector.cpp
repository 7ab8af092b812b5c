#include "qmem/qcore/state_vector.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qmem/error.hpp"
#include "qmem/simd/kernels.hpp"

namespace qmem {

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw InvalidArgument("qubit count " + std::to_string(n) + " outside [1, 4]");
    }
}

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amps) : n_(n_qubits), amps_(std::move(amps)) {
    check_qubit_count(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw InvalidArgument("StateVector: expected 2^n amplitudes");
    }
    for (const Complex& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InvalidArgument("StateVector: non-finite amplitude");
        }
    }
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
        throw InvalidArgument("StateVector: amplitudes are not normalized");
    }
}

StateVector StateVector::basis(std::string_view bits) {
    const int n = static_cast<int>(bits.size());
    check_qubit_count(n);
    std::size_t index = 0;
    for (int q = 0; q < n; ++q) {
        const char ch = bits[static_cast<std::size_t>(q)];
        if (ch != '0' && ch != '1') {
            throw InvalidArgument("StateVector::basis: expected only '0'/'1'");
        }
        if (ch == '1') {
            index |= std::size_t{1} << q;
        }
    }
    std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
    amps[index] = 1.0;
    return StateVector(n, std::move(amps));
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const Complex& a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= n_) {
        throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                              std::to_string(n_) + " qubits");
    }
}

void StateVector::apply(const Unitary2& u, int qubit) {
    check_qubit(qubit);
    simd::kernels().apply_mat2(amps_, u.matrix(), static_cast<unsigned>(qubit));
}

void StateVector::cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw InvalidArgument("cnot: control and target must differ");
    }
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amps_[i], amps_[i | tbit]);
        }
    }
}

void StateVector::swap(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw InvalidArgument("swap: qubits must differ");
    }
    const std::size_t abit = std::size_t{1} << a;
    const std::size_t bbit = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & abit) && !(i & bbit)) {
            std::swap(amps_[i], amps_[i ^ abit ^ bbit]);
        }
    }
}

StateVector apply_single_qubit(StateVector state, const Unitary2& u, int qubit) {
    state.apply(u, qubit);
    return state;
}

StateVector apply_cnot(StateVector state, int control, int target) {
    state.cnot(control, target);
    return state;
}

StateVector apply_swap(StateVector state, int a, int b) {
    state.swap(a, b);
    return state;
}

}  // namespace qmem
