#include "qmem/qcore/channels.hpp"

#include <cmath>
#include <string>

#include "qmem/error.hpp"
#include "qmem/simd/kernels.hpp"

namespace qmem {
namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument(std::string(what) + ": probability " + std::to_string(p) +
                              " outside [0, 1]");
    }
}

void depolarize_one(DensityMatrix& rho, double p, int q) {
    const auto& k = simd::kernels();
    auto acc = rho.mutable_entries();
    const DensityMatrix base = rho;
    // acc = (1 - p) rho, then add p/3 of each Pauli conjugate.
    k.axpby(0.0, acc, 1.0 - p, acc);
    for (const Unitary2& pauli : {Unitary2::pauli_x(), Unitary2::pauli_y(), Unitary2::pauli_z()}) {
        DensityMatrix term = base;
        term.apply(pauli, q);
        k.axpby(p / 3.0, term.entries(), 1.0, acc);
    }
}

// Summing the 15 non-identity Pauli pairs equals 16 * (I/4 (x) tr_ab rho) - rho,
// so the channel is (1 - 16p/15) rho + (16p/15) (I/4 (x) tr_ab rho).
void depolarize_two(DensityMatrix& rho, double p, int a, int b) {
    const std::size_t d = rho.dim();
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    const std::size_t ba = std::size_t{1} << a;
    const std::size_t bb = std::size_t{1} << b;
    const std::size_t pair_states[4] = {0, ba, bb, ba | bb};
    auto e = rho.mutable_entries();
    std::vector<Complex> mixed(e.size(), Complex{0.0, 0.0});
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if ((r & mask) != (c & mask)) {
                continue;
            }
            Complex acc{0.0, 0.0};
            for (std::size_t s : pair_states) {
                acc += e[((r & ~mask) | s) * d + ((c & ~mask) | s)];
            }
            mixed[r * d + c] = 0.25 * acc;
        }
    }
    const double lambda = 16.0 * p / 15.0;
    simd::kernels().axpby(lambda, mixed, 1.0 - lambda, e);
}

}  // namespace

void depolarize_in_place(DensityMatrix& rho, double p, std::span<const int> qubits) {
    check_probability(p, "apply_depolarizing");
    for (int q : qubits) {
        if (q < 0 || q >= rho.n_qubits()) {
            throw InvalidArgument("apply_depolarizing: qubit out of range");
        }
    }
    if (qubits.size() == 1) {
        depolarize_one(rho, p, qubits[0]);
    } else if (qubits.size() == 2 && qubits[0] != qubits[1]) {
        depolarize_two(rho, p, qubits[0], qubits[1]);
    } else {
        throw InvalidArgument("apply_depolarizing: expected one qubit or two distinct qubits");
    }
}

void amplitude_damp_in_place(DensityMatrix& rho, double gamma, int qubit) {
    check_probability(gamma, "apply_amplitude_damping");
    if (qubit < 0 || qubit >= rho.n_qubits()) {
        throw InvalidArgument("apply_amplitude_damping: qubit out of range");
    }
    DensityMatrix decay = rho;
    rho.conjugate_by(Mat2{1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)}, qubit);
    decay.conjugate_by(Mat2{0.0, std::sqrt(gamma), 0.0, 0.0}, qubit);
    simd::kernels().axpby(1.0, decay.entries(), 1.0, rho.mutable_entries());
}

DensityMatrix apply_depolarizing(DensityMatrix rho, double p, std::span<const int> qubits) {
    depolarize_in_place(rho, p, qubits);
    return rho;
}

DensityMatrix apply_depolarizing(DensityMatrix rho, double p, int qubit) {
    const int qs[1] = {qubit};
    depolarize_in_place(rho, p, qs);
    return rho;
}

DensityMatrix apply_amplitude_damping(DensityMatrix rho, double gamma, int qubit) {
    amplitude_damp_in_place(rho, gamma, qubit);
    return rho;
}

}  // namespace qmem
