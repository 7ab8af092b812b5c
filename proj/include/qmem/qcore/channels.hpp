#pragma once

#include <span>

#include "qmem/qcore/density_matrix.hpp"

namespace qmem {

/// Depolarizing noise on one or two qubits.
///   one qubit:  (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)
///   two qubits: (1-p) rho + p/15 sum of the 15 non-identity Pauli pairs
DensityMatrix apply_depolarizing(DensityMatrix rho, double p, std::span<const int> qubits);
DensityMatrix apply_depolarizing(DensityMatrix rho, double p, int qubit);

/// Amplitude damping Kraus pair K0 = diag(1, sqrt(1-g)), K1 = sqrt(g)|0><1|.
DensityMatrix apply_amplitude_damping(DensityMatrix rho, double gamma, int qubit);

/// In-place variants used by the noisy simulator loop.
void depolarize_in_place(DensityMatrix& rho, double p, std::span<const int> qubits);
void amplitude_damp_in_place(DensityMatrix& rho, double gamma, int qubit);

}  // namespace qmem
