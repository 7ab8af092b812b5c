#include "qmem/qcore/density_matrix.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qmem/error.hpp"
#include "qmem/simd/kernels.hpp"

namespace qmem {
namespace {

using HermitianMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kEntropyEigenClamp = 1e-12;

std::size_t flip_target_if_control(std::size_t i, int control, int target) {
    return (i >> control) & 1U ? i ^ (std::size_t{1} << target) : i;
}

std::size_t exchange_bits(std::size_t i, int a, int b) {
    const std::size_t ba = (i >> a) & 1U;
    const std::size_t bb = (i >> b) & 1U;
    if (ba == bb) {
        return i;
    }
    return i ^ (std::size_t{1} << a) ^ (std::size_t{1} << b);
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits) : n_(n_qubits) {
    check_qubit_count(n_qubits);
    dim_ = std::size_t{1} << n_qubits;
    entries_.assign(dim_ * dim_, Complex{0.0, 0.0});
    entries_[0] = 1.0;
}

DensityMatrix::DensityMatrix(int n_qubits, std::vector<Complex> entries, Unchecked)
    : n_(n_qubits), dim_(std::size_t{1} << n_qubits), entries_(std::move(entries)) {}

DensityMatrix::DensityMatrix(int n_qubits, std::vector<Complex> entries)
    : n_(n_qubits), entries_(std::move(entries)) {
    check_qubit_count(n_qubits);
    dim_ = std::size_t{1} << n_qubits;
    if (entries_.size() != dim_ * dim_) {
        throw InvalidArgument("DensityMatrix: expected 4^n entries");
    }
    if (!is_valid()) {
        throw InvalidArgument("DensityMatrix: entries are not Hermitian, unit-trace and PSD");
    }
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
    const std::size_t d = psi.dim();
    std::vector<Complex> e(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            e[r * d + c] = psi[r] * std::conj(psi[c]);
        }
    }
    return DensityMatrix(psi.n_qubits(), std::move(e), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    check_qubit_count(n_qubits);
    const std::size_t d = std::size_t{1} << n_qubits;
    std::vector<Complex> e(d * d, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < d; ++i) {
        e[i * d + i] = 1.0 / static_cast<double>(d);
    }
    return DensityMatrix(n_qubits, std::move(e), Unchecked{});
}

Complex DensityMatrix::trace() const {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        acc += entries_[i * dim_ + i];
    }
    return acc;
}

std::vector<double> DensityMatrix::eigenvalues() const {
    const Eigen::Map<const HermitianMatrix> m(entries_.data(), static_cast<Eigen::Index>(dim_),
                                              static_cast<Eigen::Index>(dim_));
    const Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

bool DensityMatrix::is_valid(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    if (std::abs(trace() - 1.0) > tol) {
        return false;
    }
    const auto ev = eigenvalues();
    return std::all_of(ev.begin(), ev.end(), [](double v) { return v >= kEigenFloor; });
}

void DensityMatrix::check_qubit(int q) const {
    if (q < 0 || q >= n_) {
        throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                              std::to_string(n_) + " qubits");
    }
}

void DensityMatrix::apply(const Unitary2& u, int qubit) { conjugate_by(u.matrix(), qubit); }

void DensityMatrix::conjugate_by(const Mat2& m, int qubit) {
    check_qubit(qubit);
    const auto& k = simd::kernels();
    const Mat2 mc{std::conj(m.m00), std::conj(m.m01), std::conj(m.m10), std::conj(m.m11)};
    k.apply_mat2(entries_, m, static_cast<unsigned>(n_ + qubit));
    k.apply_mat2(entries_, mc, static_cast<unsigned>(qubit));
}

void DensityMatrix::permute(std::size_t (*map)(std::size_t, int, int), int a, int b) {
    std::vector<Complex> out(entries_.size());
    for (std::size_t r = 0; r < dim_; ++r) {
        const std::size_t fr = map(r, a, b);
        for (std::size_t c = 0; c < dim_; ++c) {
            out[r * dim_ + c] = entries_[fr * dim_ + map(c, a, b)];
        }
    }
    entries_ = std::move(out);
}

void DensityMatrix::cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw InvalidArgument("cnot: control and target must differ");
    }
    permute(&flip_target_if_control, control, target);
}

void DensityMatrix::swap(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw InvalidArgument("swap: qubits must differ");
    }
    permute(&exchange_bits, a, b);
}

DensityMatrix reduced_qubit(const StateVector& psi, int qubit) {
    if (qubit < 0 || qubit >= psi.n_qubits()) {
        throw InvalidArgument("reduced_qubit: qubit out of range");
    }
    const std::size_t qb = std::size_t{1} << qubit;
    double p0 = 0.0;
    double p1 = 0.0;
    Complex coh{0.0, 0.0};
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (i & qb) {
            continue;
        }
        p0 += std::norm(psi[i]);
        p1 += std::norm(psi[i | qb]);
        coh += psi[i] * std::conj(psi[i | qb]);
    }
    return DensityMatrix(1, {p0, coh, std::conj(coh), p1});
}

DensityMatrix reduced_qubit(const DensityMatrix& rho, int qubit) {
    if (qubit < 0 || qubit >= rho.n_qubits()) {
        throw InvalidArgument("reduced_qubit: qubit out of range");
    }
    const std::size_t qb = std::size_t{1} << qubit;
    Complex r00{0.0, 0.0}, r01{0.0, 0.0}, r11{0.0, 0.0};
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        if (i & qb) {
            continue;
        }
        r00 += rho(i, i);
        r11 += rho(i | qb, i | qb);
        r01 += rho(i, i | qb);
    }
    // Real diagonal and exact conjugate symmetry remove accumulated round-off.
    return DensityMatrix(1, {r00.real(), r01, std::conj(r01), r11.real()});
}

DensityMatrix partial_trace_to_qubit0(const StateVector& psi) {
    if (psi.n_qubits() < 2) {
        throw InvalidArgument("partial_trace_to_qubit0: need at least 2 qubits");
    }
    return reduced_qubit(psi, 0);
}

DensityMatrix partial_trace_to_qubit0(const DensityMatrix& rho) {
    if (rho.n_qubits() < 2) {
        throw InvalidArgument("partial_trace_to_qubit0: need at least 2 qubits");
    }
    return reduced_qubit(rho, 0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda < DensityMatrix::kEigenFloor) {
            throw NumericalError("von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                                 " below -1e-9");
        }
        if (lambda > kEntropyEigenClamp) {
            s -= lambda * std::log2(lambda);
        }
    }
    return std::clamp(s, 0.0, static_cast<double>(rho.n_qubits()));
}

BlochVector bloch_coordinates(const DensityMatrix& rho) {
    if (rho.n_qubits() != 1) {
        throw InvalidArgument("bloch_coordinates: expected a 1-qubit density matrix");
    }
    const Complex r01 = rho(0, 1);
    return {2.0 * r01.real(), -2.0 * r01.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

BlochVector bloch_of_qubit(const StateVector& psi, int qubit) {
    return bloch_coordinates(reduced_qubit(psi, qubit));
}

BlochVector bloch_of_qubit(const DensityMatrix& rho, int qubit) {
    return bloch_coordinates(reduced_qubit(rho, qubit));
}

}  // namespace qmem
