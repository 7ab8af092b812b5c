#pragma once

#include <array>
#include <complex>

#include "qmem/simd/kernels.hpp"

namespace qmem {

using Complex = std::complex<double>;
using simd::Mat2;

/// Pauli expectation triple (tr(rho X), tr(rho Y), tr(rho Z)) of one qubit.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

/// Row-major real 3x3 matrix acting on Bloch vectors.
struct Rotation3 {
    std::array<double, 9> m{};

    static Rotation3 identity();

    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }

    Rotation3 operator*(const Rotation3& rhs) const;
    BlochVector apply(const BlochVector& v) const;
    double determinant() const;
    Rotation3 transpose() const;
};

/// 2x2 complex matrix with U^dagger U = I (checked to 1e-10 at construction).
class Unitary2 {
public:
    static constexpr double kTolerance = 1e-10;

    Unitary2();  // identity
    explicit Unitary2(const Mat2& m);

    const Mat2& matrix() const { return m_; }
    Complex operator()(int r, int c) const;

    Unitary2 operator*(const Unitary2& rhs) const;
    Unitary2 adjoint() const;
    /// Element-wise complex conjugate (the matrix acting on bra indices).
    Mat2 conjugate() const;

    static Unitary2 pauli_x();
    static Unitary2 pauli_y();
    static Unitary2 pauli_z();

private:
    struct Unchecked {};
    Unitary2(const Mat2& m, Unchecked) : m_(m) {}

    Mat2 m_;
};

bool is_unitary(const Mat2& m, double tol = Unitary2::kTolerance);

/// Z rotation diag(e^{+i phi/2}, e^{-i phi/2}). On the Bloch sphere this turns
/// the (x, y) components by -phi, the sign convention under which the post-gate
/// z coordinate is -sin(b)(r_x cos phi + r_y sin phi) + cos(b) r_z.
Unitary2 rz(double phi);
/// Y rotation [[cos t/2, -sin t/2], [sin t/2, cos t/2]]; turns |0> toward +x.
Unitary2 ry(double theta);

/// Rz(theta3) * Ry(theta2_eff) * Rz(theta1). Throws InvalidArgument on non-finite angles.
Unitary2 make_rotation(double theta1, double theta2_eff, double theta3);

/// Adjoint-action image pi(U)_ij = tr(s_i U s_j U^dagger) / 2 of the double cover.
Rotation3 su2_to_so3(const Unitary2& u);
/// Same map for a raw matrix; throws InvalidArgument unless it is unitary.
Rotation3 su2_to_so3(const Mat2& m);

/// SO(3) images of rz / ry written directly from rotation geometry
/// (used by the classical baseline; independent of su2_to_so3).
Rotation3 so3_rz(double phi);
Rotation3 so3_ry(double theta);
Rotation3 so3_rotation(double theta1, double theta2_eff, double theta3);

}  // namespace qmem
