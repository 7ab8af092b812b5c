#include "qmem/qcore/unitary.hpp"

#include <cmath>

#include "qmem/error.hpp"

namespace qmem {
namespace {

Mat2 multiply(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Mat2 adjoint_of(const Mat2& a) {
    return {std::conj(a.m00), std::conj(a.m10), std::conj(a.m01), std::conj(a.m11)};
}

Complex trace_of(const Mat2& a) { return a.m00 + a.m11; }

const Mat2 kSigma[3] = {
    {0.0, 1.0, 1.0, 0.0},
    {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0},
    {1.0, 0.0, 0.0, -1.0},
};

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

Rotation3 Rotation3::identity() { return Rotation3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

Rotation3 Rotation3::operator*(const Rotation3& rhs) const {
    Rotation3 out;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k) {
                acc += (*this)(r, k) * rhs(k, c);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

BlochVector Rotation3::apply(const BlochVector& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

double Rotation3::determinant() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Rotation3 Rotation3::transpose() const {
    return Rotation3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
}

bool is_unitary(const Mat2& m, double tol) {
    const Mat2 p = multiply(adjoint_of(m), m);
    return std::abs(p.m00 - 1.0) <= tol && std::abs(p.m11 - 1.0) <= tol &&
           std::abs(p.m01) <= tol && std::abs(p.m10) <= tol;
}

Unitary2::Unitary2() : m_{1.0, 0.0, 0.0, 1.0} {}

Unitary2::Unitary2(const Mat2& m) : m_(m) {
    if (!is_unitary(m)) {
        throw InvalidArgument("Unitary2: matrix is not unitary within 1e-10");
    }
}

Complex Unitary2::operator()(int r, int c) const {
    if (r == 0) {
        return c == 0 ? m_.m00 : m_.m01;
    }
    return c == 0 ? m_.m10 : m_.m11;
}

Unitary2 Unitary2::operator*(const Unitary2& rhs) const {
    return Unitary2(multiply(m_, rhs.m_), Unchecked{});
}

Unitary2 Unitary2::adjoint() const { return Unitary2(adjoint_of(m_), Unchecked{}); }

Mat2 Unitary2::conjugate() const {
    return {std::conj(m_.m00), std::conj(m_.m01), std::conj(m_.m10), std::conj(m_.m11)};
}

Unitary2 Unitary2::pauli_x() { return Unitary2(kSigma[0], Unchecked{}); }
Unitary2 Unitary2::pauli_y() { return Unitary2(kSigma[1], Unchecked{}); }
Unitary2 Unitary2::pauli_z() { return Unitary2(kSigma[2], Unchecked{}); }

Unitary2 rz(double phi) {
    const Complex half = std::polar(1.0, phi / 2.0);
    return Unitary2(Mat2{half, 0.0, 0.0, std::conj(half)});
}

Unitary2 ry(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return Unitary2(Mat2{c, -s, s, c});
}

Unitary2 make_rotation(double theta1, double theta2_eff, double theta3) {
    if (!std::isfinite(theta1) || !std::isfinite(theta2_eff) || !std::isfinite(theta3)) {
        throw InvalidArgument("make_rotation: angles must be finite");
    }
    return rz(theta3) * ry(theta2_eff) * rz(theta1);
}

Rotation3 su2_to_so3(const Unitary2& u) {
    const Mat2& um = u.matrix();
    const Mat2 ud = adjoint_of(um);
    Rotation3 out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Mat2 prod = multiply(multiply(kSigma[i], um), multiply(kSigma[j], ud));
            out(i, j) = 0.5 * trace_of(prod).real();
        }
    }
    return out;
}

Rotation3 su2_to_so3(const Mat2& m) { return su2_to_so3(Unitary2(m)); }

Rotation3 so3_rz(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return Rotation3{{c, s, 0, -s, c, 0, 0, 0, 1}};
}

Rotation3 so3_ry(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return Rotation3{{c, 0, s, 0, 1, 0, -s, 0, c}};
}

Rotation3 so3_rotation(double theta1, double theta2_eff, double theta3) {
    if (!std::isfinite(theta1) || !std::isfinite(theta2_eff) || !std::isfinite(theta3)) {
        throw InvalidArgument("so3_rotation: angles must be finite");
    }
    return so3_rz(theta3) * so3_ry(theta2_eff) * so3_rz(theta1);
}

}  // namespace qmem
