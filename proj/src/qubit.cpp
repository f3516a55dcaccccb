// Copyright 2026 The passage-lab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "passage/qubit.hpp"

#include "passage/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace passage {

namespace {

constexpr double kStateTolerance = 1e-12;
constexpr double kImageTolerance = 1e-9;

Eigen::Matrix4cd kron_identity(const Eigen::Matrix2cd &a) {
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            for (int m = 0; m < 2; ++m) {
                out(2 * s + m, 2 * t + m) = a(s, t);
            }
        }
    }
    return out;
}

// Memory flips iff system is 1: swaps |10> and |11>.
Eigen::Matrix4cd cnot() {
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    out(0, 0) = 1.0;
    out(1, 1) = 1.0;
    out(2, 3) = 1.0;
    out(3, 2) = 1.0;
    return out;
}

} // namespace

PureQubit::PureQubit(Complex a0, Complex a1) : amp_(a0, a1) {
    const double norm2 = std::norm(a0) + std::norm(a1);
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kStateTolerance) {
        throw LabError(ErrorCode::InvalidState, "qubit amplitudes have squared norm " + std::to_string(norm2));
    }
    const double m0 = std::abs(a0);
    if (m0 > 0.0) {
        const Complex phase = std::conj(a0) / m0;
        amp_ = Eigen::Vector2cd(m0, a1 * phase);
    } else {
        amp_ = Eigen::Vector2cd(0.0, std::abs(a1));
    }
}

PureQubit PureQubit::normalized(Complex a0, Complex a1) {
    const double n = std::sqrt(std::norm(a0) + std::norm(a1));
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw LabError(ErrorCode::InvalidState, "cannot normalize a zero or non-finite vector");
    }
    return {a0 / n, a1 / n};
}

BlochVector::BlochVector(const Eigen::Vector3d &v) : v_(v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n > 1.0 + kStateTolerance) {
        throw LabError(ErrorCode::InvalidState, "Bloch vector norm " + std::to_string(n) + " exceeds 1");
    }
}

bool BlochVector::is_pure() const noexcept { return std::abs(norm() - 1.0) <= 1e-9; }

DensityMatrix::DensityMatrix(const Eigen::Matrix2cd &rho) : rho_(rho) {
    if (!rho.allFinite()) {
        throw LabError(ErrorCode::InvalidState, "density matrix has non-finite entries");
    }
    const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kStateTolerance) {
        throw LabError(ErrorCode::InvalidState, "density matrix is not Hermitian");
    }
    const Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > kStateTolerance) {
        throw LabError(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(tr.real()));
    }
    const double half_gap = 0.5 * (rho(0, 0).real() - rho(1, 1).real());
    const double radius = std::sqrt(half_gap * half_gap + std::norm(rho(1, 0)));
    const double smallest = 0.5 * tr.real() - radius;
    if (smallest < -kStateTolerance) {
        throw LabError(ErrorCode::InvalidState, "density matrix has eigenvalue " + std::to_string(smallest));
    }
}

DensityMatrix DensityMatrix::from_bloch(const BlochVector &b) {
    Eigen::Matrix2cd rho;
    rho << Complex(0.5 * (1.0 + b.z()), 0.0), Complex(0.5 * b.x(), -0.5 * b.y()),
        Complex(0.5 * b.x(), 0.5 * b.y()), Complex(0.5 * (1.0 - b.z()), 0.0);
    return DensityMatrix(rho);
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(0.5 * Eigen::Matrix2cd::Identity()); }

Ensemble::Ensemble(std::vector<Member> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw LabError(ErrorCode::EmptyEnsemble, "ensemble has no members");
    }
    double total = 0.0;
    for (const auto &m : members_) {
        if (!(m.weight >= 0.0) || !std::isfinite(m.weight)) {
            throw LabError(ErrorCode::InvalidArgument, "ensemble weights must be nonnegative");
        }
        total += m.weight;
    }
    if (std::abs(total - 1.0) > kStateTolerance) {
        throw LabError(ErrorCode::InvalidArgument, "ensemble weights sum to " + std::to_string(total));
    }
}

Eigen::Vector3d Ensemble::mean_vector() const {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto &m : members_) {
        mean += m.weight * m.state.unit_vector();
    }
    return mean;
}

TwoQubitState::TwoQubitState(const Eigen::Vector4cd &amplitudes) : amp_(amplitudes) {
    const double norm2 = amplitudes.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kStateTolerance) {
        throw LabError(ErrorCode::InvalidState, "two-qubit state has squared norm " + std::to_string(norm2));
    }
}

PureQubit pure_from_sphere(const SpherePoint &point) {
    const double half = point.theta() / 2.0;
    return {Complex(std::cos(half), 0.0), std::polar(std::sin(half), point.phi())};
}

SpherePoint sphere_from_pure(const PureQubit &state) {
    const double theta = 2.0 * std::atan2(std::abs(state.amplitude1()), std::abs(state.amplitude0()));
    const double phi = std::arg(state.amplitude1()) - std::arg(state.amplitude0());
    return {std::clamp(theta, 0.0, kPi), phi};
}

BlochVector bloch_vector(const PureQubit &state) {
    const Complex a0 = state.amplitude0();
    const Complex a1 = state.amplitude1();
    const Complex coherence = std::conj(a0) * a1;
    return BlochVector(2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(a0) - std::norm(a1));
}

BlochVector bloch_vector(const DensityMatrix &rho) {
    const Complex lower = rho(1, 0);
    return BlochVector(2.0 * lower.real(), 2.0 * lower.imag(), (rho(0, 0) - rho(1, 1)).real());
}

double fidelity(const PureQubit &a, const PureQubit &b) noexcept {
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

DensityMatrix density_from_ensemble(const Ensemble &ensemble) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (const auto &m : ensemble.members()) {
        const Eigen::Vector2cd psi = pure_from_sphere(m.state).amplitudes();
        rho += m.weight * (psi * psi.adjoint());
    }
    // Hermitian by construction; symmetrize away rounding in the off-diagonal.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(rho);
}

double born_probability(const SpherePoint &preparation, const SpherePoint &measurement) {
    return fidelity(pure_from_sphere(measurement), pure_from_sphere(preparation));
}

double mixed_probability(const DensityMatrix &rho, const SpherePoint &measurement) {
    return 0.5 * (1.0 + bloch_vector(rho).vector().dot(measurement.unit_vector()));
}

Eigen::Matrix2cd axis_rotation(const SpherePoint &axis) {
    const double c = std::cos(axis.theta() / 2.0);
    const double s = std::sin(axis.theta() / 2.0);
    Eigen::Matrix2cd r;
    r << Complex(c, 0.0), -std::polar(s, -axis.phi()), std::polar(s, axis.phi()), Complex(c, 0.0);
    return r;
}

Eigen::Matrix4cd entangler(const SpherePoint &axis) {
    const Eigen::Matrix2cd r = axis_rotation(axis);
    return kron_identity(r) * cnot() * kron_identity(r.adjoint());
}

TwoQubitState measure_and_entangle(const PureQubit &system, const SpherePoint &axis) {
    const Eigen::Vector4cd initial(system.amplitude0(), 0.0, system.amplitude1(), 0.0);
    return TwoQubitState(entangler(axis) * initial);
}

std::pair<double, double> alice_marginal(const TwoQubitState &state) {
    const double record0 = std::norm(state(0, 0)) + std::norm(state(1, 0));
    const double record1 = std::norm(state(0, 1)) + std::norm(state(1, 1));
    return {record0, record1};
}

Eigen::Matrix2cd reduced_system_state(const TwoQubitState &state) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            for (int m = 0; m < 2; ++m) {
                rho(s, t) += state(s, m) * std::conj(state(t, m));
            }
        }
    }
    return rho;
}

ReversalResult reverse_measurement(const TwoQubitState &state, const SpherePoint &axis) {
    const Eigen::Vector4cd undone = entangler(axis) * state.amplitudes();
    const double off_image = std::sqrt(std::norm(undone(1)) + std::norm(undone(3)));
    if (off_image > kImageTolerance) {
        throw LabError(ErrorCode::NotInMeasurementImage,
                       "memory is not |0> after reversal (residual " + std::to_string(off_image) + ")");
    }
    const PureQubit system = PureQubit::normalized(undone(0), undone(2));
    const Eigen::Vector2cd &sigma = system.amplitudes();
    const Complex mem0 = std::conj(sigma(0)) * undone(0) + std::conj(sigma(1)) * undone(2);
    const Complex mem1 = std::conj(sigma(0)) * undone(1) + std::conj(sigma(1)) * undone(3);
    return {system, PureQubit::normalized(mem0, mem1)};
}

CDPReport cdp_report(const SpherePoint &system, const SpherePoint &axis) {
    const PureQubit original = pure_from_sphere(system);
    const TwoQubitState entangled = measure_and_entangle(original, axis);

    const Eigen::Matrix2cd rho = reduced_system_state(entangled);
    const Eigen::Matrix2cd r = axis_rotation(axis);
    const Complex coherence = r.col(0).dot(rho * r.col(1));
    const double half_gap = 0.5 * (rho(0, 0).real() - rho(1, 1).real());
    const double minor = 0.5 - std::sqrt(half_gap * half_gap + std::norm(rho(1, 0)));

    const ReversalResult reversed = reverse_measurement(entangled, axis);

    CDPReport report{};
    report.recovery_fidelity = fidelity(original, reversed.system);
    report.record_erased = std::abs(reversed.memory.amplitude1()) <= kImageTolerance &&
                           std::abs(reversed.memory.amplitude0() - 1.0) <= kImageTolerance;
    report.axis_coherence = std::abs(coherence);
    report.longitude_lost_before_reversal = report.axis_coherence <= kImageTolerance;
    report.entanglement = std::max(0.0, minor);
    return report;
}

} // namespace passage
