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
#pragma once

/**
 * @file
 * Two-level pure states, density matrices, ensembles, and the two-qubit
 * system+memory model of a measurement that can be coherently undone.
 */

#include "passage/sphere.hpp"

#include <Eigen/Core>

#include <complex>
#include <utility>
#include <vector>

namespace passage {

using Complex = std::complex<double>;

/// Normalized qubit with global phase fixed so that amplitude 0 is real and
/// nonnegative (amplitude 1 is made real and positive when amplitude 0 vanishes).
class PureQubit {
  public:
    /// Throws InvalidState unless |a0|^2 + |a1|^2 = 1 within 1e-12.
    PureQubit(Complex a0, Complex a1);

    /// Rescales (a0, a1) to unit norm first. Throws InvalidState for the zero vector.
    static PureQubit normalized(Complex a0, Complex a1);

    [[nodiscard]] Complex amplitude0() const noexcept { return amp_(0); }
    [[nodiscard]] Complex amplitude1() const noexcept { return amp_(1); }
    [[nodiscard]] const Eigen::Vector2cd &amplitudes() const noexcept { return amp_; }

  private:
    Eigen::Vector2cd amp_;
};

class BlochVector {
  public:
    /// Throws InvalidState when the norm exceeds 1 + 1e-12.
    explicit BlochVector(const Eigen::Vector3d &v);
    BlochVector(double x, double y, double z) : BlochVector(Eigen::Vector3d(x, y, z)) {}

    [[nodiscard]] double x() const noexcept { return v_.x(); }
    [[nodiscard]] double y() const noexcept { return v_.y(); }
    [[nodiscard]] double z() const noexcept { return v_.z(); }
    [[nodiscard]] const Eigen::Vector3d &vector() const noexcept { return v_; }
    [[nodiscard]] double norm() const noexcept { return v_.norm(); }
    [[nodiscard]] bool is_pure() const noexcept;

  private:
    Eigen::Vector3d v_;
};

class DensityMatrix {
  public:
    /// Throws InvalidState unless Hermitian and unit-trace within 1e-12 with
    /// eigenvalues >= -1e-12.
    explicit DensityMatrix(const Eigen::Matrix2cd &rho);

    static DensityMatrix from_bloch(const BlochVector &b);
    static DensityMatrix maximally_mixed();

    [[nodiscard]] const Eigen::Matrix2cd &matrix() const noexcept { return rho_; }
    [[nodiscard]] Complex operator()(int r, int c) const { return rho_(r, c); }

  private:
    Eigen::Matrix2cd rho_;
};

/// Weighted mixture of pure preparations.
class Ensemble {
  public:
    struct Member {
        double weight;
        SpherePoint state;
    };

    /// Throws EmptyEnsemble for no members and InvalidArgument for negative
    /// weights or weights not summing to 1 within 1e-12.
    explicit Ensemble(std::vector<Member> members);

    [[nodiscard]] const std::vector<Member> &members() const noexcept { return members_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }

    /// Weighted mean of the member unit vectors.
    [[nodiscard]] Eigen::Vector3d mean_vector() const;

  private:
    std::vector<Member> members_;
};

/// Amplitudes indexed |system, memory> in the order |00>, |01>, |10>, |11>.
class TwoQubitState {
  public:
    /// Throws InvalidState unless the norm is 1 within 1e-12.
    explicit TwoQubitState(const Eigen::Vector4cd &amplitudes);

    [[nodiscard]] Complex operator()(int system, int memory) const { return amp_(2 * system + memory); }
    [[nodiscard]] const Eigen::Vector4cd &amplitudes() const noexcept { return amp_; }

  private:
    Eigen::Vector4cd amp_;
};

struct ReversalResult {
    PureQubit system;
    PureQubit memory;
};

/// Outcome of measuring a qubit, then coherently undoing the measurement.
struct CDPReport {
    double recovery_fidelity;            // |<original|recovered>|^2
    bool record_erased;                  // memory back to |0> within 1e-9
    bool longitude_lost_before_reversal; // reduced system state axis-diagonal within 1e-9
    double axis_coherence;               // |<axis|rho_system|antipode>| before reversal
    double entanglement;                 // smaller squared Schmidt coefficient before reversal
};

PureQubit pure_from_sphere(const SpherePoint &point);

/// Sphere point of a pure state (inverse of pure_from_sphere).
SpherePoint sphere_from_pure(const PureQubit &state);

BlochVector bloch_vector(const PureQubit &state);
BlochVector bloch_vector(const DensityMatrix &rho);

/// |<a|b>|^2
double fidelity(const PureQubit &a, const PureQubit &b) noexcept;

/// Sum of weighted pure-state projectors.
DensityMatrix density_from_ensemble(const Ensemble &ensemble);

/// |<measurement|preparation>|^2
double born_probability(const SpherePoint &preparation, const SpherePoint &measurement);

/// (1 + b . n) / 2 for Bloch vector b and measurement direction n.
double mixed_probability(const DensityMatrix &rho, const SpherePoint &measurement);

/// Unitary taking |0> to the axis state and |1> to its antipode, built as a
/// rotation along the meridian through the axis.
Eigen::Matrix2cd axis_rotation(const SpherePoint &axis);

/// Two-qubit unitary copying the axis-basis value of the system into the
/// memory: (R x I) CNOT (R^dagger x I) with R = axis_rotation(axis). It is its
/// own inverse.
Eigen::Matrix4cd entangler(const SpherePoint &axis);

/// Applies the entangler to system x |0>_memory.
TwoQubitState measure_and_entangle(const PureQubit &system, const SpherePoint &axis);

/// Distribution (P(record 0), P(record 1)) of the memory qubit. Record 0 is
/// the axis outcome, record 1 the antipode.
std::pair<double, double> alice_marginal(const TwoQubitState &state);

/// Partial trace over the memory.
Eigen::Matrix2cd reduced_system_state(const TwoQubitState &state);

/// Applies the inverse entangler and factors the result into system and
/// memory. Throws NotInMeasurementImage when the result is not a product with
/// memory |0> (off-image amplitude norm above 1e-9).
ReversalResult reverse_measurement(const TwoQubitState &state, const SpherePoint &axis);

CDPReport cdp_report(const SpherePoint &system, const SpherePoint &axis);

} // namespace passage
