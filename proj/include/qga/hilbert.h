// Copyright 2026 The qga Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qga/rng.h"

namespace qga {

using Amplitude = std::complex<double>;

inline constexpr size_t kMaxDim = 8;

// Tolerance policy. Input slack for user-supplied states, accumulation
// slack for runtime algebra, and the bound used for "exact" comparisons.
inline constexpr double kConstructionTol = 1e-6;
inline constexpr double kAlgebraTol = 1e-9;
inline constexpr double kExactTol = 1e-12;

/// An ordered set of basis labels. Bases are interned: two Basis handles
/// compare equal iff they hold the same labels in the same order, and
/// copying one is a pointer copy.
class Basis {
   public:
    static Basis of(const std::vector<std::string> &labels);
    static Basis of(std::initializer_list<std::string_view> labels);

    size_t dim() const {
        return dim_;
    }
    const std::string &label(size_t index) const;
    const std::vector<std::string> &labels() const;
    std::optional<size_t> index_of(std::string_view label) const;
    /// Like index_of, but throws std::invalid_argument for unknown labels.
    size_t require(std::string_view label) const;

    bool operator==(const Basis &other) const {
        return rep_ == other.rep_;
    }

    struct Rep;

   private:
    Basis(const Rep *rep, size_t dim) : rep_(rep), dim_(dim) {
    }
    const Rep *rep_;
    size_t dim_;
};

/// A normalized pure state over a labeled basis of dimension at most 8.
class StateVector {
   public:
    const Basis &basis() const {
        return basis_;
    }
    size_t dim() const {
        return basis_.dim();
    }
    Amplitude amp(size_t index) const {
        return amps_[index];
    }
    Amplitude amp(std::string_view label) const {
        return amps_[basis_.require(label)];
    }
    std::span<const Amplitude> amps() const {
        return {amps_.data(), dim()};
    }
    /// |1 - ||input||| measured when the state was built from caller input.
    double norm_defect() const {
        return norm_defect_;
    }
    double norm() const;

    /// Bitwise equality of basis and amplitudes.
    bool operator==(const StateVector &other) const;

    /// Builds from amplitudes that the caller guarantees are normalized up
    /// to algebra tolerance; rescales the residual. Used by the engine for
    /// post-operation states, never for user input.
    static StateVector renormalized(const Basis &basis, std::span<const Amplitude> amps);
    /// Wraps amplitudes produced by a norm-preserving operation as-is.
    static StateVector unchecked(const Basis &basis, std::span<const Amplitude> amps);

   private:
    StateVector(Basis basis) : basis_(basis) {
    }
    friend StateVector make_state(const Basis &, std::span<const Amplitude>);

    Basis basis_;
    std::array<Amplitude, kMaxDim> amps_{};
    double norm_defect_ = 0;
};

/// Validating constructor for caller-supplied states. Rejects length
/// mismatches, non-finite amplitudes, the zero vector, and any norm defect
/// beyond kConstructionTol. No silent renormalization of larger defects.
StateVector make_state(const Basis &basis, std::span<const Amplitude> amps);
StateVector make_state(const Basis &basis, std::initializer_list<Amplitude> amps);
StateVector basis_state(const Basis &basis, std::string_view label);

/// Dense dim x dim unitary, dim <= 8.
class UnitaryOp {
   public:
    /// Throws std::invalid_argument unless U^dagger U = I within kAlgebraTol.
    static UnitaryOp make(size_t dim, std::span<const Amplitude> row_major);
    static UnitaryOp make(size_t dim, std::initializer_list<Amplitude> row_major);
    static UnitaryOp identity(size_t dim);

    size_t dim() const {
        return dim_;
    }
    Amplitude at(size_t row, size_t col) const {
        return m_[row * dim_ + col];
    }
    UnitaryOp adjoint() const;
    UnitaryOp operator*(const UnitaryOp &rhs) const;
    /// Largest entrywise deviation of U^dagger U from the identity.
    double unitarity_defect() const;

   private:
    UnitaryOp(size_t dim) : dim_(dim) {
    }
    friend UnitaryOp kron(const UnitaryOp &, const UnitaryOp &);

    size_t dim_;
    std::array<Amplitude, kMaxDim * kMaxDim> m_{};
};

/// Tensor product; the left factor owns the most significant index.
UnitaryOp kron(const UnitaryOp &a, const UnitaryOp &b);

namespace gates {
UnitaryOp pauli_x();
UnitaryOp hadamard();
/// S^dagger = diag(1, -i).
UnitaryOp phase_dagger();
}  // namespace gates

/// Orthogonal projector: either onto a subset of basis indices, or onto the
/// ray of a target state; optionally complemented (I - P).
class Projector {
   public:
    static Projector onto_indices(size_t dim, std::vector<size_t> indices);
    static Projector onto_labels(const Basis &basis, std::initializer_list<std::string_view> labels);
    static Projector onto_state(const StateVector &target);

    size_t dim() const {
        return dim_;
    }
    bool is_rank_one() const {
        return target_.has_value();
    }
    Projector complement() const;

    /// Throws std::invalid_argument if s does not live in this projector's space.
    void require_compatible(const StateVector &s) const;
    /// P|s>, unnormalized.
    std::array<Amplitude, kMaxDim> act(const StateVector &s) const;
    /// Row-major dim x dim matrix.
    std::vector<Amplitude> matrix() const;

   private:
    Projector(size_t dim) : dim_(dim) {
    }

    size_t dim_;
    uint32_t mask_ = 0;
    std::optional<StateVector> target_;
    bool complemented_ = false;
};

struct MeasureResult {
    bool found;
    double prob_found;
    StateVector post_state;
};

/// <a|b>, conjugate-linear in the first argument.
Amplitude inner(const StateVector &a, const StateVector &b);
StateVector apply(const UnitaryOp &u, const StateVector &s);
/// <s|P|s>, clamped to [0, 1].
double born_prob(const Projector &p, const StateVector &s);
/// Projective measurement {P, I - P}. Draws exactly one uniform variate.
/// Branch probabilities below kExactTol are treated as zero.
MeasureResult measure(const Projector &p, const StateVector &s, RandomStream &rng);

}  // namespace qga
