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

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "qga/hilbert.h"

namespace qga {

using Rational = boost::multiprecision::cpp_rational;

/// Nearest small-denominator rational when one reproduces x to within
/// 1e-15 (so 0.3 becomes 3/10); otherwise the exact binary value of x.
Rational to_rational(double x);
double to_double(const Rational &r);
/// "1/2", "3/4", "1", "0".
std::string to_string(const Rational &r);

/// Complex number with rational parts.
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational re_, Rational im_ = 0) : re(std::move(re_)), im(std::move(im_)) {
    }
    GaussRational(int re_) : re(re_), im(0) {
    }

    GaussRational conj() const {
        return {re, -im};
    }
    /// |z|^2.
    Rational norm() const {
        return re * re + im * im;
    }
    bool is_zero() const {
        return re == 0 && im == 0;
    }

    friend GaussRational operator+(const GaussRational &a, const GaussRational &b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational &a, const GaussRational &b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator*(const GaussRational &a, const GaussRational &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussRational &a, const GaussRational &b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// A state known up to normalization: the physical state is v / ||v||.
/// Every state the built-in strategies use (box superpositions, coin
/// superpositions, GHZ and BB84 states) has such a representative, which
/// makes Born probabilities exact rationals.
class Ray {
   public:
    Ray() = default;
    explicit Ray(std::vector<GaussRational> v);

    size_t dim() const {
        return v_.size();
    }
    const GaussRational &operator[](size_t i) const {
        return v_[i];
    }
    const std::vector<GaussRational> &entries() const {
        return v_;
    }
    /// ||v||^2.
    Rational norm2() const;
    /// Normalized floating-point state over `basis`.
    StateVector to_state(const Basis &basis) const;
    /// Normalized floating-point amplitudes.
    std::vector<Amplitude> amplitudes() const;
    /// Same ray padded with zero entries up to `dim`.
    Ray padded(size_t dim) const;

    static Ray basis_vector(size_t dim, size_t index);

   private:
    std::vector<GaussRational> v_;
};

/// <a|b> of the representatives.
GaussRational inner(const Ray &a, const Ray &b);
/// |<a|b>|^2 / (||a||^2 ||b||^2).
Rational overlap_prob(const Ray &a, const Ray &b);
/// Keeps the entries whose bit is set in `mask` (or clear, if `complement`).
Ray project(const Ray &v, uint32_t mask, bool complement = false);
/// ||P v||^2 / ||v||^2 for the subset projector given by `mask`.
Rational subset_prob(const Ray &v, uint32_t mask);

/// An operator proportional to a unitary: M^dagger M = c I with rational
/// c > 0. Checked exactly on construction.
class RayOp {
   public:
    RayOp(size_t dim, std::vector<GaussRational> row_major);

    size_t dim() const {
        return dim_;
    }
    const GaussRational &at(size_t r, size_t c) const {
        return m_[r * dim_ + c];
    }
    Ray apply(const Ray &v) const;
    RayOp operator*(const RayOp &rhs) const;
    RayOp adjoint() const;
    /// The normalized floating-point unitary M / sqrt(c).
    UnitaryOp to_unitary() const;

    static RayOp identity(size_t dim);
    /// [[1, 1], [1, -1]], proportional to the Hadamard gate.
    static RayOp hadamard();
    /// [[0, 1], [1, 0]].
    static RayOp flip();
    /// diag(1, -i).
    static RayOp phase_dagger();

   private:
    size_t dim_;
    std::vector<GaussRational> m_;
    Rational scale_;
    friend RayOp kron(const RayOp &, const RayOp &);
};

RayOp kron(const RayOp &a, const RayOp &b);

}  // namespace qga
