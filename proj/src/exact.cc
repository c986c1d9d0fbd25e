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

#include "qga/exact.h"

#include <cmath>
#include <stdexcept>

namespace qga {

using boost::multiprecision::cpp_int;

namespace {

Rational exact_binary(double x) {
    int exp = 0;
    double mant = std::frexp(x, &exp);
    // mant in [0.5, 1); scale to a 53-bit integer.
    auto m = static_cast<int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r = Rational(m);
    if (exp > 0) {
        r *= Rational(cpp_int(1) << exp);
    } else if (exp < 0) {
        r /= Rational(cpp_int(1) << -exp);
    }
    return r;
}

}  // namespace

Rational to_rational(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cannot convert a non-finite value to a rational");
    }
    if (x == std::floor(x) && std::abs(x) < 9e15) {
        return Rational(static_cast<int64_t>(x));
    }
    // Continued-fraction convergents h/k.
    const double tol = 1e-15 * std::max(1.0, std::abs(x));
    int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double rest = x;
    for (int iter = 0; iter < 64; iter++) {
        double a = std::floor(rest);
        if (std::abs(a) > 1e12) {
            break;
        }
        auto ai = static_cast<int64_t>(a);
        int64_t h2 = ai * h1 + h0;
        int64_t k2 = ai * k1 + k0;
        if (k2 > 1000000000) {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol) {
            Rational r = Rational(h1) / Rational(k1);
            if (to_double(r) == x) {
                return r;
            }
        }
        double frac = rest - a;
        if (frac == 0) {
            break;
        }
        rest = 1.0 / frac;
    }
    return exact_binary(x);
}

double to_double(const Rational &r) {
    return r.convert_to<double>();
}

std::string to_string(const Rational &r) {
    return r.str();
}

Ray::Ray(std::vector<GaussRational> v) : v_(std::move(v)) {
    if (v_.empty() || v_.size() > kMaxDim) {
        throw std::invalid_argument("ray dimension must be in [1, 8]");
    }
    if (norm2() == 0) {
        throw std::invalid_argument("zero vector is not a state");
    }
}

Rational Ray::norm2() const {
    Rational t = 0;
    for (const auto &x : v_) {
        t += x.norm();
    }
    return t;
}

std::vector<Amplitude> Ray::amplitudes() const {
    double n = std::sqrt(to_double(norm2()));
    std::vector<Amplitude> out;
    out.reserve(v_.size());
    for (const auto &x : v_) {
        out.emplace_back(to_double(x.re) / n, to_double(x.im) / n);
    }
    return out;
}

StateVector Ray::to_state(const Basis &basis) const {
    auto a = amplitudes();
    return make_state(basis, std::span<const Amplitude>(a));
}

Ray Ray::padded(size_t dim) const {
    if (dim < v_.size()) {
        throw std::invalid_argument("cannot pad a ray to a smaller dimension");
    }
    auto v = v_;
    v.resize(dim);
    return Ray(std::move(v));
}

Ray Ray::basis_vector(size_t dim, size_t index) {
    std::vector<GaussRational> v(dim);
    v.at(index) = 1;
    return Ray(std::move(v));
}

GaussRational inner(const Ray &a, const Ray &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch in ray inner product");
    }
    GaussRational t;
    for (size_t i = 0; i < a.dim(); i++) {
        t = t + a[i].conj() * b[i];
    }
    return t;
}

Rational overlap_prob(const Ray &a, const Ray &b) {
    return inner(a, b).norm() / (a.norm2() * b.norm2());
}

Ray project(const Ray &v, uint32_t mask, bool complement) {
    std::vector<GaussRational> out(v.dim());
    for (size_t i = 0; i < v.dim(); i++) {
        bool in = (mask >> i) & 1u;
        if (in != complement) {
            out[i] = v[i];
        }
    }
    return Ray(std::move(out));
}

Rational subset_prob(const Ray &v, uint32_t mask) {
    Rational t = 0;
    for (size_t i = 0; i < v.dim(); i++) {
        if ((mask >> i) & 1u) {
            t += v[i].norm();
        }
    }
    return t / v.norm2();
}

RayOp::RayOp(size_t dim, std::vector<GaussRational> row_major) : dim_(dim), m_(std::move(row_major)) {
    if (dim == 0 || dim > kMaxDim || m_.size() != dim * dim) {
        throw std::invalid_argument("ray operator needs dim*dim entries with dim in [1, 8]");
    }
    // M^dagger M must equal c I exactly.
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            GaussRational t;
            for (size_t k = 0; k < dim_; k++) {
                t = t + at(k, i).conj() * at(k, j);
            }
            if (i == j) {
                if (t.im != 0 || t.re <= 0 || (i > 0 && t.re != scale_)) {
                    throw std::invalid_argument("operator is not proportional to a unitary");
                }
                scale_ = t.re;
            } else if (!t.is_zero()) {
                throw std::invalid_argument("operator is not proportional to a unitary");
            }
        }
    }
}

Ray RayOp::apply(const Ray &v) const {
    if (v.dim() != dim_) {
        throw std::invalid_argument("dimension mismatch applying ray operator");
    }
    std::vector<GaussRational> out(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t k = 0; k < dim_; k++) {
            out[i] = out[i] + at(i, k) * v[k];
        }
    }
    return Ray(std::move(out));
}

RayOp RayOp::operator*(const RayOp &rhs) const {
    if (rhs.dim_ != dim_) {
        throw std::invalid_argument("dimension mismatch in ray operator product");
    }
    std::vector<GaussRational> out(dim_ * dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            for (size_t k = 0; k < dim_; k++) {
                out[i * dim_ + j] = out[i * dim_ + j] + at(i, k) * rhs.at(k, j);
            }
        }
    }
    return RayOp(dim_, std::move(out));
}

RayOp RayOp::adjoint() const {
    std::vector<GaussRational> out(dim_ * dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            out[i * dim_ + j] = at(j, i).conj();
        }
    }
    return RayOp(dim_, std::move(out));
}

UnitaryOp RayOp::to_unitary() const {
    double s = std::sqrt(to_double(scale_));
    std::vector<Amplitude> e;
    e.reserve(m_.size());
    for (const auto &x : m_) {
        e.emplace_back(to_double(x.re) / s, to_double(x.im) / s);
    }
    return UnitaryOp::make(dim_, e);
}

RayOp RayOp::identity(size_t dim) {
    std::vector<GaussRational> m(dim * dim);
    for (size_t i = 0; i < dim; i++) {
        m[i * dim + i] = 1;
    }
    return RayOp(dim, std::move(m));
}

RayOp RayOp::hadamard() {
    return RayOp(2, {1, 1, 1, -1});
}

RayOp RayOp::flip() {
    return RayOp(2, {0, 1, 1, 0});
}

RayOp RayOp::phase_dagger() {
    return RayOp(2, {1, 0, 0, GaussRational(0, -1)});
}

RayOp kron(const RayOp &a, const RayOp &b) {
    size_t d = a.dim() * b.dim();
    if (d > kMaxDim) {
        throw std::invalid_argument("tensor product exceeds maximum dimension 8");
    }
    std::vector<GaussRational> m(d * d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            m[i * d + j] = a.at(i / b.dim(), j / b.dim()) * b.at(i % b.dim(), j % b.dim());
        }
    }
    return RayOp(d, std::move(m));
}

}  // namespace qga
