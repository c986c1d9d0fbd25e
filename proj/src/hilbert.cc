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

#include "qga/hilbert.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace qga {

struct Basis::Rep {
    std::vector<std::string> labels;
};

namespace {

std::mutex &registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::vector<std::string>, std::unique_ptr<Basis::Rep>> &registry() {
    static std::map<std::vector<std::string>, std::unique_ptr<Basis::Rep>> r;
    return r;
}

double norm_squared(std::span<const Amplitude> amps) {
    double t = 0;
    for (const auto &a : amps) {
        t += std::norm(a);
    }
    return t;
}

}  // namespace

Basis Basis::of(const std::vector<std::string> &labels) {
    if (labels.empty() || labels.size() > kMaxDim) {
        throw std::invalid_argument("basis dimension must be in [1, 8], got " + std::to_string(labels.size()));
    }
    for (size_t i = 0; i < labels.size(); i++) {
        if (labels[i].empty()) {
            throw std::invalid_argument("basis labels must be non-empty");
        }
        for (size_t j = 0; j < i; j++) {
            if (labels[i] == labels[j]) {
                throw std::invalid_argument("duplicate basis label '" + labels[i] + "'");
            }
        }
    }
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto &slot = registry()[labels];
    if (!slot) {
        slot = std::make_unique<Rep>(Rep{labels});
    }
    return Basis(slot.get(), labels.size());
}

Basis Basis::of(std::initializer_list<std::string_view> labels) {
    std::vector<std::string> v;
    for (auto l : labels) {
        v.emplace_back(l);
    }
    return of(v);
}

const std::string &Basis::label(size_t index) const {
    return rep_->labels.at(index);
}

const std::vector<std::string> &Basis::labels() const {
    return rep_->labels;
}

std::optional<size_t> Basis::index_of(std::string_view label) const {
    for (size_t i = 0; i < rep_->labels.size(); i++) {
        if (rep_->labels[i] == label) {
            return i;
        }
    }
    return std::nullopt;
}

size_t Basis::require(std::string_view label) const {
    auto i = index_of(label);
    if (!i) {
        throw std::invalid_argument("label '" + std::string(label) + "' is not in the basis");
    }
    return *i;
}

double StateVector::norm() const {
    return std::sqrt(norm_squared(amps()));
}

bool StateVector::operator==(const StateVector &other) const {
    if (!(basis_ == other.basis_)) {
        return false;
    }
    for (size_t i = 0; i < dim(); i++) {
        if (amps_[i].real() != other.amps_[i].real() || amps_[i].imag() != other.amps_[i].imag()) {
            return false;
        }
    }
    return true;
}

StateVector StateVector::renormalized(const Basis &basis, std::span<const Amplitude> amps) {
    // Rescale by the largest component first: equal-weight branches then
    // normalize to exactly sqrt(1/k).
    double m = 0;
    for (const auto &a : amps) {
        m = std::max({m, std::abs(a.real()), std::abs(a.imag())});
    }
    if (m == 0) {
        throw std::logic_error("attempted to normalize a zero-norm branch");
    }
    double n2 = 0;
    for (const auto &a : amps) {
        n2 += std::norm(a / m);
    }
    double scale = std::sqrt(1 / n2);
    StateVector s(basis);
    for (size_t i = 0; i < basis.dim(); i++) {
        s.amps_[i] = (amps[i] / m) * scale;
    }
    return s;
}

StateVector StateVector::unchecked(const Basis &basis, std::span<const Amplitude> amps) {
    StateVector s(basis);
    for (size_t i = 0; i < basis.dim(); i++) {
        s.amps_[i] = amps[i];
    }
    return s;
}

StateVector make_state(const Basis &basis, std::span<const Amplitude> amps) {
    if (amps.size() != basis.dim()) {
        throw std::invalid_argument(
            "dimension mismatch: " + std::to_string(basis.dim()) + " labels but " + std::to_string(amps.size()) +
            " amplitudes");
    }
    for (const auto &a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("amplitudes must be finite");
        }
    }
    double n = std::sqrt(norm_squared(amps));
    if (n == 0) {
        throw std::invalid_argument("zero vector is not a state");
    }
    double defect = std::abs(1.0 - n);
    if (defect > kConstructionTol) {
        throw std::invalid_argument("norm defect " + std::to_string(defect) + " exceeds construction tolerance");
    }
    StateVector s(basis);
    for (size_t i = 0; i < amps.size(); i++) {
        s.amps_[i] = defect == 0 ? amps[i] : amps[i] / n;
    }
    s.norm_defect_ = defect;
    return s;
}

StateVector make_state(const Basis &basis, std::initializer_list<Amplitude> amps) {
    return make_state(basis, std::span<const Amplitude>(amps.begin(), amps.size()));
}

StateVector basis_state(const Basis &basis, std::string_view label) {
    std::array<Amplitude, kMaxDim> a{};
    a[basis.require(label)] = 1;
    return make_state(basis, std::span<const Amplitude>(a.data(), basis.dim()));
}

UnitaryOp UnitaryOp::make(size_t dim, std::span<const Amplitude> row_major) {
    if (dim == 0 || dim > kMaxDim) {
        throw std::invalid_argument("operator dimension must be in [1, 8]");
    }
    if (row_major.size() != dim * dim) {
        throw std::invalid_argument("operator needs dim*dim entries");
    }
    UnitaryOp u(dim);
    for (size_t i = 0; i < dim * dim; i++) {
        if (!std::isfinite(row_major[i].real()) || !std::isfinite(row_major[i].imag())) {
            throw std::invalid_argument("operator entries must be finite");
        }
        u.m_[i] = row_major[i];
    }
    if (u.unitarity_defect() > kAlgebraTol) {
        throw std::invalid_argument("operator is not unitary");
    }
    return u;
}

UnitaryOp UnitaryOp::make(size_t dim, std::initializer_list<Amplitude> row_major) {
    return make(dim, std::span<const Amplitude>(row_major.begin(), row_major.size()));
}

UnitaryOp UnitaryOp::identity(size_t dim) {
    if (dim == 0 || dim > kMaxDim) {
        throw std::invalid_argument("operator dimension must be in [1, 8]");
    }
    UnitaryOp u(dim);
    for (size_t i = 0; i < dim; i++) {
        u.m_[i * dim + i] = 1;
    }
    return u;
}

UnitaryOp UnitaryOp::adjoint() const {
    UnitaryOp r(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            r.m_[i * dim_ + j] = std::conj(at(j, i));
        }
    }
    return r;
}

UnitaryOp UnitaryOp::operator*(const UnitaryOp &rhs) const {
    if (rhs.dim_ != dim_) {
        throw std::invalid_argument("dimension mismatch in operator product");
    }
    UnitaryOp r(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            Amplitude t = 0;
            for (size_t k = 0; k < dim_; k++) {
                t += at(i, k) * rhs.at(k, j);
            }
            r.m_[i * dim_ + j] = t;
        }
    }
    return r;
}

double UnitaryOp::unitarity_defect() const {
    double worst = 0;
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            Amplitude t = 0;
            for (size_t k = 0; k < dim_; k++) {
                t += std::conj(at(k, i)) * at(k, j);
            }
            worst = std::max(worst, std::abs(t - Amplitude(i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

UnitaryOp kron(const UnitaryOp &a, const UnitaryOp &b) {
    size_t d = a.dim() * b.dim();
    if (d > kMaxDim) {
        throw std::invalid_argument("tensor product exceeds maximum dimension 8");
    }
    UnitaryOp r(d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            r.m_[i * d + j] = a.at(i / b.dim(), j / b.dim()) * b.at(i % b.dim(), j % b.dim());
        }
    }
    return r;
}

namespace gates {

UnitaryOp pauli_x() {
    return UnitaryOp::make(2, {0, 1, 1, 0});
}

UnitaryOp hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return UnitaryOp::make(2, {h, h, h, -h});
}

UnitaryOp phase_dagger() {
    return UnitaryOp::make(2, {1, 0, 0, Amplitude(0, -1)});
}

}  // namespace gates

Projector Projector::onto_indices(size_t dim, std::vector<size_t> indices) {
    if (dim == 0 || dim > kMaxDim) {
        throw std::invalid_argument("projector dimension must be in [1, 8]");
    }
    Projector p(dim);
    for (size_t i : indices) {
        if (i >= dim) {
            throw std::invalid_argument("projector index out of range");
        }
        p.mask_ |= 1u << i;
    }
    return p;
}

Projector Projector::onto_labels(const Basis &basis, std::initializer_list<std::string_view> labels) {
    std::vector<size_t> idx;
    for (auto l : labels) {
        idx.push_back(basis.require(l));
    }
    return onto_indices(basis.dim(), idx);
}

Projector Projector::onto_state(const StateVector &target) {
    Projector p(target.dim());
    p.target_ = target;
    return p;
}

Projector Projector::complement() const {
    Projector p = *this;
    p.complemented_ = !complemented_;
    return p;
}

void Projector::require_compatible(const StateVector &s) const {
    if (s.dim() != dim_) {
        throw std::invalid_argument(
            "dimension mismatch: projector " + std::to_string(dim_) + ", state " + std::to_string(s.dim()));
    }
    if (target_ && !(target_->basis() == s.basis())) {
        throw std::invalid_argument("basis mismatch between projector target and state");
    }
}

std::array<Amplitude, kMaxDim> Projector::act(const StateVector &s) const {
    require_compatible(s);
    std::array<Amplitude, kMaxDim> out{};
    if (target_) {
        Amplitude overlap = inner(*target_, s);
        for (size_t i = 0; i < dim_; i++) {
            Amplitude along = overlap * target_->amp(i);
            out[i] = complemented_ ? s.amp(i) - along : along;
        }
    } else {
        for (size_t i = 0; i < dim_; i++) {
            bool in = (mask_ >> i) & 1u;
            out[i] = in != complemented_ ? s.amp(i) : Amplitude(0);
        }
    }
    return out;
}

std::vector<Amplitude> Projector::matrix() const {
    std::vector<Amplitude> m(dim_ * dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            Amplitude v = 0;
            if (target_) {
                v = target_->amp(i) * std::conj(target_->amp(j));
            } else if (i == j && ((mask_ >> i) & 1u)) {
                v = 1;
            }
            if (complemented_) {
                v = Amplitude(i == j ? 1.0 : 0.0) - v;
            }
            m[i * dim_ + j] = v;
        }
    }
    return m;
}

Amplitude inner(const StateVector &a, const StateVector &b) {
    if (!(a.basis() == b.basis())) {
        throw std::invalid_argument("basis mismatch in inner product");
    }
    Amplitude t = 0;
    for (size_t i = 0; i < a.dim(); i++) {
        t += std::conj(a.amp(i)) * b.amp(i);
    }
    return t;
}

StateVector apply(const UnitaryOp &u, const StateVector &s) {
    if (u.dim() != s.dim()) {
        throw std::invalid_argument(
            "dimension mismatch: operator " + std::to_string(u.dim()) + ", state " + std::to_string(s.dim()));
    }
    std::array<Amplitude, kMaxDim> out{};
    for (size_t i = 0; i < s.dim(); i++) {
        Amplitude t = 0;
        for (size_t k = 0; k < s.dim(); k++) {
            t += u.at(i, k) * s.amp(k);
        }
        out[i] = t;
    }
    return StateVector::unchecked(s.basis(), std::span<const Amplitude>(out.data(), s.dim()));
}

double born_prob(const Projector &p, const StateVector &s) {
    auto v = p.act(s);
    double t = norm_squared(std::span<const Amplitude>(v.data(), s.dim()));
    return std::clamp(t, 0.0, 1.0);
}

MeasureResult measure(const Projector &p, const StateVector &s, RandomStream &rng) {
    auto projected = p.act(s);
    double prob = std::clamp(norm_squared(std::span<const Amplitude>(projected.data(), s.dim())), 0.0, 1.0);
    if (prob < kExactTol) {
        prob = 0;
    } else if (prob > 1 - kExactTol) {
        prob = 1;
    }
    bool found = rng.uniform() < prob;
    auto branch = found ? projected : p.complement().act(s);
    std::span<const Amplitude> amps(branch.data(), s.dim());
    if (norm_squared(amps) == 0) {
        throw std::logic_error("measurement selected a zero-norm branch");
    }
    return MeasureResult{found, prob, StateVector::renormalized(s.basis(), amps)};
}

}  // namespace qga
