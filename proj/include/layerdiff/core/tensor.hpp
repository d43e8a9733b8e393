// Copyright (c) 2026 The layerdiff Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "layerdiff/core/rng.hpp"

namespace layerdiff {

using Shape = std::vector<int64_t>;

inline int64_t shape_numel(const Shape& s) {
    int64_t n = 1;
    for (int64_t d : s) n *= d;
    return n;
}

inline std::string shape_str(const Shape& s) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "]";
    return os.str();
}

// Dense row-major tensor. The buffer is shared so reshapes are free; all
// write paths allocate fresh buffers, so aliasing never leaks across ops.
template <typename T>
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(Shape shape)
        : shape_(std::move(shape)),
          buf_(std::make_shared<std::vector<T>>(shape_numel(shape_), T(0))) {}

    Tensor(Shape shape, std::shared_ptr<std::vector<T>> buf)
        : shape_(std::move(shape)), buf_(std::move(buf)) {
        if (static_cast<int64_t>(buf_->size()) != shape_numel(shape_)) {
            throw std::invalid_argument("tensor: buffer does not match shape " + shape_str(shape_));
        }
    }

    static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }

    static Tensor full(Shape shape, T v) {
        Tensor t(std::move(shape));
        std::fill(t.begin(), t.end(), v);
        return t;
    }

    static Tensor from(Shape shape, std::vector<T> values) {
        if (shape_numel(shape) != static_cast<int64_t>(values.size())) {
            throw std::invalid_argument("tensor: value count does not match shape");
        }
        return Tensor(std::move(shape), std::make_shared<std::vector<T>>(std::move(values)));
    }

    bool defined() const { return buf_ != nullptr; }
    const Shape& shape() const { return shape_; }
    int64_t dim(size_t i) const { return shape_.at(i); }
    size_t ndim() const { return shape_.size(); }
    int64_t numel() const { return buf_ ? static_cast<int64_t>(buf_->size()) : 0; }

    T* data() { return buf_->data(); }
    const T* data() const { return buf_->data(); }
    T* begin() { return data(); }
    T* end() { return data() + numel(); }
    const T* begin() const { return data(); }
    const T* end() const { return data() + numel(); }

    T& operator[](int64_t i) { return (*buf_)[i]; }
    const T& operator[](int64_t i) const { return (*buf_)[i]; }

    T& at(std::initializer_list<int64_t> idx) { return (*buf_)[flat_index(idx)]; }
    const T& at(std::initializer_list<int64_t> idx) const { return (*buf_)[flat_index(idx)]; }

    // Shares the underlying buffer.
    Tensor reshaped(Shape new_shape) const {
        if (shape_numel(new_shape) != numel()) {
            throw std::invalid_argument("reshape: numel mismatch " + shape_str(shape_) + " -> " +
                                        shape_str(new_shape));
        }
        return Tensor(std::move(new_shape), buf_);
    }

    Tensor clone() const {
        return Tensor(shape_, std::make_shared<std::vector<T>>(*buf_));
    }

    template <typename U>
    Tensor<U> cast() const {
        Tensor<U> out(shape_);
        const T* src = data();
        U* dst = out.data();
        for (int64_t i = 0; i < numel(); ++i) dst[i] = static_cast<U>(src[i]);
        return out;
    }

    void fill_(T v) { std::fill(begin(), end(), v); }

    void fill_normal_(RngStream& rng, double stddev = 1.0, double mean = 0.0) {
        for (T& x : *buf_) x = static_cast<T>(mean + stddev * rng.normal());
    }

    void fill_uniform_(RngStream& rng, double lo, double hi) {
        for (T& x : *buf_) x = static_cast<T>(rng.uniform(lo, hi));
    }

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

private:
    int64_t flat_index(std::initializer_list<int64_t> idx) const {
        if (idx.size() != shape_.size()) throw std::invalid_argument("at(): rank mismatch");
        int64_t flat = 0;
        size_t k = 0;
        for (int64_t i : idx) {
            flat = flat * shape_[k] + i;
            ++k;
        }
        return flat;
    }

    Shape shape_;
    std::shared_ptr<std::vector<T>> buf_;
};

using TensorF = Tensor<float>;
using TensorD = Tensor<double>;

template <typename T>
double max_abs_diff(const Tensor<T>& a, const Tensor<T>& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (int64_t i = 0; i < a.numel(); ++i) {
        m = std::max(m, std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])));
    }
    return m;
}

template <typename T>
bool bit_equal(const Tensor<T>& a, const Tensor<T>& b) {
    if (!a.same_shape(b)) return false;
    for (int64_t i = 0; i < a.numel(); ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

}  // namespace layerdiff
