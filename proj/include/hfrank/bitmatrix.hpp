#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace hfrank {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

// Bit vector over GF(2), packed 64 bits per word.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        assert(i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v = true) {
        assert(i < n_);
        if (v)
            w_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void operator^=(const BitVec& o) {
        assert(n_ == o.n_);
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }
    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    // Index of the first (lowest) set bit, kNpos if zero.
    std::size_t first_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
        return kNpos;
    }
    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Dense GF(2) matrix, row-major packed bits. Addition is XOR; values are
// immutable in normal use: operations return new matrices.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }
    static BitMatrix zero(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return (w_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool v) {
        assert(i < rows_ && j < cols_);
        if (v)
            w_[i * wpr_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
        else
            w_[i * wpr_ + (j >> 6)] &= ~(std::uint64_t{1} << (j & 63));
    }

    BitVec row(std::size_t i) const {
        assert(i < rows_);
        BitVec v(cols_);
        for (std::size_t k = 0; k < wpr_; ++k) v.words()[k] = w_[i * wpr_ + k];
        return v;
    }
    BitVec col(std::size_t j) const {
        assert(j < cols_);
        BitVec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (get(i, j)) v.set(i);
        return v;
    }
    void set_row(std::size_t i, const BitVec& v) {
        assert(v.size() == cols_);
        for (std::size_t k = 0; k < wpr_; ++k) w_[i * wpr_ + k] = v.words()[k];
    }
    void set_col(std::size_t j, const BitVec& v) {
        assert(v.size() == rows_);
        for (std::size_t i = 0; i < rows_; ++i) set(i, j, v.get(i));
    }

    void xor_row_into(std::size_t dst, std::size_t src) {
        for (std::size_t k = 0; k < wpr_; ++k) w_[dst * wpr_ + k] ^= w_[src * wpr_ + k];
    }
    void xor_col_into(std::size_t dst, std::size_t src) {
        for (std::size_t i = 0; i < rows_; ++i)
            if (get(i, src)) set(i, dst, !get(i, dst));
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t k = 0; k < wpr_; ++k) std::swap(w_[a * wpr_ + k], w_[b * wpr_ + k]);
    }

    bool is_zero() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }
    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
    }

    BitMatrix operator^(const BitMatrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        BitMatrix r = *this;
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] ^= o.w_[k];
        return r;
    }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < wpr_; ++k) {
                std::uint64_t w = w_[i * wpr_ + k];
                while (w) {
                    std::size_t j = k * 64 + static_cast<std::size_t>(std::countr_zero(w));
                    t.set(j, i, true);
                    w &= w - 1;
                }
            }
        return t;
    }

    BitMatrix mul(const BitMatrix& o) const {
        if (cols_ != o.rows_)
            throw DimensionMismatch("mul: " + dims() + " * " + o.dims());
        BitMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < wpr_; ++k) {
                std::uint64_t w = w_[i * wpr_ + k];
                while (w) {
                    std::size_t j = k * 64 + static_cast<std::size_t>(std::countr_zero(w));
                    r.xor_row_into(i, j, o);
                    w &= w - 1;
                }
            }
        return r;
    }

    // y = M x with x over cols, y over rows.
    BitVec apply(const BitVec& x) const {
        if (x.size() != cols_)
            throw DimensionMismatch("apply: " + dims() + " to vec " + std::to_string(x.size()));
        BitVec y(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::size_t par = 0;
            for (std::size_t k = 0; k < wpr_; ++k)
                par ^= static_cast<std::size_t>(std::popcount(w_[i * wpr_ + k] & x.words()[k])) & 1;
            y.set(i, par & 1);
        }
        return y;
    }

    BitMatrix submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
        assert(r0 <= r1 && r1 <= rows_ && c0 <= c1 && c1 <= cols_);
        BitMatrix s(r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j)
                if (get(i, j)) s.set(i - r0, j - c0, true);
        return s;
    }

    static BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
        if (a.cols() != b.cols()) throw DimensionMismatch("vstack: " + a.dims() + " / " + b.dims());
        BitMatrix r(a.rows() + b.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) r.set_row(i, a.row(i));
        for (std::size_t i = 0; i < b.rows(); ++i) r.set_row(a.rows() + i, b.row(i));
        return r;
    }
    static BitMatrix hstack(const BitMatrix& a, const BitMatrix& b) {
        if (a.rows() != b.rows()) throw DimensionMismatch("hstack: " + a.dims() + " | " + b.dims());
        BitMatrix r(a.rows(), a.cols() + b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a.get(i, j)) r.set(i, j, true);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b.get(i, j)) r.set(i, a.cols() + j, true);
        return r;
    }

    std::string dims() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
            s += '\n';
        }
        return s;
    }

  private:
    void xor_row_into(std::size_t dst, std::size_t src, const BitMatrix& o) {
        // this.row(dst) ^= o.row(src); only valid when cols_ == o.cols_ of result usage
        for (std::size_t k = 0; k < wpr_; ++k) w_[dst * wpr_ + k] ^= o.w_[src * o.wpr_ + k];
    }

    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace hfrank
