#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "bitmatrix.hpp"
#include "errors.hpp"

namespace hfrank {

// Row echelon held as (pivot column -> reduced row); pivot = first set bit.
// Deterministic: rows are folded in the order given.
class Echelon {
  public:
    explicit Echelon(std::size_t width) : width_(width) {}

    // Reduces v in place against the current basis; returns its pivot or kNpos.
    std::size_t reduce(BitVec& v) const {
        for (;;) {
            std::size_t p = v.first_set();
            if (p == kNpos) return kNpos;
            auto it = rows_.find(p);
            if (it == rows_.end()) return p;
            v ^= it->second;
        }
    }
    // Reduce and insert if independent; returns true if v extended the span.
    bool add(BitVec v) {
        std::size_t p = reduce(v);
        if (p == kNpos) return false;
        rows_.emplace(p, std::move(v));
        return true;
    }
    std::size_t rank() const { return rows_.size(); }
    bool contains(BitVec v) const { return reduce(v) == kNpos; }
    std::size_t width() const { return width_; }

  private:
    std::size_t width_;
    std::map<std::size_t, BitVec> rows_;
};

inline std::size_t rank(const BitMatrix& m) {
    Echelon e(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) e.add(m.row(i));
    return e.rank();
}

// Columns form a basis of {v : m v = 0}; column count = cols - rank.
inline BitMatrix kernel_basis(const BitMatrix& m) {
    struct Tracked {
        BitVec v, t;
    };
    std::map<std::size_t, Tracked> ech;
    std::vector<BitVec> ker;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        BitVec v = m.col(j);
        BitVec t(m.cols());
        t.set(j);
        for (;;) {
            std::size_t p = v.first_set();
            if (p == kNpos) {
                ker.push_back(t);
                break;
            }
            auto it = ech.find(p);
            if (it == ech.end()) {
                ech.emplace(p, Tracked{std::move(v), std::move(t)});
                break;
            }
            v ^= it->second.v;
            t ^= it->second.t;
        }
    }
    BitMatrix out(m.cols(), ker.size());
    for (std::size_t k = 0; k < ker.size(); ++k) out.set_col(k, ker[k]);
    return out;
}

inline BitMatrix inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of " + m.dims());
    std::size_t n = m.rows();
    BitMatrix a = m, inv = BitMatrix::identity(n);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t piv = kNpos;
        for (std::size_t i = r; i < n; ++i)
            if (a.get(i, c)) {
                piv = i;
                break;
            }
        if (piv == kNpos) throw InvariantViolation("singular matrix");
        a.swap_rows(r, piv);
        inv.swap_rows(r, piv);
        for (std::size_t i = 0; i < n; ++i)
            if (i != r && a.get(i, c)) {
                a.xor_row_into(i, r);
                inv.xor_row_into(i, r);
            }
        ++r;
    }
    if (r < n) throw InvariantViolation("singular matrix");
    return inv;
}

inline bool is_invertible(const BitMatrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

// Any solution X of A X = B; throws if inconsistent.
inline BitMatrix solve(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("solve: " + a.dims() + ", " + b.dims());
    BitMatrix aug = BitMatrix::hstack(a, b);
    std::size_t n = a.cols();
    std::size_t r = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t c = 0; c < n && r < aug.rows(); ++c) {
        std::size_t piv = kNpos;
        for (std::size_t i = r; i < aug.rows(); ++i)
            if (aug.get(i, c)) {
                piv = i;
                break;
            }
        if (piv == kNpos) continue;
        aug.swap_rows(r, piv);
        for (std::size_t i = 0; i < aug.rows(); ++i)
            if (i != r && aug.get(i, c)) aug.xor_row_into(i, r);
        pivcol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < aug.rows(); ++i)
        for (std::size_t j = n; j < aug.cols(); ++j)
            if (aug.get(i, j)) throw InvariantViolation("solve: inconsistent system");
    BitMatrix x(n, b.cols());
    for (std::size_t k = 0; k < pivcol.size(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (aug.get(k, n + j)) x.set(pivcol[k], j, true);
    return x;
}

// Invertible row/column changes; left is rows x rows, right is cols x cols.
struct BasisChange {
    BitMatrix left, right;
};

// left * f * right == [[I_r, 0], [0, 0]] with r = rank(f).
inline std::pair<BasisChange, std::size_t> normalize_projection(const BitMatrix& f) {
    std::size_t nr = f.rows(), nc = f.cols();
    BitMatrix a = f;
    BitMatrix left = BitMatrix::identity(nr);
    BitMatrix right = BitMatrix::identity(nc);
    std::size_t r = 0;
    std::vector<std::size_t> pivcols;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = kNpos;
        for (std::size_t i = r; i < nr; ++i)
            if (a.get(i, c)) {
                piv = i;
                break;
            }
        if (piv == kNpos) continue;
        a.swap_rows(r, piv);
        left.swap_rows(r, piv);
        for (std::size_t i = 0; i < nr; ++i)
            if (i != r && a.get(i, c)) {
                a.xor_row_into(i, r);
                left.xor_row_into(i, r);
            }
        pivcols.push_back(c);
        ++r;
    }
    // clear the non-pivot entries of each pivot row by column ops
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t j = 0; j < nc; ++j) {
            if (j != pivcols[k] && a.get(k, j)) {
                a.xor_col_into(j, pivcols[k]);
                right.xor_col_into(j, pivcols[k]);
            }
        }
    }
    // permute pivot columns to the front
    for (std::size_t k = 0; k < r; ++k) {
        std::size_t want = k, have = pivcols[k];
        if (want == have) continue;
        for (std::size_t i = 0; i < nr; ++i) {
            bool t = a.get(i, want);
            a.set(i, want, a.get(i, have));
            a.set(i, have, t);
        }
        for (std::size_t i = 0; i < nc; ++i) {
            bool t = right.get(i, want);
            right.set(i, want, right.get(i, have));
            right.set(i, have, t);
        }
        for (std::size_t k2 = k + 1; k2 < r; ++k2)
            if (pivcols[k2] == want) pivcols[k2] = have;
        pivcols[k] = want;
    }
    return {BasisChange{std::move(left), std::move(right)}, r};
}

// One block of a banded layout; absent blocks are zero.
struct BlockEntry {
    std::size_t row_band, col_band;
    BitMatrix m;
};

// Assembles a block matrix from banded entries with explicit band sizes;
// absent blocks are zero.
inline BitMatrix assemble_blocks(const std::vector<BlockEntry>& blocks,
                                 const std::vector<std::size_t>& rh,
                                 const std::vector<std::size_t>& cw) {
    const std::size_t row_bands = rh.size(), col_bands = cw.size();
    for (const auto& b : blocks) {
        if (b.row_band >= row_bands || b.col_band >= col_bands)
            throw DimensionMismatch("assemble_blocks: band index out of range");
        if (rh[b.row_band] != b.m.rows())
            throw DimensionMismatch("assemble_blocks: row band " + std::to_string(b.row_band) +
                                    " height disagrees");
        if (cw[b.col_band] != b.m.cols())
            throw DimensionMismatch("assemble_blocks: col band " + std::to_string(b.col_band) +
                                    " width disagrees");
    }
    std::vector<std::size_t> roff(row_bands + 1, 0), coff(col_bands + 1, 0);
    for (std::size_t i = 0; i < row_bands; ++i) roff[i + 1] = roff[i] + rh[i];
    for (std::size_t j = 0; j < col_bands; ++j) coff[j + 1] = coff[j] + cw[j];
    BitMatrix out(roff[row_bands], coff[col_bands]);
    for (const auto& b : blocks)
        for (std::size_t i = 0; i < b.m.rows(); ++i)
            for (std::size_t j = 0; j < b.m.cols(); ++j)
                if (b.m.get(i, j)) {
                    std::size_t ri = roff[b.row_band] + i, cj = coff[b.col_band] + j;
                    if (out.get(ri, cj))
                        throw DimensionMismatch("assemble_blocks: overlapping blocks");
                    out.set(ri, cj, true);
                }
    return out;
}

// Convenience overload: band sizes inferred from the entries; every band must
// be touched by at least one block.
inline BitMatrix assemble_blocks(const std::vector<BlockEntry>& blocks, std::size_t row_bands,
                                 std::size_t col_bands) {
    std::vector<std::size_t> rh(row_bands, kNpos), cw(col_bands, kNpos);
    for (const auto& b : blocks) {
        if (b.row_band >= row_bands || b.col_band >= col_bands)
            throw DimensionMismatch("assemble_blocks: band index out of range");
        if (rh[b.row_band] == kNpos) rh[b.row_band] = b.m.rows();
        if (cw[b.col_band] == kNpos) cw[b.col_band] = b.m.cols();
    }
    for (auto h : rh)
        if (h == kNpos) throw DimensionMismatch("assemble_blocks: row band size unknown");
    for (auto w : cw)
        if (w == kNpos) throw DimensionMismatch("assemble_blocks: col band size unknown");
    return assemble_blocks(blocks, rh, cw);
}

// Homology of a differential d (square, d^2 = 0): rank = dim - 2 rank(d).
inline std::size_t homology_rank(const BitMatrix& d) {
    if (d.rows() != d.cols()) throw DimensionMismatch("homology_rank of " + d.dims());
    return d.rows() - 2 * rank(d);
}

// Cycle representatives of homology classes plus projection of cycles onto
// class coefficients. Deterministic given the differential.
class HomologyBasis {
  public:
    explicit HomologyBasis(const BitMatrix& d) : n_(d.rows()) {
        if (d.rows() != d.cols()) throw DimensionMismatch("homology basis of " + d.dims());
        // boundary echelon, with zero class coefficients
        for (std::size_t j = 0; j < n_; ++j) {
            BitVec b = d.col(j);
            insert(std::move(b), BitVec(n_ ? n_ : 1));
        }
        boundary_rank_ = proj_.size();
        BitMatrix ker = kernel_basis(d);
        for (std::size_t j = 0; j < ker.cols(); ++j) {
            BitVec z = ker.col(j);
            BitVec zcopy = z;
            if (insert_class(std::move(zcopy))) reps_.push_back(std::move(z));
        }
    }

    std::size_t dim() const { return reps_.size(); }
    std::size_t ambient() const { return n_; }
    const BitVec& rep(std::size_t k) const { return reps_[k]; }

    // Class coefficients of a cycle (throws if v is not a cycle mod boundaries).
    BitVec project(const BitVec& v) const {
        BitVec x = v;
        BitVec acc(n_ ? n_ : 1);
        for (;;) {
            std::size_t p = x.first_set();
            if (p == kNpos) break;
            auto it = proj_.find(p);
            if (it == proj_.end()) throw InvariantViolation("project: not a cycle");
            x ^= it->second.first;
            acc ^= it->second.second;
        }
        BitVec coeff(reps_.size());
        for (std::size_t k = 0; k < reps_.size(); ++k)
            if (acc.get(k)) coeff.set(k);
        return coeff;
    }

  private:
    void insert(BitVec v, BitVec c) {
        for (;;) {
            std::size_t p = v.first_set();
            if (p == kNpos) return;
            auto it = proj_.find(p);
            if (it == proj_.end()) {
                proj_.emplace(p, std::make_pair(std::move(v), std::move(c)));
                return;
            }
            v ^= it->second.first;
            c ^= it->second.second;
        }
    }
    bool insert_class(BitVec v) {
        BitVec c(n_ ? n_ : 1);
        for (;;) {
            std::size_t p = v.first_set();
            if (p == kNpos) return false;  // dependent: already a boundary/known class combo
            auto it = proj_.find(p);
            if (it == proj_.end()) {
                c.set(reps_.size());
                proj_.emplace(p, std::make_pair(std::move(v), std::move(c)));
                return true;
            }
            v ^= it->second.first;
            c ^= it->second.second;
        }
    }

    std::size_t n_;
    std::size_t boundary_rank_ = 0;
    std::vector<BitVec> reps_;
    std::map<std::size_t, std::pair<BitVec, BitVec>> proj_;
};

// Matrix of the map induced on homology by a chain map f.
inline BitMatrix induced_map(const BitMatrix& f, const HomologyBasis& src,
                             const HomologyBasis& tgt) {
    BitMatrix out(tgt.dim(), src.dim());
    for (std::size_t k = 0; k < src.dim(); ++k) {
        BitVec img = f.apply(src.rep(k));
        BitVec coeff = tgt.project(img);
        for (std::size_t i = 0; i < coeff.size(); ++i)
            if (coeff.get(i)) out.set(i, k, true);
    }
    return out;
}

}  // namespace hfrank
