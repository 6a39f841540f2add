#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "surgery.hpp"

namespace hfrank {

// The homology groups of the three surgery flavors with per-grading splits.
struct HTriple {
    std::map<int, std::size_t> hinf_per_s, h1_per_s, h0_per_s;
    std::size_t h_inf = 0, h_one = 0, h_zero = 0;
};

struct FourMaps {
    HTriple triple;
    BitMatrix phi, phibar;  // H_inf -> H_1
    BitMatrix psi, psibar;  // H_1 -> H_0
};

// Builds H_1(s), H_0(s) and the four structure maps for a reduced model.
//
// C_0(s) is the knot cone with cuts (s, 1-s) and C_1(s) the one with cuts
// (s+1, 1-s). Cutting the bottom slice off either leg of C_0(s) gives short
// exact sequences whose connecting and quotient maps, transposed, are phi and
// psibar; phibar and psi are their conjugates under the flip involution and
// the leg-swap isomorphisms H_1(s) ~ H_1(-s), H_0(s) ~ H_0(1-s).
class HGroupBuilder {
  public:
    explicit HGroupBuilder(const CfkModel& model) : m_(reduce_model(model)) {
        n_ = m_.size();
        g_ = n_ ? genus(m_) : 0;
        for (int s = -g_ - 2; s <= g_ + 2; ++s) srange_.push_back(s);
        for (int s : srange_) {
            c1_.emplace(s, std::make_unique<Cone>(m_, s + 1, 1 - s));
            c0_.emplace(s, std::make_unique<Cone>(m_, s, 1 - s));
        }
        std::size_t off = 0;
        for (int s : srange_) {
            h1_off_[s] = off;
            off += c1_.at(s)->hb.dim();
        }
        h1_dim_ = off;
        off = 0;
        for (int s : srange_) {
            h0_off_[s] = off;
            off += c0_.at(s)->hb.dim();
        }
        h0_dim_ = off;
    }

    const CfkModel& model() const { return m_; }
    int genus_bound() const { return g_; }
    std::size_t h1_dim() const { return h1_dim_; }
    std::size_t h0_dim() const { return h0_dim_; }

    std::map<int, std::size_t> h1_per_s() const {
        std::map<int, std::size_t> out;
        for (int s : srange_)
            if (c1_.at(s)->hb.dim()) out[s] = c1_.at(s)->hb.dim();
        return out;
    }
    std::map<int, std::size_t> h0_per_s() const {
        std::map<int, std::size_t> out;
        for (int s : srange_)
            if (c0_.at(s)->hb.dim()) out[s] = c0_.at(s)->hb.dim();
        return out;
    }
    const GradedComplex& h1_cone(int s) const { return c1_.at(s)->k.assembled; }

    HTriple triple() const {
        HTriple t;
        for (const auto& g : m_.generators) t.hinf_per_s[g.alexander]++;
        t.h1_per_s = h1_per_s();
        t.h0_per_s = h0_per_s();
        t.h_inf = n_;
        t.h_one = h1_dim_;
        t.h_zero = h0_dim_;
        return t;
    }

    // phi := (connecting map of 0 -> B{s} -> C_0(s) -> C_1(s) -> 0)^T.
    BitMatrix phi() const {
        BitMatrix out(h1_dim_, n_);
        for (int s : srange_) {
            const Cone& k1 = *c1_.at(s);
            const Cone& k0 = *c0_.at(s);
            if (k1.hb.dim() == 0) continue;
            for (std::size_t ci = 0; ci < k1.hb.dim(); ++ci) {
                BitVec lift = embed(k1, k0, k1.hb.rep(ci));
                BitVec dz = k0.k.assembled.differential.apply(lift);
                // lands in the grading-s slice of leg 1
                for (std::size_t k = 0; k < k0.k.leg1.size(); ++k)
                    if (dz.get(n_ + k)) {
                        std::size_t gg = k0.k.leg1[k];
                        if (m_.alexander(gg) != s)
                            throw ConventionFailure("connecting map escapes the slice");
                        out.set(h1_off_.at(s) + ci, gg, true);
                        dz.set(n_ + k, false);
                    }
                if (dz.any()) throw ConventionFailure("connecting map has residue");
            }
        }
        return out;
    }

    // psibar := (map induced by the quotient C_0(s) -> C_1(s))^T.
    BitMatrix psibar() const {
        BitMatrix out(h0_dim_, h1_dim_);
        for (int s : srange_) {
            const Cone& k1 = *c1_.at(s);
            const Cone& k0 = *c0_.at(s);
            if (k0.hb.dim() == 0 || k1.hb.dim() == 0) continue;
            for (std::size_t c0i = 0; c0i < k0.hb.dim(); ++c0i) {
                BitVec q = quotient(k0, k1, k0.hb.rep(c0i));
                BitVec coeff = k1.hb.project(q);
                for (std::size_t k = 0; k < coeff.size(); ++k)
                    if (coeff.get(k)) out.set(h0_off_.at(s) + c0i, h1_off_.at(s) + k, true);
            }
        }
        return out;
    }

    // Leg-swap isomorphisms.
    BitMatrix j1() const { return swap_total(c1_, h1_off_, h1_dim_, -1, 0); }
    BitMatrix j0() const { return swap_total(c0_, h0_off_, h0_dim_, -1, 1); }

    FourMaps four_maps() const {
        FourMaps fm;
        fm.triple = triple();
        fm.phi = phi();
        fm.psibar = psibar();
        BitMatrix J1 = j1(), J0 = j0();
        fm.phibar = J1.mul(fm.phi).mul(m_.flip_matrix());
        fm.psi = J0.mul(fm.psibar).mul(J1);
        return fm;
    }

  private:
    struct Cone {
        KnotCone k;
        HomologyBasis hb;
        Cone(const CfkModel& m, int u, int w) : k(m, u, w), hb(k.assembled.differential) {}
    };
    using ConeMap = std::map<int, std::unique_ptr<Cone>>;

    // Include a cycle of the smaller cone (legs cut higher) into the bigger one.
    BitVec embed(const Cone& src, const Cone& dst, const BitVec& v) const {
        BitVec out(dst.k.assembled.dim());
        for (std::size_t i = 0; i < n_; ++i)
            if (v.get(i)) out.set(i);
        std::vector<std::size_t> p1(n_, kNpos), p2(n_, kNpos);
        for (std::size_t k = 0; k < dst.k.leg1.size(); ++k) p1[dst.k.leg1[k]] = k;
        for (std::size_t k = 0; k < dst.k.leg2.size(); ++k) p2[dst.k.leg2[k]] = k;
        for (std::size_t k = 0; k < src.k.leg1.size(); ++k)
            if (v.get(n_ + k)) out.set(n_ + p1[src.k.leg1[k]]);
        for (std::size_t k = 0; k < src.k.leg2.size(); ++k)
            if (v.get(n_ + src.k.leg1.size() + k))
                out.set(n_ + dst.k.leg1.size() + p2[src.k.leg2[k]]);
        return out;
    }
    // Project a cycle of the bigger cone onto the smaller (drop cut slices).
    BitVec quotient(const Cone& src, const Cone& dst, const BitVec& v) const {
        BitVec out(dst.k.assembled.dim());
        for (std::size_t i = 0; i < n_; ++i)
            if (v.get(i)) out.set(i);
        std::vector<std::size_t> p1(n_, kNpos), p2(n_, kNpos);
        for (std::size_t k = 0; k < dst.k.leg1.size(); ++k) p1[dst.k.leg1[k]] = k;
        for (std::size_t k = 0; k < dst.k.leg2.size(); ++k) p2[dst.k.leg2[k]] = k;
        for (std::size_t k = 0; k < src.k.leg1.size(); ++k)
            if (v.get(n_ + k) && p1[src.k.leg1[k]] != kNpos) out.set(n_ + p1[src.k.leg1[k]]);
        for (std::size_t k = 0; k < src.k.leg2.size(); ++k)
            if (v.get(n_ + src.k.leg1.size() + k) && p2[src.k.leg2[k]] != kNpos)
                out.set(n_ + dst.k.leg1.size() + p2[src.k.leg2[k]]);
        return out;
    }
    // Chain iso K(u,w) -> K(w,u) exchanging the two legs; s -> c - s on labels.
    BitMatrix swap_total(const ConeMap& cones, const std::map<int, std::size_t>& offs,
                         std::size_t dim, int scale, int shift) const {
        BitMatrix out(dim, dim);
        for (int s : srange_) {
            int t = scale * s + shift;
            auto it = cones.find(t);
            if (it == cones.end()) continue;
            const Cone& src = *cones.at(s);
            const Cone& dst = *it->second;
            if (src.hb.dim() == 0) continue;
            std::vector<std::size_t> p1(n_, kNpos), p2(n_, kNpos);
            for (std::size_t k = 0; k < dst.k.leg1.size(); ++k) p1[dst.k.leg1[k]] = k;
            for (std::size_t k = 0; k < dst.k.leg2.size(); ++k) p2[dst.k.leg2[k]] = k;
            for (std::size_t ci = 0; ci < src.hb.dim(); ++ci) {
                const BitVec& v = src.hb.rep(ci);
                BitVec img(dst.k.assembled.dim());
                for (std::size_t i = 0; i < n_; ++i)
                    if (v.get(i)) img.set(i);
                for (std::size_t k = 0; k < src.k.leg1.size(); ++k)
                    if (v.get(n_ + k)) img.set(n_ + dst.k.leg1.size() + p2[src.k.leg1[k]]);
                for (std::size_t k = 0; k < src.k.leg2.size(); ++k)
                    if (v.get(n_ + src.k.leg1.size() + k)) img.set(n_ + p1[src.k.leg2[k]]);
                BitVec coeff = dst.hb.project(img);
                for (std::size_t k = 0; k < coeff.size(); ++k)
                    if (coeff.get(k)) out.set(offs.at(t) + k, offs.at(s) + ci, true);
            }
        }
        return out;
    }

    CfkModel m_;
    std::size_t n_ = 0;
    int g_ = 0;
    std::vector<int> srange_;
    ConeMap c1_, c0_;
    std::map<int, std::size_t> h1_off_, h0_off_;
    std::size_t h1_dim_ = 0, h0_dim_ = 0;
};

// Per-s homology of C_1(s) for s in [-g, g]; total is h_1.
struct H1Group {
    GradedComplex cone;
    std::size_t rank;
};
inline std::map<int, H1Group> h1_groups(const CfkModel& model) {
    HGroupBuilder b(model);
    std::map<int, H1Group> out;
    int g = b.genus_bound();
    for (int s = -g; s <= g; ++s)
        out[s] = H1Group{b.h1_cone(s), b.h1_per_s().count(s) ? b.h1_per_s().at(s) : 0};
    return out;
}

inline void validate_four_maps(const FourMaps& fm) {
    const auto& t = fm.triple;
    auto fail = [](const std::string& what) { throw ValidationFailure(what); };
    if (!fm.psibar.mul(fm.phi).is_zero()) fail("psibar . phi != 0");
    if (!fm.psi.mul(fm.phibar).is_zero()) fail("psi . phibar != 0");
    std::size_t rphi = rank(fm.phi), rphibar = rank(fm.phibar);
    std::size_t rpsi = rank(fm.psi), rpsibar = rank(fm.psibar);
    // exactness: containment comes from the zero composites, so dimension
    // equality upgrades it to subspace equality
    if (rpsibar != t.h_one - rphi) fail("sequence phi, psibar is not exact");
    if (rpsi != t.h_one - rphibar) fail("sequence phibar, psi is not exact");
    if (t.h_inf + t.h_one - 2 * rphi != t.h_zero) fail("cone(phi) rank != h_0");
    if (t.h_one + t.h_zero - 2 * rpsi != t.h_inf) fail("cone(psi) rank != h_inf");
    if (2 * rphi != t.h_inf + t.h_one - t.h_zero) fail("rank(phi) formula fails");
    if (2 * rpsibar != t.h_zero + t.h_one - t.h_inf) fail("rank(psibar) formula fails");
}

inline std::pair<BitMatrix, BitMatrix> phi_maps(const CfkModel& model) {
    FourMaps fm = HGroupBuilder(model).four_maps();
    validate_four_maps(fm);
    return {fm.phi, fm.phibar};
}
inline std::pair<BitMatrix, BitMatrix> psi_maps(const CfkModel& model) {
    FourMaps fm = HGroupBuilder(model).four_maps();
    validate_four_maps(fm);
    return {fm.psi, fm.psibar};
}

std::pair<BitMatrix, BitMatrix> constraint_search(const HTriple&, const BitMatrix&,
                                                  const BitMatrix&);

// Candidate maps, falling back to constraint search for the psi pair when the
// candidates fail validation.
inline FourMaps build_four_maps(const CfkModel& model) {
    FourMaps fm = HGroupBuilder(model).four_maps();
    try {
        validate_four_maps(fm);
    } catch (const ValidationFailure&) {
        auto [psi, psibar] = constraint_search(fm.triple, fm.phi, fm.phibar);
        fm.psi = psi;
        fm.psibar = psibar;
        validate_four_maps(fm);
    }
    return fm;
}

// The rational surgery complex: q copies of H_inf, p+q of H_1, p of H_0;
// phi^i into copy i, phibar^i into copy i+p, psibar^j from copy j, psi^j from
// copy j+q. Rank of the homology = dim - 2 (rank Phi + rank Psi).
inline std::size_t assemble_and_rank(const FourMaps& fm, SurgerySpec spec) {
    const std::size_t p = static_cast<std::size_t>(spec.p), q = static_cast<std::size_t>(spec.q);
    const auto& t = fm.triple;
    std::vector<BlockEntry> phi_blocks, psi_blocks;
    for (std::size_t i = 1; i <= q; ++i) {
        phi_blocks.push_back({i - 1, i - 1, fm.phi});
        phi_blocks.push_back({i + p - 1, i - 1, fm.phibar});
    }
    for (std::size_t j = 1; j <= p; ++j) {
        psi_blocks.push_back({j - 1, j - 1, fm.psibar});
        psi_blocks.push_back({j - 1, j + q - 1, fm.psi});
    }
    BitMatrix Phi = assemble_blocks(phi_blocks, std::vector<std::size_t>(p + q, t.h_one),
                                    std::vector<std::size_t>(q, t.h_inf));
    BitMatrix Psi = assemble_blocks(psi_blocks, std::vector<std::size_t>(p, t.h_zero),
                                    std::vector<std::size_t>(p + q, t.h_one));
    std::size_t dim = q * t.h_inf + (p + q) * t.h_one + p * t.h_zero;
    return dim - 2 * (rank(Phi) + rank(Psi));
}

inline std::size_t assemble_and_rank(const CfkModel& model, SurgerySpec spec) {
    FourMaps fm = HGroupBuilder(model).four_maps();
    validate_four_maps(fm);
    return assemble_and_rank(fm, spec);
}

// Simultaneous normal forms phi = [[I,0],[0,0]], psibar = [[0,I],[0,0]] and
// the blocks of phibar and psi in those bases.
struct BlockForms {
    BitMatrix a, b, c, d;  // phibar
    BitMatrix m, n, l, k;  // psi
    std::size_t r_phi = 0, r_psibar = 0;
    std::size_t h_inf = 0, h_one = 0, h_zero = 0;
    BasisChange on_hinf, on_h1, on_h0;  // new basis columns on the right factor
    BitMatrix nphi, nphibar, npsi, npsibar;
};

inline BlockForms normalize_blocks(const FourMaps& fm) {
    const auto& t = fm.triple;
    if (!fm.psibar.mul(fm.phi).is_zero())
        throw NormalizationFailure("psibar . phi != 0: no simultaneous normal form");
    std::size_t rphi = rank(fm.phi), rpsb = rank(fm.psibar);
    if (rphi + rpsb != t.h_one)
        throw NormalizationFailure("im phi != ker psibar: no simultaneous normal form");
    // H_1 basis: image of phi extended by standard vectors W
    std::vector<BitVec> h1cols;
    Echelon ech(t.h_one);
    std::vector<std::size_t> pre_cols;
    for (std::size_t j = 0; j < t.h_inf; ++j) {
        BitVec v = fm.phi.col(j);
        if (ech.add(v)) {
            h1cols.push_back(fm.phi.col(j));
            pre_cols.push_back(j);
        }
    }
    std::size_t w_start = h1cols.size();
    for (std::size_t e = 0; e < t.h_one && h1cols.size() < t.h_one; ++e) {
        BitVec v(t.h_one);
        v.set(e);
        if (ech.add(v)) {
            BitVec w(t.h_one);
            w.set(e);
            h1cols.push_back(w);
        }
    }
    BitMatrix P1(t.h_one, t.h_one);
    for (std::size_t k = 0; k < h1cols.size(); ++k) P1.set_col(k, h1cols[k]);
    // H_inf basis: chosen preimages then kernel of phi
    BitMatrix img(t.h_one, rphi);
    for (std::size_t k = 0; k < rphi; ++k) img.set_col(k, h1cols[k]);
    BitMatrix pre = solve(fm.phi, img);
    std::vector<BitVec> hinfcols;
    Echelon ech2(t.h_inf);
    for (std::size_t k = 0; k < rphi; ++k) {
        hinfcols.push_back(pre.col(k));
        ech2.add(pre.col(k));
    }
    BitMatrix ker = kernel_basis(fm.phi);
    for (std::size_t k = 0; k < ker.cols(); ++k)
        if (ech2.add(ker.col(k))) hinfcols.push_back(ker.col(k));
    if (hinfcols.size() != t.h_inf)
        throw NormalizationFailure("could not complete a basis of H_inf");
    BitMatrix Pinf(t.h_inf, t.h_inf);
    for (std::size_t k = 0; k < hinfcols.size(); ++k) Pinf.set_col(k, hinfcols[k]);
    // H_0 basis: psibar images of W then standard complement
    std::vector<BitVec> h0cols;
    Echelon ech3(t.h_zero);
    for (std::size_t k = w_start; k < t.h_one; ++k) {
        BitVec v = fm.psibar.apply(h1cols[k]);
        if (!ech3.add(v)) throw NormalizationFailure("psibar not injective on the complement");
        h0cols.push_back(fm.psibar.apply(h1cols[k]));
    }
    for (std::size_t e = 0; e < t.h_zero && h0cols.size() < t.h_zero; ++e) {
        BitVec v(t.h_zero);
        v.set(e);
        if (ech3.add(v)) {
            BitVec w(t.h_zero);
            w.set(e);
            h0cols.push_back(w);
        }
    }
    BitMatrix P0(t.h_zero, t.h_zero);
    for (std::size_t k = 0; k < h0cols.size(); ++k) P0.set_col(k, h0cols[k]);

    BlockForms bf;
    bf.r_phi = rphi;
    bf.r_psibar = rpsb;
    bf.h_inf = t.h_inf;
    bf.h_one = t.h_one;
    bf.h_zero = t.h_zero;
    bf.on_hinf = BasisChange{inverse(Pinf), Pinf};
    bf.on_h1 = BasisChange{inverse(P1), P1};
    bf.on_h0 = BasisChange{inverse(P0), P0};
    bf.nphi = bf.on_h1.left.mul(fm.phi).mul(Pinf);
    bf.nphibar = bf.on_h1.left.mul(fm.phibar).mul(Pinf);
    bf.npsi = bf.on_h0.left.mul(fm.psi).mul(P1);
    bf.npsibar = bf.on_h0.left.mul(fm.psibar).mul(P1);
    bf.a = bf.nphibar.submatrix(0, rphi, 0, rphi);
    bf.b = bf.nphibar.submatrix(0, rphi, rphi, t.h_inf);
    bf.c = bf.nphibar.submatrix(rphi, t.h_one, 0, rphi);
    bf.d = bf.nphibar.submatrix(rphi, t.h_one, rphi, t.h_inf);
    bf.m = bf.npsi.submatrix(0, rpsb, 0, rphi);
    bf.n = bf.npsi.submatrix(0, rpsb, rphi, t.h_one);
    bf.l = bf.npsi.submatrix(rpsb, t.h_zero, 0, rphi);
    bf.k = bf.npsi.submatrix(rpsb, t.h_zero, rphi, t.h_one);
    return bf;
}

// A_i of the rank recursions: i+1 diagonal bands of d with c a^t b fill below,
// and the final band (a^i b, ..., a b, b).
inline BitMatrix build_rank_matrix(int i, const BitMatrix& a, const BitMatrix& b,
                                   const BitMatrix& c, const BitMatrix& d) {
    std::vector<BitMatrix> apow{BitMatrix::identity(a.rows())};
    for (int k = 0; k <= i; ++k) apow.push_back(apow.back().mul(a));
    std::vector<BlockEntry> blocks;
    for (int t = 1; t <= i + 1; ++t) {
        blocks.push_back({static_cast<std::size_t>(t - 1), static_cast<std::size_t>(t - 1), d});
        for (int tp = 0; tp < t - 1; ++tp)
            blocks.push_back({static_cast<std::size_t>(t - 1), static_cast<std::size_t>(tp),
                              c.mul(apow[t - tp - 2]).mul(b)});
    }
    for (int jp = 0; jp <= i; ++jp)
        blocks.push_back(
            {static_cast<std::size_t>(i + 1), static_cast<std::size_t>(jp), apow[i - jp].mul(b)});
    std::vector<std::size_t> rh(i + 2, d.rows());
    rh[i + 1] = b.rows();
    return assemble_blocks(blocks, rh, std::vector<std::size_t>(i + 1, d.cols()));
}

struct XZReport {
    std::vector<std::size_t> x_table, z_table;  // x_i, z_j
    std::size_t x_pq = 0, z_pq = 0;
    std::size_t y_value = 0;
};

namespace detail {
inline std::size_t band_rank_recursion(int p, int q, const BitMatrix& a, const BitMatrix& b,
                                       const BitMatrix& c, const BitMatrix& d,
                                       std::vector<std::size_t>& table) {
    auto xi = [&](int k) {
        while (table.size() <= static_cast<std::size_t>(k))
            table.push_back(rank(build_rank_matrix(static_cast<int>(table.size()), a, b, c, d)));
        return table[k];
    };
    int i = q / p, r = q % p;
    if (i == 0) return static_cast<std::size_t>(q) * xi(0);
    if (r == 0) return static_cast<std::size_t>(p) * xi(i - 1);
    return static_cast<std::size_t>(r) * xi(i) + static_cast<std::size_t>(p - r) * xi(i - 1);
}
}  // namespace detail

// Computes x_{p,q}, z_{p,q} and the closed-form rank, and verifies both rank
// identities against the directly assembled staircase matrices.
inline XZReport xz_ranks(const BlockForms& bf, SurgerySpec spec) {
    XZReport rep;
    const std::size_t p = static_cast<std::size_t>(spec.p), q = static_cast<std::size_t>(spec.q);
    rep.x_pq = detail::band_rank_recursion(spec.p, spec.q, bf.a, bf.b, bf.c, bf.d, rep.x_table);
    rep.z_pq = detail::band_rank_recursion(spec.q, spec.p, bf.n.transpose(), bf.k.transpose(),
                                           bf.m.transpose(), bf.l.transpose(), rep.z_table);
    long y = static_cast<long>(p * bf.h_inf + q * bf.h_zero) -
             2 * static_cast<long>(rep.x_pq + rep.z_pq);
    if (y < 0) throw IdentityMismatch("closed-form rank negative", y, 0);
    rep.y_value = static_cast<std::size_t>(y);

    std::vector<BlockEntry> phi_blocks, psi_blocks;
    for (std::size_t i = 1; i <= q; ++i) {
        phi_blocks.push_back({i - 1, i - 1, bf.nphi});
        phi_blocks.push_back({i + p - 1, i - 1, bf.nphibar});
    }
    for (std::size_t j = 1; j <= p; ++j) {
        psi_blocks.push_back({j - 1, j - 1, bf.npsibar});
        psi_blocks.push_back({j - 1, j + q - 1, bf.npsi});
    }
    std::size_t xdir = rank(assemble_blocks(phi_blocks, std::vector<std::size_t>(p + q, bf.h_one),
                                            std::vector<std::size_t>(q, bf.h_inf)));
    std::size_t zdir = rank(assemble_blocks(psi_blocks, std::vector<std::size_t>(p, bf.h_zero),
                                            std::vector<std::size_t>(p + q, bf.h_one)));
    if (xdir != q * bf.r_phi + rep.x_pq)
        throw IdentityMismatch("rank(Phi_pq) != q rank(phi) + x_pq", static_cast<long>(xdir),
                               static_cast<long>(q * bf.r_phi + rep.x_pq));
    if (zdir != p * bf.r_psibar + rep.z_pq)
        throw IdentityMismatch("rank(Psi_pq) != p rank(psibar) + z_pq", static_cast<long>(zdir),
                               static_cast<long>(p * bf.r_psibar + rep.z_pq));
    return rep;
}

// Fallback search for psi, psibar satisfying every FourMaps invariant, given
// the groups and the phi pair. Deterministic lexicographic enumeration.
inline std::pair<BitMatrix, BitMatrix> constraint_search(const HTriple& t, const BitMatrix& phi,
                                                         const BitMatrix& phibar) {
    if (t.h_one > 8) throw NoSolution("constraint search limited to h_1 <= 8");
    if (t.h_zero >= 63) throw NoSolution("h_0 too large to enumerate");
    std::size_t rphi = rank(phi), rphibar = rank(phibar);
    if (2 * rphi != t.h_inf + t.h_one - t.h_zero)
        throw NoSolution("rank(phi) incompatible with the group dimensions");
    std::size_t need_psibar = t.h_one - rphi;   // forced by exactness
    std::size_t need_psi = t.h_one - rphibar;   // forced by exactness
    if (2 * need_psibar != t.h_zero + t.h_one - t.h_inf)
        throw NoSolution("rank(psibar) incompatible with the group dimensions");
    if (t.h_one + t.h_zero < 2 * need_psi || t.h_one + t.h_zero - 2 * need_psi != t.h_inf)
        throw NoSolution("cone(psi) rank incompatible with the group dimensions");
    if (need_psibar > t.h_zero || need_psi > t.h_zero) throw NoSolution("h_0 too small");

    // psibar = T . (projection mod im phi), T injective: enumerate columns of T
    // in lexicographic order as bit patterns.
    auto factor_through = [&](const BitMatrix& f) {
        // deterministic complement W of im f in F^{h_one}; returns the
        // projection matrix rows: coordinates along W of v mod im f
        Echelon ech(t.h_one);
        for (std::size_t j = 0; j < f.cols(); ++j) ech.add(f.col(j));
        std::vector<std::size_t> w;
        for (std::size_t e = 0; e < t.h_one; ++e) {
            BitVec v(t.h_one);
            v.set(e);
            if (ech.add(v)) w.push_back(e);
        }
        // Gaussian data to express any v as im-f part + W part
        BitMatrix basis(t.h_one, t.h_one);
        std::size_t c = 0;
        Echelon e2(t.h_one);
        for (std::size_t j = 0; j < f.cols() && c < t.h_one; ++j)
            if (e2.add(f.col(j))) basis.set_col(c++, f.col(j));
        std::size_t imdim = c;
        for (auto e : w) {
            BitVec v(t.h_one);
            v.set(e);
            basis.set_col(c++, v);
        }
        BitMatrix binv = inverse(basis);
        // projection = last rows of binv
        return binv.submatrix(imdim, t.h_one, 0, t.h_one);
    };
    auto first_injective = [&](std::size_t cols) {
        BitMatrix T(t.h_zero, cols);
        Echelon ech(t.h_zero);
        std::uint64_t cand = 1;
        for (std::size_t k = 0; k < cols; ++k) {
            for (;; ++cand) {
                if (cand >= (std::uint64_t{1} << t.h_zero))
                    throw NoSolution("no injective completion");
                BitVec v(t.h_zero);
                for (std::size_t b = 0; b < t.h_zero; ++b)
                    if ((cand >> b) & 1) v.set(b);
                if (ech.add(v)) {
                    T.set_col(k, v);
                    ++cand;
                    break;
                }
            }
        }
        return T;
    };
    BitMatrix proj_phi = factor_through(phi);
    BitMatrix proj_phibar = factor_through(phibar);
    BitMatrix psibar = first_injective(need_psibar).mul(proj_phi);
    BitMatrix psi = first_injective(need_psi).mul(proj_phibar);
    FourMaps fm{t, phi, phibar, psi, psibar};
    validate_four_maps(fm);  // ValidationFailure here means the inputs lied
    return {psi, psibar};
}

// Closed-form rank for simple models:
//   q = 1          -> h_p
//   1 <= t = p/q   -> r h_{t+1} + (q - r) h_t           (p = qt + r)
//   p/q < 1        -> p h_1 + (q - p) h_0
// h_n from the mapping cone route, h_0 from the combinatorial groups.
inline std::size_t simple_y_rank(const CfkModel& m, SurgerySpec spec) {
    if (hf_rank(m) != total_hfk_rank(m))
        throw NotSimple(m.name + ": model does not have simple Floer homology");
    if (spec.q == 1) return hf_surgery_rank(m, spec);
    int t = spec.p / spec.q, r = spec.p % spec.q;
    if (t >= 1)
        return static_cast<std::size_t>(r) * hf_surgery_rank(m, SurgerySpec(t + 1, 1)) +
               static_cast<std::size_t>(spec.q - r) * hf_surgery_rank(m, SurgerySpec(t, 1));
    std::size_t h1 = hf_surgery_rank(m, SurgerySpec(1, 1));
    std::size_t h0 = HGroupBuilder(m).h0_dim();
    return static_cast<std::size_t>(spec.p) * h1 +
           static_cast<std::size_t>(spec.q - spec.p) * h0;
}

}  // namespace hfrank
