#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "complexes.hpp"
#include "model.hpp"

namespace hfrank {

struct SurgerySpec {
    int p = 1, q = 1;

    SurgerySpec(int p_, int q_) : p(p_), q(q_) {
        if (p < 1 || q < 1) throw InvariantViolation("surgery coefficients must be positive");
        if (std::gcd(p, q) != 1) throw InvariantViolation("surgery coefficients must be coprime");
    }
};

inline int floor_div(int a, int b) {
    int q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

// One summand or edge of the assembled mapping cone, for reporting.
struct ConeComplex {
    struct Summand {
        char type;  // 'A' or 'B'
        int s;
        std::size_t offset, dim;
    };
    struct Edge {
        char kind;  // 'v' or 'h'
        int from_s, to_s;
    };
    std::vector<Summand> summands;
    std::vector<Edge> edges;
    GradedComplex assembled;
    int window_lo = 0, window_hi = 0;  // kept A-summand range
};

// Truncated mapping cone of v + h^p over the window of spin-c indices
// [-W, W-1] for A summands and [-W+p, W-1] for B summands, W = q(g+margin)+p.
// Outside the window v (top) and h (bottom) are isomorphisms and the dropped
// tails are acyclic, so the homology is unchanged for every margin >= 1.
inline ConeComplex build_truncated_cone(const CfkModel& model, SurgerySpec spec, int margin = 2) {
    if (margin < 1) throw WindowTooSmall("margin must be >= 1");
    CfkModel m = reduce_model(model);
    const std::size_t n = m.size();
    const int g = n ? genus(m) : 0;
    const int W = spec.q * (g + margin) + spec.p;
    ConeComplex cone;
    cone.window_lo = -W;
    cone.window_hi = W - 1;

    std::map<std::pair<char, int>, std::size_t> offset;
    std::size_t dim = 0;
    for (int s = -W; s < W; ++s) {
        offset[{'A', s}] = dim;
        cone.summands.push_back({'A', s, dim, n});
        dim += n;
    }
    for (int s = -W + spec.p; s < W; ++s) {
        offset[{'B', s}] = dim;
        cone.summands.push_back({'B', s, dim, n});
        dim += n;
    }
    GradedComplex& total = cone.assembled;
    total.differential = BitMatrix(dim, dim);
    for (const auto& sm : cone.summands)
        for (std::size_t i = 0; i < n; ++i)
            total.generators.push_back(
                {std::string(1, sm.type) + "[" + std::to_string(sm.s) + "]." + m.generators[i].id,
                 sm.s});

    BitMatrix db = b_differential(m);
    auto put = [&](std::size_t roff, std::size_t coff, const BitMatrix& blk) {
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j)
                if (blk.get(i, j)) total.differential.set(roff + i, coff + j, true);
    };
    for (int s = -W; s < W; ++s) {
        int t = floor_div(s, spec.q);
        auto [v, h] = edge_maps(m, t);
        std::size_t aoff = offset[{'A', s}];
        put(aoff, aoff, v.source.differential);
        if (auto it = offset.find({'B', s}); it != offset.end()) {
            put(it->second, aoff, v.matrix);
            cone.edges.push_back({'v', s, s});
        }
        if (auto it = offset.find({'B', s + spec.p}); it != offset.end()) {
            put(it->second, aoff, h.matrix);
            cone.edges.push_back({'h', s, s + spec.p});
        }
    }
    for (int s = -W + spec.p; s < W; ++s) put(offset[{'B', s}], offset[{'B', s}], db);
    total.check_d2();
    return cone;
}

struct RankReport {
    enum class Route { cone21, cone22, combinatorial23, closed_form };
    Route route;
    std::size_t value = 0;
    std::map<int, std::size_t> per_s;
    int window_lo = 0, window_hi = 0;
    int margin = 0;

    static const char* route_name(Route r) {
        switch (r) {
            case Route::cone21: return "cone21";
            case Route::cone22: return "cone22";
            case Route::combinatorial23: return "combinatorial23";
            case Route::closed_form: return "closed_form";
        }
        return "?";
    }
};

// Rank of HF-hat of the p/q surgery via the mapping cone, with an automatic
// stability re-check at margin + 1.
inline RankReport hf_surgery_report(const CfkModel& m, SurgerySpec spec, int margin = 2) {
    ConeComplex cone = build_truncated_cone(m, spec, margin);
    std::size_t r = cone.assembled.homology();
    std::size_t r2 = build_truncated_cone(m, spec, margin + 1).assembled.homology();
    if (r != r2)
        throw WindowTooSmall("rank not stable between margins " + std::to_string(margin) +
                             " and " + std::to_string(margin + 1));
    RankReport rep;
    rep.route = RankReport::Route::cone21;
    rep.value = r;
    rep.window_lo = cone.window_lo;
    rep.window_hi = cone.window_hi;
    rep.margin = margin;
    return rep;
}

inline std::size_t hf_surgery_rank(const CfkModel& m, SurgerySpec spec, int margin = 2) {
    return hf_surgery_report(m, spec, margin).value;
}

// The three-legged knot surgery cone: total complex of
//   B -> B{>=u} (+) B{>=w},
// both legs the canonical quotients. Coordinates: [B | leg1 | leg2].
struct KnotCone {
    std::vector<std::size_t> leg1, leg2;
    GradedComplex assembled;

    KnotCone(const CfkModel& m, int u, int w) {
        const std::size_t n = m.size();
        GradedComplex b = b_complex(m);
        GradedComplex s1 = b_slice(m, SlicePred::ge(u));
        GradedComplex s2 = b_slice(m, SlicePred::ge(w));
        std::vector<std::size_t> p1(n, kNpos), p2(n, kNpos);
        for (std::size_t i = 0; i < n; ++i) {
            if (m.alexander(i) >= u) {
                p1[i] = leg1.size();
                leg1.push_back(i);
            }
            if (m.alexander(i) >= w) {
                p2[i] = leg2.size();
                leg2.push_back(i);
            }
        }
        std::size_t dim = n + leg1.size() + leg2.size();
        assembled.differential = BitMatrix(dim, dim);
        for (std::size_t i = 0; i < n; ++i)
            assembled.generators.push_back({"B." + m.generators[i].id, m.alexander(i)});
        for (auto i : leg1)
            assembled.generators.push_back({"L." + m.generators[i].id, m.alexander(i)});
        for (auto i : leg2)
            assembled.generators.push_back({"R." + m.generators[i].id, m.alexander(i)});
        auto put = [&](std::size_t ro, std::size_t co, const BitMatrix& blk) {
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j)
                    if (blk.get(i, j)) assembled.differential.set(ro + i, co + j, true);
        };
        put(0, 0, b.differential);
        put(n, n, s1.differential);
        put(n + leg1.size(), n + leg1.size(), s2.differential);
        for (std::size_t i = 0; i < n; ++i) {
            if (p1[i] != kNpos) assembled.differential.set(n + p1[i], i, true);
            if (p2[i] != kNpos) assembled.differential.set(n + leg1.size() + p2[i], i, true);
        }
        assembled.check_d2();
    }

    std::size_t homology() const { return assembled.homology(); }
};

// Knot Floer ranks of the core of n-surgery, one cone per spin-c index s:
// C_n(s) has legs at cuts s and n+1-s. Zero entries are omitted.
inline RankReport hfk_surgery_report(const CfkModel& model, int n) {
    if (n < 1) throw InvariantViolation("hfk_surgery_ranks needs n >= 1");
    CfkModel m = reduce_model(model);
    int g = m.size() ? genus(m) : 0;
    RankReport rep;
    rep.route = RankReport::Route::cone22;
    rep.window_lo = -g;
    rep.window_hi = n + g + 1;
    for (int s = rep.window_lo; s <= rep.window_hi; ++s) {
        KnotCone cone(m, s, n + 1 - s);
        std::size_t r = cone.homology();
        if (r) rep.per_s[s] = r;
        rep.value += r;
    }
    return rep;
}

inline std::map<int, std::size_t> hfk_surgery_ranks(const CfkModel& model, int n) {
    return hfk_surgery_report(model, n).per_s;
}

// Experimental two-term formulation: the cone of the composite
// B{<s} -> B -> B{>s-n}. Not normative: already on the one-generator model it
// produces nonzero ranks for arbitrarily negative s, so a window is required
// and totals are not comparable with the three-legged cones.
inline std::map<int, std::size_t> hfk_surgery_ranks_two_term(const CfkModel& model, int n,
                                                             int window) {
    if (n < 1) throw InvariantViolation("hfk_surgery_ranks needs n >= 1");
    CfkModel m = reduce_model(model);
    std::map<int, std::size_t> out;
    for (int s = -window; s <= window; ++s) {
        GradedComplex lo = b_slice(m, SlicePred::lt(s));
        GradedComplex hi = b_slice(m, SlicePred::gt(s - n));
        std::size_t dim = lo.dim() + hi.dim();
        BitMatrix d(dim, dim);
        auto put = [&](std::size_t ro, std::size_t co, const BitMatrix& blk) {
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j)
                    if (blk.get(i, j)) d.set(ro + i, co + j, true);
        };
        put(0, 0, lo.differential);
        put(lo.dim(), lo.dim(), hi.differential);
        std::map<std::string, std::size_t> hi_pos;
        for (std::size_t i = 0; i < hi.dim(); ++i) hi_pos[hi.generators[i].id] = i;
        for (std::size_t i = 0; i < lo.dim(); ++i)
            if (auto it = hi_pos.find(lo.generators[i].id); it != hi_pos.end())
                d.set(lo.dim() + it->second, i, true);
        if (!d.mul(d).is_zero())
            throw ConventionFailure("two-term cone differential does not square to zero");
        std::size_t r = homology_rank(d);
        if (r) out[s] = r;
    }
    return out;
}

}  // namespace hfrank
