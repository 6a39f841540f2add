#pragma once

#include <string>
#include <utility>
#include <vector>

#include "f2linalg.hpp"
#include "model.hpp"

namespace hfrank {

// Finite chain complex over GF(2) with an integer grading per generator.
// The differential matrix maps columns (sources) to rows (targets).
struct GradedComplex {
    struct Gen {
        std::string id;
        int grading;
    };
    std::vector<Gen> generators;
    BitMatrix differential;

    std::size_t dim() const { return generators.size(); }
    std::size_t homology() const { return homology_rank(differential); }
    void check_d2() const {
        if (!differential.mul(differential).is_zero())
            throw ConventionFailure("differential does not square to zero");
    }
};

struct ChainMap {
    GradedComplex source, target;
    BitMatrix matrix;

    bool commutes() const {
        return matrix.mul(source.differential) == target.differential.mul(matrix);
    }
    void check() const {
        if (!commutes()) throw InvariantViolation("chain map identity fails");
    }
};

// Grading predicates for B slices.
struct SlicePred {
    enum class Kind { All, Eq, Lt, Ge, Gt };
    Kind kind = Kind::All;
    int s = 0;

    bool operator()(int a) const {
        switch (kind) {
            case Kind::All: return true;
            case Kind::Eq: return a == s;
            case Kind::Lt: return a < s;
            case Kind::Ge: return a >= s;
            case Kind::Gt: return a > s;
        }
        return false;
    }
    static SlicePred all() { return {Kind::All, 0}; }
    static SlicePred eq(int s) { return {Kind::Eq, s}; }
    static SlicePred lt(int s) { return {Kind::Lt, s}; }
    static SlicePred ge(int s) { return {Kind::Ge, s}; }
    static SlicePred gt(int s) { return {Kind::Gt, s}; }
};

// The full complex B (vertical arrows) as a graded complex.
inline GradedComplex b_complex(const CfkModel& m) {
    GradedComplex c;
    for (const auto& g : m.generators) c.generators.push_back({g.id, g.alexander});
    c.differential = b_differential(m);
    return c;
}

// Span of the generators satisfying pred, with the vertical arrows that stay
// inside; entries crossing the cut are dropped.
inline GradedComplex b_slice(const CfkModel& m, SlicePred pred) {
    std::vector<std::size_t> keep;
    std::vector<std::size_t> pos(m.size(), kNpos);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (pred(m.alexander(i))) {
            pos[i] = keep.size();
            keep.push_back(i);
        }
    GradedComplex c;
    for (auto i : keep) c.generators.push_back({m.generators[i].id, m.alexander(i)});
    c.differential = BitMatrix(keep.size(), keep.size());
    for (const auto& a : m.arrows)
        if (a.u_power == 0 && pos[a.from] != kNpos && pos[a.to] != kNpos)
            c.differential.set(pos[a.to], pos[a.from], true);
    return c;
}

// Placement of generator i in A[t]: (0, A) when A <= t, else (t - A, t).
inline std::pair<int, int> a_placement(const CfkModel& m, std::size_t i, int t) {
    int a = m.alexander(i);
    return a <= t ? std::pair<int, int>{0, a} : std::pair<int, int>{t - a, t};
}

// A[t]: one generator per model generator; an arrow survives iff its translate
// of the source placement lands exactly on the target's placement.
inline GradedComplex build_A(const CfkModel& m, int t) {
    GradedComplex c;
    for (const auto& g : m.generators) c.generators.push_back({g.id, g.alexander});
    c.differential = BitMatrix(m.size(), m.size());
    for (const auto& a : m.arrows) {
        auto [i0, j0] = a_placement(m, a.from, t);
        std::pair<int, int> tgt{i0 - a.u_power, j0 - m.drop_b(a)};
        if (tgt == a_placement(m, a.to, t)) c.differential.set(a.to, a.from, true);
    }
    c.check_d2();
    return c;
}

// The two edge maps of the surgery cone. v projects onto the i = 0 part;
// h projects onto j = t, translates to j = 0 and applies the flip.
inline std::pair<ChainMap, ChainMap> edge_maps(const CfkModel& m, int t) {
    GradedComplex at = build_A(m, t);
    GradedComplex b = b_complex(m);
    BitMatrix v(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.alexander(i) <= t) v.set(i, i, true);
    BitMatrix proj(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.alexander(i) >= t) proj.set(i, i, true);
    BitMatrix h = m.flip_matrix().mul(proj);
    ChainMap vm{at, b, std::move(v)};
    ChainMap hm{std::move(at), std::move(b), std::move(h)};
    vm.check();
    if (!hm.commutes())
        throw FlipUnavailable(m.name + ": flip does not induce a chain map at t=" +
                              std::to_string(t));
    return {std::move(vm), std::move(hm)};
}

}  // namespace hfrank
