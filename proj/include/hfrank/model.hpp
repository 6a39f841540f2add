#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bitmatrix.hpp"
#include "errors.hpp"
#include "f2linalg.hpp"

namespace hfrank {

struct Generator {
    std::string id;
    int alexander = 0;
    int maslov = 0;
};

// Differential component x -> y with u-power a; the vertical drop is derived:
// b = A(from) - A(to) + a.
struct Arrow {
    std::size_t from = 0, to = 0;
    int u_power = 0;
};

struct Flip {
    enum class Kind { Identity, Involution, Explicit, Unavailable };
    Kind kind = Kind::Identity;
    std::vector<std::size_t> perm;  // Involution (and Identity, materialized)
    BitMatrix matrix;               // Explicit
};

struct CfkModel {
    std::string name;
    std::vector<Generator> generators;
    std::vector<Arrow> arrows;  // kept sorted by (from, to); at most one per pair
    Flip flip;

    std::size_t size() const { return generators.size(); }
    int alexander(std::size_t i) const { return generators[i].alexander; }
    int maslov(std::size_t i) const { return generators[i].maslov; }
    int drop_b(const Arrow& a) const {
        return alexander(a.from) - alexander(a.to) + a.u_power;
    }

    std::optional<int> arrow_power(std::size_t from, std::size_t to) const {
        for (const auto& a : arrows)
            if (a.from == from && a.to == to) return a.u_power;
        return std::nullopt;
    }

    // Flip as a matrix on the generator space (slice-homogeneous by validation).
    BitMatrix flip_matrix() const {
        if (flip.kind == Flip::Kind::Unavailable)
            throw FlipUnavailable(name + ": flip data lost in reduction");
        if (flip.kind == Flip::Kind::Explicit) return flip.matrix;
        if (flip.kind == Flip::Kind::Identity) return BitMatrix::identity(size());
        BitMatrix m(size(), size());
        for (std::size_t i = 0; i < size(); ++i) m.set(flip.perm[i], i, true);
        return m;
    }
};

namespace detail {
inline void sort_arrows(std::vector<Arrow>& arrows) {
    std::sort(arrows.begin(), arrows.end(), [](const Arrow& a, const Arrow& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
}
}  // namespace detail

// Checks every model invariant; throws InvariantViolation naming the offender.
inline void validate(const CfkModel& m) {
    std::set<std::string> ids;
    for (const auto& g : m.generators)
        if (!ids.insert(g.id).second)
            throw InvariantViolation(m.name + ": duplicate generator id '" + g.id + "'");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& a : m.arrows) {
        if (a.from >= m.size() || a.to >= m.size())
            throw InvariantViolation(m.name + ": arrow endpoint out of range");
        const auto& gf = m.generators[a.from];
        const auto& gt = m.generators[a.to];
        if (!seen.insert({a.from, a.to}).second)
            throw InvariantViolation(m.name + ": duplicate arrow " + gf.id + "->" + gt.id);
        if (a.u_power < 0)
            throw InvariantViolation(m.name + ": arrow " + gf.id + "->" + gt.id + " has u_power < 0");
        if (m.drop_b(a) < 0)
            throw InvariantViolation(m.name + ": arrow " + gf.id + "->" + gt.id +
                                     " has negative vertical drop");
        if (gt.maslov != gf.maslov - 1 + 2 * a.u_power)
            throw InvariantViolation(m.name + ": Maslov constraint fails on arrow " + gf.id +
                                     "->" + gt.id);
    }
    // d^2 = 0. The Maslov constraint forces every two-arrow path x->z to carry
    // the same total u-power, so counting paths mod 2 suffices.
    std::vector<std::vector<std::size_t>> out(m.size());
    for (const auto& a : m.arrows) out[a.from].push_back(a.to);
    for (std::size_t x = 0; x < m.size(); ++x) {
        std::map<std::size_t, int> paths;
        for (auto y : out[x])
            for (auto z : out[y]) paths[z]++;
        for (auto [z, c] : paths)
            if (c % 2)
                throw InvariantViolation(m.name + ": d^2 != 0 from " + m.generators[x].id +
                                         " to " + m.generators[z].id);
    }
    switch (m.flip.kind) {
        case Flip::Kind::Identity:
        case Flip::Kind::Involution: {
            std::vector<std::size_t> perm = m.flip.perm;
            if (m.flip.kind == Flip::Kind::Identity) {
                perm.resize(m.size());
                for (std::size_t i = 0; i < m.size(); ++i) perm[i] = i;
            }
            if (perm.size() != m.size())
                throw InvariantViolation(m.name + ": flip map size mismatch");
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (perm[i] >= m.size() || perm[perm[i]] != i)
                    throw InvariantViolation(m.name + ": flip is not an involution at " +
                                             m.generators[i].id);
                if (m.alexander(perm[i]) != -m.alexander(i))
                    throw InvariantViolation(m.name + ": flip does not negate the grading of " +
                                             m.generators[i].id);
            }
            for (const auto& a : m.arrows) {
                auto p = m.arrow_power(perm[a.from], perm[a.to]);
                if (!p || *p != m.drop_b(a))
                    throw InvariantViolation(m.name + ": flip image of arrow " +
                                             m.generators[a.from].id + "->" +
                                             m.generators[a.to].id + " missing or wrong drops");
            }
            break;
        }
        case Flip::Kind::Explicit: {
            const BitMatrix& f = m.flip.matrix;
            if (f.rows() != m.size() || f.cols() != m.size())
                throw InvariantViolation(m.name + ": explicit flip must be " +
                                         std::to_string(m.size()) + " square");
            if (!is_invertible(f))
                throw InvariantViolation(m.name + ": explicit flip is singular");
            // slice homogeneity: F maps the grading-s span into the grading-(-s) span
            for (std::size_t j = 0; j < m.size(); ++j)
                for (std::size_t i = 0; i < m.size(); ++i)
                    if (f.get(i, j) && m.alexander(i) != -m.alexander(j))
                        throw InvariantViolation(m.name + ": explicit flip mixes gradings at " +
                                                 m.generators[j].id);
            // chain map from the horizontal complex (b = 0 arrows) to the
            // vertical one (a = 0 arrows): F d_h = d_v F
            BitMatrix dh(m.size(), m.size()), dv(m.size(), m.size());
            for (const auto& a : m.arrows) {
                if (m.drop_b(a) == 0) dh.set(a.to, a.from, true);
                if (a.u_power == 0) dv.set(a.to, a.from, true);
            }
            if (!(f.mul(dh) == dv.mul(f)))
                throw InvariantViolation(m.name + ": explicit flip is not a chain map");
            break;
        }
        case Flip::Kind::Unavailable:
            break;
    }
}

// Iterated cancellation of (0,0) arrows; deterministic (lexicographically first
// arrow each round). Preserves the filtered chain homotopy type.
inline CfkModel reduce_model(const CfkModel& m) {
    CfkModel cur = m;
    for (;;) {
        std::optional<std::size_t> pick;
        std::pair<std::string, std::string> best;
        for (std::size_t k = 0; k < cur.arrows.size(); ++k) {
            const auto& a = cur.arrows[k];
            if (a.u_power == 0 && cur.drop_b(a) == 0) {
                std::pair<std::string, std::string> key{cur.generators[a.from].id,
                                                        cur.generators[a.to].id};
                if (!pick || key < best) {
                    pick = k;
                    best = key;
                }
            }
        }
        if (!pick) return cur;
        const Arrow cancel = cur.arrows[*pick];
        std::size_t x = cancel.from, y = cancel.to;
        // composite arrows z->w for each z->y, x->w
        std::map<std::pair<std::size_t, std::size_t>, int> next;
        for (const auto& a : cur.arrows) {
            if ((a.from == x || a.from == y || a.to == x || a.to == y)) continue;
            next[{a.from, a.to}] = a.u_power;
        }
        for (const auto& in : cur.arrows) {
            if (in.to != y || in.from == x) continue;
            for (const auto& outw : cur.arrows) {
                if (outw.from != x || outw.to == y) continue;
                std::pair<std::size_t, std::size_t> key{in.from, outw.to};
                auto it = next.find(key);
                if (it != next.end())
                    next.erase(it);  // mod 2 cancellation
                else
                    next[key] = in.u_power + outw.u_power;
            }
        }
        std::vector<std::size_t> keep, remap(cur.size(), kNpos);
        for (std::size_t i = 0; i < cur.size(); ++i)
            if (i != x && i != y) {
                remap[i] = keep.size();
                keep.push_back(i);
            }
        CfkModel out;
        out.name = cur.name;
        for (auto i : keep) out.generators.push_back(cur.generators[i]);
        for (auto [key, a] : next)
            out.arrows.push_back(Arrow{remap[key.first], remap[key.second], a});
        detail::sort_arrows(out.arrows);
        // carry flip data through when the cancelled pair respects it
        out.flip = cur.flip;
        if (cur.flip.kind == Flip::Kind::Involution) {
            bool ok = (cur.flip.perm[x] == x || cur.flip.perm[x] == y) &&
                      (cur.flip.perm[y] == y || cur.flip.perm[y] == x);
            if (ok) {
                out.flip.perm.clear();
                for (auto i : keep) out.flip.perm.push_back(remap[cur.flip.perm[i]]);
                if (std::find(out.flip.perm.begin(), out.flip.perm.end(), kNpos) !=
                    out.flip.perm.end())
                    out.flip.kind = Flip::Kind::Unavailable;
            } else {
                out.flip.kind = Flip::Kind::Unavailable;
                out.flip.perm.clear();
            }
        } else if (cur.flip.kind == Flip::Kind::Explicit) {
            // explicit matrices do not restrict along cancellation in general
            out.flip.kind = Flip::Kind::Unavailable;
            out.flip.matrix = BitMatrix();
        }
        cur = std::move(out);
    }
}

// Dual model: reversed arrows, negated gradings; each arrow keeps its
// (u-power, drop) pair, which is what the grading constraints force.
inline CfkModel mirror(const CfkModel& m) {
    CfkModel out;
    out.name = m.name + "!";
    for (const auto& g : m.generators)
        out.generators.push_back(Generator{g.id, -g.alexander, -g.maslov});
    for (const auto& a : m.arrows) out.arrows.push_back(Arrow{a.to, a.from, a.u_power});
    detail::sort_arrows(out.arrows);
    out.flip = m.flip;
    if (m.flip.kind == Flip::Kind::Explicit)
        out.flip.matrix = inverse(m.flip.matrix).transpose();
    return out;
}

inline int genus(const CfkModel& m) {
    CfkModel r = reduce_model(m);
    if (r.size() == 0) throw EmptyComplex(m.name + ": reduction left nothing");
    int g = 0;
    for (const auto& gen : r.generators) g = std::max(g, std::abs(gen.alexander));
    return g;
}

// Count of reduced generators per grading; the associated graded homology.
inline std::map<int, std::size_t> hfk_ranks(const CfkModel& m) {
    CfkModel r = reduce_model(m);
    std::map<int, std::size_t> out;
    for (const auto& g : r.generators) out[g.alexander]++;
    return out;
}

inline std::size_t total_hfk_rank(const CfkModel& m) {
    return reduce_model(m).size();
}

// Differential of B (vertical arrows only), columns indexed by source.
inline BitMatrix b_differential(const CfkModel& m) {
    BitMatrix d(m.size(), m.size());
    for (const auto& a : m.arrows)
        if (a.u_power == 0) d.set(a.to, a.from, true);
    return d;
}

inline std::size_t hf_rank(const CfkModel& m) {
    return homology_rank(b_differential(m));
}

}  // namespace hfrank
