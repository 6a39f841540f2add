#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "parse.hpp"
#include "rational.hpp"

namespace hfrank {

struct Check {
    std::string id;
    bool pass = false;
    std::string lhs, rhs;
    std::string context;
};

struct Verdict {
    std::string model;
    std::vector<Check> checks;

    bool overall() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    void add(const std::string& id, bool pass, const std::string& lhs, const std::string& rhs,
             const std::string& ctx = "") {
        checks.push_back({id, pass, lhs, rhs, ctx});
    }
    template <class A, class B>
    void add_eq(const std::string& id, A lhs, B rhs, const std::string& ctx = "") {
        add(id, static_cast<long long>(lhs) == static_cast<long long>(rhs), std::to_string(lhs),
            std::to_string(rhs), ctx);
    }
};

// Hedden's rank equality. When it holds, the reduced model can have no
// vertical or horizontal arrows at all; a survivor flags a reduction bug.
inline bool is_simple(const CfkModel& m) {
    if (hf_rank(m) != total_hfk_rank(m)) return false;
    CfkModel r = reduce_model(m);
    for (const auto& a : r.arrows) {
        if (a.u_power == 0)
            throw StructureContradiction(m.name + ": rank equality with a surviving vertical arrow");
        if (r.drop_b(a) == 0)
            throw StructureContradiction(m.name +
                                         ": rank equality with a surviving horizontal arrow");
    }
    return true;
}

inline bool ni_trivial(const CfkModel& m) { return genus(m) == 0; }

// genus 0 <=> rank equality; genus > 0 <=> strict inequality.
inline Verdict main_theorem_check(const CfkModel& m) {
    Verdict v;
    v.model = m.name;
    std::size_t hfk = total_hfk_rank(m), hf = hf_rank(m);
    int g = genus(m);
    if (g == 0)
        v.add("main_theorem", hfk == hf, std::to_string(hfk), std::to_string(hf), "genus 0");
    else
        v.add("main_theorem", hfk > hf, std::to_string(hfk), std::to_string(hf),
              "genus " + std::to_string(g));
    return v;
}

// Mapping cone route vs combinatorial route over coprime p <= pmax, q <= qmax,
// plus the closed-form y from the block machinery where blocks normalize.
inline Verdict cross_route_check(const CfkModel& m, int pmax, int qmax) {
    Verdict v;
    v.model = m.name;
    FourMaps fm;
    std::optional<BlockForms> blocks;
    bool have_maps = false;
    try {
        fm = build_four_maps(m);
        have_maps = true;
        v.add("fourmaps_valid", true, "ok", "ok");
        blocks = normalize_blocks(fm);
    } catch (const Error& e) {
        v.add("fourmaps_valid", false, e.what(), "ok");
    }
    for (int p = 1; p <= pmax; ++p)
        for (int q = 1; q <= qmax; ++q) {
            if (std::gcd(p, q) != 1) continue;
            std::string tag = std::to_string(p) + "/" + std::to_string(q);
            std::size_t y1 = hf_surgery_rank(m, SurgerySpec(p, q));
            if (!have_maps) continue;
            std::size_t y2 = assemble_and_rank(fm, SurgerySpec(p, q));
            v.add_eq("route_agreement " + tag, y1, y2);
            if (!blocks) continue;
            try {
                XZReport xz = xz_ranks(*blocks, SurgerySpec(p, q));
                v.add_eq("closed_form " + tag, y1, xz.y_value);
            } catch (const IdentityMismatch& e) {
                v.add("closed_form " + tag, false, e.what(), "");
            }
        }
    return v;
}

// The rank identities that hold for models with simple Floer homology.
inline Verdict simple_identities_check(const CfkModel& m, int nmax) {
    if (hf_rank(m) != total_hfk_rank(m))
        throw NotSimple(m.name + ": identities require simple Floer homology");
    Verdict v;
    v.model = m.name;
    FourMaps fm = build_four_maps(m);
    BlockForms bf = normalize_blocks(fm);
    std::size_t hinf = fm.triple.h_inf, h0 = fm.triple.h_zero;
    std::vector<std::size_t> h(static_cast<std::size_t>(nmax) + 2, 0);
    for (int n = 1; n <= nmax + 1; ++n)
        h[static_cast<std::size_t>(n)] = hf_surgery_rank(m, SurgerySpec(n, 1));
    v.add_eq("h2 = 2 h1 - h0", h[2], 2 * static_cast<long>(h[1]) - static_cast<long>(h0));
    std::vector<std::size_t> ztab;
    std::size_t x0 = rank(build_rank_matrix(0, bf.a, bf.b, bf.c, bf.d));
    auto zj = [&](int j) {
        while (ztab.size() <= static_cast<std::size_t>(j))
            ztab.push_back(rank(build_rank_matrix(static_cast<int>(ztab.size()), bf.n.transpose(),
                                                  bf.k.transpose(), bf.m.transpose(),
                                                  bf.l.transpose())));
        return ztab[static_cast<std::size_t>(j)];
    };
    for (int j = 1; j <= nmax; ++j)
        v.add_eq("h_j identity j=" + std::to_string(j), h[static_cast<std::size_t>(j)],
                 static_cast<long>(j) * static_cast<long>(hinf) + static_cast<long>(h0) -
                     2 * static_cast<long>(x0 + zj(j - 1)));
    for (int j = 1; j < nmax; ++j)
        v.add_eq("growth j=" + std::to_string(j),
                 h[static_cast<std::size_t>(j) + 1] - h[static_cast<std::size_t>(j)], hinf);
    return v;
}

// Everything we assert for one model file; exceptions become failing checks.
inline Verdict verify_model(const CfkModel& m, int pmax = 4, int qmax = 4) {
    Verdict v;
    v.model = m.name;
    try {
        validate(m);
        v.add("validate", true, "ok", "ok");
    } catch (const Error& e) {
        v.add("validate", false, e.what(), "ok");
        return v;
    }
    try {
        Verdict mt = main_theorem_check(m);
        v.checks.insert(v.checks.end(), mt.checks.begin(), mt.checks.end());
        // window stability and parity
        for (auto [p, q] : {std::pair<int, int>{1, 1}, {2, 3}, {5, 2}, {3, 4}}) {
            std::size_t base = build_truncated_cone(m, SurgerySpec(p, q), 1).assembled.homology();
            bool stable = true;
            for (int margin = 2; margin <= 4; ++margin)
                stable = stable &&
                         build_truncated_cone(m, SurgerySpec(p, q), margin).assembled.homology() ==
                             base;
            v.add("window_stability " + std::to_string(p) + "/" + std::to_string(q), stable,
                  std::to_string(base), "margins 1..4");
            v.add("parity " + std::to_string(p) + "/" + std::to_string(q),
                  (base % 2) == (static_cast<std::size_t>(p) % 2), std::to_string(base),
                  "p mod 2");
        }
        // mirror symmetry
        CfkModel mm = mirror(m);
        validate(mm);
        v.add_eq("mirror_hf", hf_rank(m), hf_rank(mm));
        auto hk = hfk_ranks(m), hkm = hfk_ranks(mm);
        bool sym = true;
        for (auto [s, r] : hk) sym = sym && hkm.count(-s) && hkm[-s] == r;
        v.add("mirror_hfk", sym && hk.size() == hkm.size(), "hfk(s)", "mirror hfk(-s)");
        Verdict cr = cross_route_check(m, pmax, qmax);
        v.checks.insert(v.checks.end(), cr.checks.begin(), cr.checks.end());
    } catch (const Error& e) {
        v.add("exception", false, e.what(), "");
    }
    return v;
}

// Runs the whole battery over every .json model in a directory; per-file
// errors become failing verdicts, the run itself never aborts.
inline std::vector<Verdict> corpus_run(const std::string& dir, int pmax = 4, int qmax = 4) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Verdict> out;
    for (const auto& f : files) {
        try {
            CfkModel m = load_model(f.string());
            out.push_back(verify_model(m, pmax, qmax));
        } catch (const Error& e) {
            Verdict v;
            v.model = f.filename().string();
            v.add("load", false, e.what(), "ok");
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace hfrank
