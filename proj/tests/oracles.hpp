#ifndef EQUIZETA_TEST_ORACLES_HPP
#define EQUIZETA_TEST_ORACLES_HPP

// Brute-force reference implementations used only by the tests.  They work
// on explicit element lists and never share code with the library paths
// they check.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "equizeta/burnside.hpp"
#include "equizeta/torsion.hpp"

namespace equizeta::testing {

// Membership by exhaustive enumeration.
inline bool member_brute(const FiniteDiagonalGroup& g, const TorsionVector& x) {
    for (const auto& e : g.elements())
        if (e == x) return true;
    return false;
}

// Canonical representative of the coset x + H inside an element list.
inline TorsionVector coset_rep(const TorsionVector& x, const std::vector<TorsionVector>& h) {
    TorsionVector best = x + h.front();
    for (const auto& e : h) {
        TorsionVector c = x + e;
        if (c < best) best = c;
    }
    return best;
}

// Product of two transitive G-sets decomposed into orbit classes by direct
// enumeration: returns the multiset of (stabilizer, count).
inline std::map<FiniteDiagonalGroup, long> product_orbits_brute(const FiniteDiagonalGroup& g,
                                                                const FiniteDiagonalGroup& h,
                                                                const FiniteDiagonalGroup& k) {
    auto ge = g.elements();
    auto he = h.elements();
    auto ke = k.elements();
    using Pair = std::pair<TorsionVector, TorsionVector>;
    std::set<Pair> points;
    for (const auto& x : ge)
        for (const auto& y : ge)
            points.insert({coset_rep(x, he), coset_rep(y, ke)});
    std::map<FiniteDiagonalGroup, long> orbits;
    std::set<Pair> seen;
    for (const auto& p : points) {
        if (seen.count(p)) continue;
        std::vector<TorsionVector> stab;
        for (const auto& a : ge) {
            Pair moved{coset_rep(p.first + a, he), coset_rep(p.second + a, ke)};
            seen.insert(moved);
            if (moved == p) stab.push_back(a);
        }
        orbits[FiniteDiagonalGroup::canonicalize(g.dim(), stab)] += 1;
    }
    return orbits;
}

// Orbits of the coset space G/K under a subgroup H, as (stabilizer-in-H,
// count) pairs.
inline std::map<FiniteDiagonalGroup, long> res_orbits_brute(const FiniteDiagonalGroup& g,
                                                            const FiniteDiagonalGroup& h,
                                                            const FiniteDiagonalGroup& k) {
    auto ge = g.elements();
    auto he = h.elements();
    auto ke = k.elements();
    std::set<TorsionVector> cosets;
    for (const auto& x : ge) cosets.insert(coset_rep(x, ke));
    std::map<FiniteDiagonalGroup, long> orbits;
    std::set<TorsionVector> seen;
    for (const auto& c : cosets) {
        if (seen.count(c)) continue;
        std::vector<TorsionVector> stab;
        for (const auto& a : he) {
            TorsionVector moved = coset_rep(c + a, ke);
            seen.insert(moved);
            if (moved == c) stab.push_back(a);
        }
        orbits[FiniteDiagonalGroup::canonicalize(g.dim(), stab)] += 1;
    }
    return orbits;
}

// All subgroups of a small group, by closing every subset of elements.
inline std::vector<FiniteDiagonalGroup> all_subgroups(const FiniteDiagonalGroup& g) {
    auto ge = g.elements();
    std::set<FiniteDiagonalGroup> out;
    size_t m = ge.size();
    // Generate from pairs of elements; for small abelian groups every
    // subgroup is generated by at most two elements when the rank is <= 2,
    // and the groups used in tests satisfy that.
    out.insert(FiniteDiagonalGroup::trivial(g.dim()));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j)
            out.insert(FiniteDiagonalGroup::canonicalize(g.dim(), {ge[i], ge[j]}));
    return {out.begin(), out.end()};
}

// Random subgroup of (Z/N)^n.
inline FiniteDiagonalGroup random_subgroup(std::mt19937& rng, long n, long nmax) {
    std::uniform_int_distribution<long> den(1, nmax);
    std::uniform_int_distribution<int> cnt(0, 3);
    long N = den(rng);
    std::vector<TorsionVector> gens;
    int c = cnt(rng);
    for (int i = 0; i < c; ++i) {
        std::vector<mpq_class> coords;
        for (long j = 0; j < n; ++j) {
            std::uniform_int_distribution<long> num(0, N - 1);
            mpq_class q(num(rng), N);
            q.canonicalize();
            coords.push_back(q);
        }
        gens.emplace_back(std::move(coords));
    }
    return FiniteDiagonalGroup::canonicalize(n, gens);
}

// Multiset product of character lists, for the representation-ring
// homomorphism check.
using CharMultiset = std::map<std::vector<mpq_class>, long>;

inline CharMultiset to_multiset(
    const std::vector<std::pair<std::vector<mpq_class>, long>>& chars) {
    CharMultiset m;
    for (const auto& [c, v] : chars) m[c] += v;
    return m;
}

inline CharMultiset multiset_product(const CharMultiset& a, const CharMultiset& b) {
    CharMultiset out;
    for (const auto& [ca, va] : a)
        for (const auto& [cb, vb] : b) {
            std::vector<mpq_class> sum(ca.size());
            for (size_t i = 0; i < ca.size(); ++i) sum[i] = mod1(ca[i] + cb[i]);
            out[sum] += va * vb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

} // namespace equizeta::testing

#endif
