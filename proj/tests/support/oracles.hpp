#pragma once

// Brute-force reference implementations. Everything here works from explicit
// open families and never consults the minimal-neighbourhood representation.

#include "topomodal/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle
{

using Family = std::set< std::uint64_t >;

inline std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{ 0 } : (std::uint64_t{ 1 } << n) - 1; }

/// Adds the empty and full sets, then closes under pairwise union and intersection.
inline Family close_family(std::size_t n, Family f)
{
    f.insert(0);
    f.insert(full_mask(n));
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector< std::uint64_t > cur(f.begin(), f.end());
        for (auto a : cur)
            for (auto b : cur) {
                grew = f.insert(a | b).second || grew;
                grew = f.insert(a & b).second || grew;
            }
    }
    return f;
}

inline bool is_topology(std::size_t n, const Family& f)
{
    if (!f.count(0) || !f.count(full_mask(n)))
        return false;
    for (auto a : f)
        for (auto b : f)
            if (!f.count(a | b) || !f.count(a & b))
                return false;
    return true;
}

/// Every topology on n points, found by testing every family of subsets.
/// Feasible up to n = 4 (2^14 candidate families).
inline std::vector< Family > all_topologies(std::size_t n)
{
    const std::uint64_t full = full_mask(n);
    std::vector< std::uint64_t > middle;
    for (std::uint64_t s = 1; s < full; ++s)
        middle.push_back(s);
    std::vector< Family > out;
    if (n == 0) {
        out.push_back(Family{ 0 });
        return out;
    }
    for (std::uint64_t pick = 0; pick < (std::uint64_t{ 1 } << middle.size()); ++pick) {
        Family f{ 0, full };
        for (std::size_t i = 0; i < middle.size(); ++i)
            if ((pick >> i) & 1U)
                f.insert(middle[i]);
        if (is_topology(n, f))
            out.push_back(std::move(f));
    }
    return out;
}

inline std::uint64_t permute_set(std::uint64_t s, const std::vector< std::size_t >& perm)
{
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if ((s >> i) & 1U)
            out |= std::uint64_t{ 1 } << perm[i];
    return out;
}

/// Lexicographically least relabelling over all n! permutations.
inline Family canonical(std::size_t n, const Family& f)
{
    std::vector< std::size_t > perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Family best;
    bool first = true;
    do {
        Family g;
        for (auto s : f)
            g.insert(permute_set(s, perm));
        if (first || g < best) {
            best = std::move(g);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::size_t homeo_class_count(std::size_t n)
{
    std::set< Family > classes;
    for (const auto& f : all_topologies(n))
        classes.insert(canonical(n, f));
    return classes.size();
}

inline bool homeomorphic(std::size_t n, const Family& a, const Family& b)
{
    return a.size() == b.size() && canonical(n, a) == canonical(n, b);
}

inline Family opens_of(const topomodal::FiniteSpace& s)
{
    Family f;
    for (auto o : s.opens())
        f.insert(o.bits());
    return f;
}

/// Opens computed directly from the definition: down-closed under <=.
inline Family opens_by_definition(const topomodal::FiniteSpace& s)
{
    Family f;
    const std::size_t n = s.size();
    for (std::uint64_t m = 0; m <= full_mask(n); ++m) {
        bool open = true;
        for (std::size_t y = 0; y < n && open; ++y)
            if ((m >> y) & 1U)
                for (std::size_t x = 0; x < n && open; ++x)
                    if (s.leq(x, y) && !((m >> x) & 1U))
                        open = false;
        if (open)
            f.insert(m);
    }
    return f;
}

/// x is a limit point of A iff every open containing x meets A away from x.
inline std::uint64_t derivative(const Family& opens, std::size_t n, std::uint64_t a)
{
    std::uint64_t out = 0;
    for (std::size_t x = 0; x < n; ++x) {
        const std::uint64_t bit = std::uint64_t{ 1 } << x;
        bool limit = true;
        for (auto u : opens)
            if ((u & bit) && !(u & a & ~bit)) {
                limit = false;
                break;
            }
        if (limit)
            out |= bit;
    }
    return out;
}

/// Union of all opens inside A.
inline std::uint64_t interior(const Family& opens, std::uint64_t a)
{
    std::uint64_t out = 0;
    for (auto u : opens)
        if ((u & ~a) == 0)
            out |= u;
    return out;
}

/// x has an open neighbourhood inside A u {x}.
inline std::uint64_t punctured_interior(const Family& opens, std::size_t n, std::uint64_t a)
{
    std::uint64_t out = 0;
    for (std::size_t x = 0; x < n; ++x) {
        const std::uint64_t bit = std::uint64_t{ 1 } << x;
        for (auto u : opens)
            if ((u & bit) && (u & ~(a | bit)) == 0) {
                out |= bit;
                break;
            }
    }
    return out;
}

/// No two disjoint opens split C into two nonempty parts.
inline bool connected(const Family& opens, std::uint64_t c)
{
    for (auto u : opens)
        for (auto v : opens)
            if ((u & v) == 0 && (c & ~(u | v)) == 0 && (c & u) && (c & v))
                return false;
    return true;
}

/// Literal definition: every open U containing x contains an open N containing x
/// with N \ {x} connected.
inline bool locally_1_component(const Family& opens, std::size_t x)
{
    const std::uint64_t bit = std::uint64_t{ 1 } << x;
    for (auto u : opens) {
        if (!(u & bit))
            continue;
        bool found = false;
        for (auto nb : opens)
            if ((nb & bit) && (nb & ~u) == 0 && connected(opens, nb & ~bit)) {
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    return true;
}

/// Closure of a subbasis: finite intersections first, then unions.
inline Family topology_from_subbasis(std::size_t n, const std::vector< std::uint64_t >& subbasis)
{
    Family basis{ full_mask(n) };
    for (std::uint64_t pick = 1; pick < (std::uint64_t{ 1 } << subbasis.size()); ++pick) {
        std::uint64_t meet = full_mask(n);
        for (std::size_t i = 0; i < subbasis.size(); ++i)
            if ((pick >> i) & 1U)
                meet &= subbasis[i];
        basis.insert(meet);
    }
    Family out{ 0 };
    const std::vector< std::uint64_t > b(basis.begin(), basis.end());
    for (std::uint64_t pick = 0; pick < (std::uint64_t{ 1 } << b.size()); ++pick) {
        std::uint64_t join = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            if ((pick >> i) & 1U)
                join |= b[i];
        out.insert(join);
    }
    return out;
}

/// Image and preimage checks straight from the open families.
inline bool continuous(const Family& src, const Family& dst, const std::vector< std::size_t >& f)
{
    for (auto v : dst) {
        std::uint64_t pre = 0;
        for (std::size_t x = 0; x < f.size(); ++x)
            if ((v >> f[x]) & 1U)
                pre |= std::uint64_t{ 1 } << x;
        if (!src.count(pre))
            return false;
    }
    return true;
}

inline bool open_map(const Family& src, const Family& dst, const std::vector< std::size_t >& f)
{
    for (auto u : src) {
        std::uint64_t img = 0;
        for (std::size_t x = 0; x < f.size(); ++x)
            if ((u >> x) & 1U)
                img |= std::uint64_t{ 1 } << f[x];
        if (!dst.count(img))
            return false;
    }
    return true;
}

} // namespace oracle
