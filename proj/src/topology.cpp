#include "topomodal/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace topomodal
{

std::vector< PointIndex > PointSet::indices() const
{
    std::vector< PointIndex > out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
        out.push_back(static_cast< PointIndex >(std::countr_zero(b)));
    return out;
}

namespace
{

std::string show(const FiniteSpace& s, PointSet set)
{
    std::string out = "{";
    bool first = true;
    for (auto i : set.indices()) {
        out += first ? "" : ",";
        out += s.point(i);
        first = false;
    }
    return out + "}";
}

/// Sorts names and returns old-index -> new-index.
std::vector< PointIndex > sort_points(std::vector< std::string >& points)
{
    if (points.size() > max_space_points)
        throw TopologyError{ "finite spaces are limited to " + std::to_string(max_space_points) + " points" };
    std::vector< PointIndex > order(points.size());
    std::iota(order.begin(), order.end(), PointIndex{ 0 });
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return points[a] < points[b]; });
    std::vector< PointIndex > remap(points.size());
    std::vector< std::string > sorted;
    sorted.reserve(points.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        remap[order[pos]] = pos;
        if (!sorted.empty() && sorted.back() == points[order[pos]])
            throw TopologyError{ "duplicate point '" + points[order[pos]] + "'" };
        sorted.push_back(points[order[pos]]);
    }
    points = std::move(sorted);
    return remap;
}

PointSet remap_set(PointSet s, const std::vector< PointIndex >& remap)
{
    PointSet out;
    for (auto i : s.indices())
        out.insert(remap[i]);
    return out;
}

} // namespace

std::optional< PointIndex > FiniteSpace::find(std::string_view name) const
{
    auto it = std::lower_bound(points_.begin(), points_.end(), name);
    if (it == points_.end() || *it != name)
        return std::nullopt;
    return static_cast< PointIndex >(it - points_.begin());
}

PointIndex FiniteSpace::index_of(std::string_view name) const
{
    if (auto i = find(name))
        return *i;
    throw TopologyError{ "unknown point '" + std::string(name) + "'" };
}

PointSet FiniteSpace::subset(const std::vector< std::string >& names) const
{
    PointSet s;
    for (const auto& n : names)
        s.insert(index_of(n));
    return s;
}

std::vector< std::string > FiniteSpace::names(PointSet s) const
{
    check_subset(s);
    std::vector< std::string > out;
    for (auto i : s.indices())
        out.push_back(points_[i]);
    return out;
}

void FiniteSpace::check_subset(PointSet s) const
{
    if (!s.subset_of(full()))
        throw TopologyError{ "point set mentions points outside a space of size " + std::to_string(size()) };
}

PointSet FiniteSpace::above(PointIndex x) const
{
    PointSet out;
    for (PointIndex y = 0; y < size(); ++y)
        if (nbhd_[y].contains(x))
            out.insert(y);
    return out;
}

bool FiniteSpace::is_open(PointSet s) const
{
    check_subset(s);
    for (auto x : s.indices())
        if (!nbhd_[x].subset_of(s))
            return false;
    return true;
}

std::vector< PointSet > FiniteSpace::opens() const
{
    std::set< PointSet > acc{ PointSet{} };
    for (const auto& u : nbhd_) {
        std::vector< PointSet > grown;
        for (auto o : acc)
            grown.push_back(o | u);
        acc.insert(grown.begin(), grown.end());
    }
    return { acc.begin(), acc.end() };
}

FiniteSpace FiniteSpace::validate(std::vector< std::string > points,
                                  const std::vector< std::vector< std::string > >& opens)
{
    auto remap = sort_points(points);
    (void)remap;
    FiniteSpace probe{ points, std::vector< PointSet >(points.size()) };

    std::vector< PointSet > family;
    std::set< PointSet > members;
    for (const auto& o : opens) {
        PointSet s = probe.subset(o);
        if (members.insert(s).second)
            family.push_back(s);
    }

    const PointSet full = probe.full();
    if (!members.count(PointSet{}))
        throw TopologyError{ "not a topology: the empty set is missing" };
    if (!members.count(full))
        throw TopologyError{ "not a topology: the full set " + show(probe, full) + " is missing" };
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            if (!members.count(family[i] | family[j]))
                throw TopologyError{ "not a topology: the union of " + show(probe, family[i]) + " and " +
                                     show(probe, family[j]) + " is missing" };
            if (!members.count(family[i] & family[j]))
                throw TopologyError{ "not a topology: the intersection of " + show(probe, family[i]) + " and " +
                                     show(probe, family[j]) + " is missing" };
        }
    }

    std::vector< PointSet > nbhd(points.size(), full);
    for (auto o : family)
        for (auto x : o.indices())
            nbhd[x] = nbhd[x] & o;
    for (PointIndex x = 0; x < nbhd.size(); ++x)
        if (!members.count(nbhd[x]))
            throw TopologyError{ "not a topology: minimal neighbourhood of '" + points[x] + "' is not open" };
    return FiniteSpace{ std::move(points), std::move(nbhd) };
}

FiniteSpace FiniteSpace::from_subbasis(std::vector< std::string > points,
                                       const std::vector< std::vector< std::string > >& subbasis)
{
    sort_points(points);
    FiniteSpace probe{ points, std::vector< PointSet >(points.size()) };
    std::vector< PointSet > nbhd(points.size(), probe.full());
    for (const auto& member : subbasis) {
        PointSet s = probe.subset(member);
        for (auto x : s.indices())
            nbhd[x] = nbhd[x] & s;
    }
    return FiniteSpace{ std::move(points), std::move(nbhd) };
}

FiniteSpace FiniteSpace::from_neighborhoods(std::vector< std::string > points, std::vector< PointSet > neighborhoods)
{
    if (neighborhoods.size() != points.size())
        throw TopologyError{ "one minimal neighbourhood per point is required" };
    auto remap = sort_points(points);
    std::vector< PointSet > nbhd(points.size());
    const PointSet full = PointSet::first(points.size());
    for (PointIndex old = 0; old < remap.size(); ++old) {
        if (!neighborhoods[old].subset_of(full))
            throw TopologyError{ "neighbourhood mentions a foreign point" };
        nbhd[remap[old]] = remap_set(neighborhoods[old], remap);
    }
    for (PointIndex x = 0; x < nbhd.size(); ++x) {
        if (!nbhd[x].contains(x))
            throw TopologyError{ "neighbourhood of '" + points[x] + "' does not contain it" };
        for (auto y : nbhd[x].indices())
            if (!nbhd[y].subset_of(nbhd[x]))
                throw TopologyError{ "neighbourhood of '" + points[x] + "' is not open" };
    }
    return FiniteSpace{ std::move(points), std::move(nbhd) };
}

std::vector< std::string > default_point_names(std::size_t n)
{
    std::vector< std::string > out;
    out.reserve(n);
    if (n <= 26) {
        for (std::size_t i = 0; i < n; ++i)
            out.emplace_back(1, static_cast< char >('a' + i));
        return out;
    }
    const std::size_t width = std::to_string(n - 1).size();
    for (std::size_t i = 0; i < n; ++i) {
        std::string digits = std::to_string(i);
        out.push_back("x" + std::string(width - digits.size(), '0') + digits);
    }
    return out;
}

FiniteSpace FiniteSpace::discrete(std::size_t n)
{
    std::vector< PointSet > nbhd;
    for (std::size_t i = 0; i < n; ++i)
        nbhd.push_back(PointSet::singleton(i));
    return from_neighborhoods(default_point_names(n), std::move(nbhd));
}

FiniteSpace FiniteSpace::indiscrete(std::size_t n)
{
    return from_neighborhoods(default_point_names(n), std::vector< PointSet >(n, PointSet::first(n)));
}

FiniteSpace FiniteSpace::sierpinski()
{
    return validate({ "a", "b" }, { {}, { "a" }, { "a", "b" } });
}

FiniteSpace FiniteSpace::pseudo_line()
{
    return from_subbasis({ "l", "m", "r" }, { { "l" }, { "r" } });
}

// ---------------------------------------------------------------------------

Preorder::Preorder(std::vector< std::string > points, std::vector< PointSet > below)
    : points_{ std::move(points) }, below_{ std::move(below) }
{
    if (below_.size() != points_.size())
        throw TopologyError{ "preorder: one row per point is required" };
    const PointSet full = PointSet::first(points_.size());
    for (PointIndex y = 0; y < below_.size(); ++y) {
        if (!below_[y].subset_of(full))
            throw TopologyError{ "preorder: foreign point in relation" };
        if (!below_[y].contains(y))
            throw TopologyError{ "preorder: not reflexive at '" + points_[y] + "'" };
        for (auto x : below_[y].indices())
            if (!below_[x].subset_of(below_[y]))
                throw TopologyError{ "preorder: not transitive through '" + points_[x] + "' <= '" + points_[y] + "'" };
    }
}

Preorder to_preorder(const FiniteSpace& s)
{
    return Preorder{ s.points(), s.neighborhoods() };
}

FiniteSpace from_preorder(const Preorder& p)
{
    std::vector< PointSet > below;
    for (PointIndex y = 0; y < p.size(); ++y)
        below.push_back(p.below(y));
    return FiniteSpace::from_neighborhoods(p.points(), std::move(below));
}

// ---------------------------------------------------------------------------

TopoOp topo_op_from_char(char c)
{
    switch (c) {
    case 'd': return TopoOp::Derivative;
    case 'c': return TopoOp::Closure;
    case 'i': return TopoOp::Interior;
    case 'p': return TopoOp::PuncturedInterior;
    default: throw std::invalid_argument{ std::string("unknown operator '") + c + "' (expected d, c, i or p)" };
    }
}

char to_char(TopoOp op) noexcept
{
    switch (op) {
    case TopoOp::Derivative: return 'd';
    case TopoOp::Closure: return 'c';
    case TopoOp::Interior: return 'i';
    case TopoOp::PuncturedInterior: return 'p';
    }
    return '?';
}

PointSet apply(const FiniteSpace& s, TopoOp op, PointSet a)
{
    s.check_subset(a);
    PointSet out;
    for (PointIndex x = 0; x < s.size(); ++x) {
        const PointSet u = s.neighborhood(x);
        const PointSet punctured = u - PointSet::singleton(x);
        bool in = false;
        switch (op) {
        case TopoOp::Derivative: in = punctured.intersects(a); break;
        case TopoOp::Closure: in = a.contains(x) || punctured.intersects(a); break;
        case TopoOp::Interior: in = u.subset_of(a); break;
        case TopoOp::PuncturedInterior: in = punctured.subset_of(a); break;
        }
        if (in)
            out.insert(x);
    }
    return out;
}

bool is_connected(const FiniteSpace& s, PointSet c)
{
    s.check_subset(c);
    if (c.empty())
        return true;
    // x and y are linked when U_x and U_y meet; C is connected iff this graph is.
    PointSet comp = PointSet::singleton(c.front());
    for (;;) {
        PointSet reach;
        for (auto x : comp.indices())
            reach = reach | s.neighborhood(x);
        PointSet next = comp;
        for (auto y : (c - comp).indices())
            if (s.neighborhood(y).intersects(reach))
                next.insert(y);
        if (next == comp)
            break;
        comp = next;
    }
    return comp == c;
}

bool is_locally_1_component(const FiniteSpace& s, PointIndex x)
{
    if (x >= s.size())
        throw TopologyError{ "point index out of range" };
    // Every open neighbourhood of x contains U_x, so U_x is the only candidate that matters.
    return is_connected(s, s.neighborhood(x) - PointSet::singleton(x));
}

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

namespace
{

std::vector< std::size_t > refine_colors(const FiniteSpace& s)
{
    const std::size_t n = s.size();
    std::vector< PointSet > up(n);
    for (PointIndex x = 0; x < n; ++x)
        up[x] = s.above(x);

    using Signature = std::vector< std::size_t >;
    std::vector< std::size_t > color(n, 0);
    std::size_t classes = 0;
    bool first_round = true;
    for (;;) {
        std::vector< Signature > sig(n);
        for (PointIndex x = 0; x < n; ++x) {
            if (first_round) {
                sig[x] = { s.neighborhood(x).size(), up[x].size() };
                continue;
            }
            Signature down_colors, up_colors;
            for (auto y : (s.neighborhood(x) - PointSet::singleton(x)).indices())
                down_colors.push_back(color[y]);
            for (auto y : (up[x] - PointSet::singleton(x)).indices())
                up_colors.push_back(color[y]);
            std::sort(down_colors.begin(), down_colors.end());
            std::sort(up_colors.begin(), up_colors.end());
            sig[x].push_back(color[x]);
            sig[x].push_back(down_colors.size());
            sig[x].insert(sig[x].end(), down_colors.begin(), down_colors.end());
            sig[x].insert(sig[x].end(), up_colors.begin(), up_colors.end());
        }
        std::vector< Signature > distinct = sig;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (PointIndex x = 0; x < n; ++x)
            color[x] = static_cast< std::size_t >(std::lower_bound(distinct.begin(), distinct.end(), sig[x]) -
                                                  distinct.begin());
        if (!first_round && distinct.size() == classes)
            break;
        classes = distinct.size();
        first_round = false;
    }
    return color;
}

class Canonicalizer
{
public:
    explicit Canonicalizer(const FiniteSpace& s) : s_{ s }, n_{ s.size() }, color_{ refine_colors(s) }
    {
        std::vector< std::size_t > sorted = color_;
        std::sort(sorted.begin(), sorted.end());
        slot_color_ = sorted;

        // Twins: transposing them is an automorphism.
        twin_rep_.resize(n_);
        for (PointIndex x = 0; x < n_; ++x) {
            twin_rep_[x] = x;
            for (PointIndex y = 0; y < x; ++y) {
                if (twin_rep_[y] == y && are_twins(y, x)) {
                    twin_rep_[x] = y;
                    break;
                }
            }
        }
        current_.resize(n_);
        word_.resize(n_);
    }

    CanonicalForm run()
    {
        search(0, false);
        return CanonicalForm{ n_, best_code_, best_labeling_ };
    }

private:
    bool are_twins(PointIndex x, PointIndex y) const
    {
        if (color_[x] != color_[y] || s_.leq(x, y) != s_.leq(y, x))
            return false;
        for (PointIndex z = 0; z < n_; ++z) {
            if (z == x || z == y)
                continue;
            if (s_.leq(x, z) != s_.leq(y, z) || s_.leq(z, x) != s_.leq(z, y))
                return false;
        }
        return true;
    }

    std::uint64_t word_for(std::size_t pos, PointIndex x) const
    {
        std::uint64_t w = 0;
        for (std::size_t i = 0; i < pos; ++i) {
            PointIndex y = current_[i];
            w |= std::uint64_t{ s_.leq(y, x) } << (2 * i);
            w |= std::uint64_t{ s_.leq(x, y) } << (2 * i + 1);
        }
        return w;
    }

    void search(std::size_t pos, bool already_smaller)
    {
        if (pos == n_) {
            if (!have_best_ || already_smaller) {
                best_code_ = word_;
                best_labeling_ = current_;
                have_best_ = true;
            }
            return;
        }
        for (PointIndex x = 0; x < n_; ++x) {
            if (used_.contains(x) || color_[x] != slot_color_[pos])
                continue;
            // Only the lowest unused member of a twin class needs to be tried.
            bool skip = false;
            for (PointIndex t = 0; t < x; ++t)
                if (twin_rep_[t] == twin_rep_[x] && !used_.contains(t)) {
                    skip = true;
                    break;
                }
            if (skip)
                continue;

            const std::uint64_t w = word_for(pos, x);
            bool smaller = already_smaller;
            if (have_best_ && !already_smaller) {
                if (w > best_code_[pos])
                    continue;
                smaller = w < best_code_[pos];
            }
            word_[pos] = w;
            current_[pos] = x;
            used_.insert(x);
            search(pos + 1, smaller);
            used_.erase(x);
            // A leaf below a smaller prefix always becomes the new best, which shares our prefix.
            if (already_smaller)
                already_smaller = !std::equal(word_.begin(), word_.begin() + static_cast< std::ptrdiff_t >(pos),
                                              best_code_.begin());
        }
    }

    const FiniteSpace& s_;
    std::size_t n_;
    std::vector< std::size_t > color_;
    std::vector< std::size_t > slot_color_;
    std::vector< PointIndex > twin_rep_;
    std::vector< PointIndex > current_;
    std::vector< std::uint64_t > word_;
    PointSet used_;
    bool have_best_ = false;
    std::vector< std::uint64_t > best_code_;
    std::vector< PointIndex > best_labeling_;
};

} // namespace

CanonicalForm canonical_form(const FiniteSpace& s, std::size_t max_points)
{
    if (s.size() > max_points)
        throw GuardError{ "canonical form requested for " + std::to_string(s.size()) + " points; guard is " +
                          std::to_string(max_points) };
    if (s.size() > 32)
        throw GuardError{ "canonical forms are limited to 32 points" };
    return Canonicalizer{ s }.run();
}

std::optional< std::vector< PointIndex > > homeomorphism(const FiniteSpace& a, const FiniteSpace& b,
                                                         std::size_t max_points)
{
    if (a.size() != b.size())
        return std::nullopt;
    CanonicalForm fa = canonical_form(a, max_points);
    CanonicalForm fb = canonical_form(b, max_points);
    if (fa.code != fb.code)
        return std::nullopt;
    std::vector< PointIndex > witness(a.size());
    for (std::size_t pos = 0; pos < a.size(); ++pos)
        witness[fa.labeling[pos]] = fb.labeling[pos];
    return witness;
}

FiniteSpace space_from_canonical(const FiniteSpace& s, const CanonicalForm& form)
{
    const std::size_t n = form.size;
    std::vector< PointIndex > pos_of(n);
    for (std::size_t pos = 0; pos < n; ++pos)
        pos_of[form.labeling[pos]] = pos;
    std::vector< PointSet > nbhd(n);
    for (std::size_t pos = 0; pos < n; ++pos)
        for (auto x : s.neighborhood(form.labeling[pos]).indices())
            nbhd[pos].insert(pos_of[x]);
    return FiniteSpace::from_neighborhoods(default_point_names(n), std::move(nbhd));
}

} // namespace topomodal
