#include "topomodal/morphism.hpp"

#include <functional>

namespace topomodal
{

PointMap::PointMap(std::shared_ptr< const FiniteSpace > source, std::shared_ptr< const FiniteSpace > target,
                   std::vector< PointIndex > image)
    : source_{ std::move(source) }, target_{ std::move(target) }, image_{ std::move(image) }
{
    if (image_.size() != source_->size())
        throw TopologyError{ "point map must assign every source point" };
    for (auto y : image_)
        if (y >= target_->size())
            throw TopologyError{ "point map image outside the target space" };
}

PointMap::PointMap(const FiniteSpace& source, const FiniteSpace& target, std::vector< PointIndex > image)
    : PointMap{ std::make_shared< const FiniteSpace >(source), std::make_shared< const FiniteSpace >(target),
                std::move(image) }
{
}

PointMap PointMap::from_names(const FiniteSpace& source, const FiniteSpace& target,
                              const std::map< std::string, std::string >& assignment)
{
    std::vector< PointIndex > image(source.size());
    std::vector< bool > seen(source.size(), false);
    for (const auto& [from, to] : assignment) {
        const PointIndex x = source.index_of(from);
        image[x] = target.index_of(to);
        seen[x] = true;
    }
    for (PointIndex x = 0; x < source.size(); ++x)
        if (!seen[x])
            throw TopologyError{ "point map leaves '" + source.point(x) + "' unassigned" };
    return PointMap{ source, target, std::move(image) };
}

PointSet PointMap::image_of(PointSet a) const
{
    source_->check_subset(a);
    PointSet out;
    for (auto x : a.indices())
        out.insert(image_[x]);
    return out;
}

PointSet PointMap::preimage(PointSet b) const
{
    target_->check_subset(b);
    PointSet out;
    for (PointIndex x = 0; x < image_.size(); ++x)
        if (b.contains(image_[x]))
            out.insert(x);
    return out;
}

std::map< std::string, std::string > PointMap::as_names() const
{
    std::map< std::string, std::string > out;
    for (PointIndex x = 0; x < image_.size(); ++x)
        out.emplace(source_->point(x), target_->point(image_[x]));
    return out;
}

MorphismReport analyze_map(const PointMap& f, PointSet subset)
{
    const FiniteSpace& x = f.source();
    const FiniteSpace& y = f.target();
    y.check_subset(subset);

    // Opens are unions of minimal neighbourhoods, and both preimage and image
    // commute with unions, so testing the U_x suffices.
    MorphismReport r;
    r.continuous = true;
    for (PointIndex t = 0; t < y.size(); ++t) {
        if (!x.is_open(f.preimage(y.neighborhood(t)))) {
            r.continuous = false;
            r.continuity_witness = y.neighborhood(t);
            break;
        }
    }
    r.open = true;
    for (PointIndex s = 0; s < x.size(); ++s) {
        if (!y.is_open(f.image_of(x.neighborhood(s)))) {
            r.open = false;
            r.openness_witness = x.neighborhood(s);
            break;
        }
    }
    const PointSet hit = f.image_of(x.full());
    r.surjective = hit == y.full();
    if (!r.surjective)
        r.missed_point = (y.full() - hit).front();
    r.injective_on_subset = true;
    for (auto u : subset.indices()) {
        if (f.preimage(PointSet::singleton(u)).size() != 1) {
            r.injective_on_subset = false;
            r.fiber_witness = u;
            break;
        }
    }
    return r;
}

PointSet unique_points(const FiniteSpace& y, const FiniteValuation& val, const ClosureSet& sigma)
{
    for (const auto& phi : sigma)
        if (!in_interior_difference_fragment(phi))
            throw FragmentError{ "unique points are defined for interior/elsewhere formulas only; got " + render(phi) };
    const FiniteCarrier carrier{ y };
    PointSet out;
    for (const auto& phi : sigma) {
        const PointSet ext = eval(carrier, val, phi);
        if (ext.size() == 1)
            out = out | ext;
    }
    return out;
}

FiniteValuation pullback_valuation(const PointMap& f, const FiniteValuation& target_val)
{
    FiniteValuation out;
    for (const auto& [name, set] : target_val)
        out.emplace(name, f.preimage(set));
    return out;
}

PreservationReport verify_preservation(const PointMap& f, const FiniteValuation& target_val, const ClosureSet& sigma)
{
    PreservationReport r;
    r.unique = unique_points(f.target(), target_val, sigma);
    r.morphism = analyze_map(f, r.unique);
    r.sigma_morphism = r.morphism.is_u_morphism();

    const FiniteValuation source_val = pullback_valuation(f, target_val);
    const FiniteCarrier src{ f.source() };
    const FiniteCarrier dst{ f.target() };
    for (const auto& phi : sigma) {
        const PointSet here = eval(src, source_val, phi);
        const PointSet there = f.preimage(eval(dst, target_val, phi));
        if (here != there)
            r.mismatches.push_back({ phi, here, there });
    }
    return r;
}

std::vector< PointMap > find_U_morphisms(const FiniteSpace& x, const FiniteSpace& y, PointSet subset,
                                         const MorphismSearchOptions& opts)
{
    if (x.size() > opts.max_points)
        throw GuardError{ "morphism search from a " + std::to_string(x.size()) + "-point space; guard is " +
                          std::to_string(opts.max_points) };
    y.check_subset(subset);

    std::vector< PointMap > found;
    if (y.size() > x.size() || (x.size() > 0 && y.size() == 0))
        return found;

    auto source = std::make_shared< const FiniteSpace >(x);
    auto target = std::make_shared< const FiniteSpace >(y);
    const std::size_t n = x.size();
    std::vector< PointIndex > image(n);
    std::vector< std::size_t > fibre(y.size(), 0);
    std::size_t unhit = y.size();

    auto is_open_map = [&] {
        for (PointIndex s = 0; s < n; ++s) {
            PointSet img;
            for (auto t : x.neighborhood(s).indices())
                img.insert(image[t]);
            if (!y.is_open(img))
                return false;
        }
        return true;
    };

    std::function< void(std::size_t) > assign = [&](std::size_t pos) {
        if (found.size() >= opts.limit)
            return;
        if (pos == n) {
            if (unhit == 0 && is_open_map())
                found.emplace_back(source, target, image);
            return;
        }
        for (PointIndex t = 0; t < y.size(); ++t) {
            if (subset.contains(t) && fibre[t] > 0)
                continue;
            const std::size_t unhit_after = unhit - (fibre[t] == 0 ? 1 : 0);
            if (unhit_after > n - pos - 1)
                continue;
            // Continuity on finite spaces is monotonicity of the specialisation order.
            bool monotone = true;
            for (PointIndex s = 0; s < pos && monotone; ++s) {
                if (x.leq(s, pos) && !y.leq(image[s], t))
                    monotone = false;
                if (x.leq(pos, s) && !y.leq(t, image[s]))
                    monotone = false;
            }
            if (!monotone)
                continue;
            image[pos] = t;
            if (fibre[t]++ == 0)
                --unhit;
            assign(pos + 1);
            if (--fibre[t] == 0)
                ++unhit;
        }
    };
    assign(0);
    return found;
}

std::vector< PointSet > subsets_by_size(std::size_t n, std::size_t k)
{
    std::vector< PointSet > out;
    const std::size_t top = std::min(n, k);
    for (std::size_t size = 0; size <= top; ++size) {
        std::vector< PointIndex > pick(size);
        for (std::size_t i = 0; i < size; ++i)
            pick[i] = i;
        for (;;) {
            PointSet s;
            for (auto i : pick)
                s.insert(i);
            out.push_back(s);
            // Advance to the next combination in lexicographic order.
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1)
                --i;
            if (i == 0)
                break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

GgResult gg_check(const FiniteSpace& x, const FiniteSpace& y, std::size_t k, const MorphismSearchOptions& opts)
{
    if (x.size() > opts.max_points)
        throw GuardError{ "gg check from a " + std::to_string(x.size()) + "-point space; guard is " +
                          std::to_string(opts.max_points) };
    MorphismSearchOptions first = opts;
    first.limit = 1;
    GgResult r;
    for (auto u : subsets_by_size(y.size(), k)) {
        ++r.subsets_checked;
        if (find_U_morphisms(x, y, u, first).empty()) {
            r.holds = false;
            r.failing = u;
            return r;
        }
    }
    return r;
}

} // namespace topomodal
