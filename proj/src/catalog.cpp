#include "topomodal/catalog.hpp"

#include "parallel.hpp"
#include "topomodal/morphism.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace topomodal
{

std::vector< std::vector< PointSet > > extend_preorder(const std::vector< PointSet >& below)
{
    const std::size_t m = below.size();
    std::vector< PointSet > above(m);
    for (PointIndex y = 0; y < m; ++y)
        for (auto x : below[y].indices())
            above[x].insert(y);

    std::vector< PointSet > downs, ups;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{ 1 } << m); ++bits) {
        const PointSet s{ bits };
        bool down = true, up = true;
        for (auto x : s.indices()) {
            down = down && below[x].subset_of(s);
            up = up && above[x].subset_of(s);
        }
        if (down)
            downs.push_back(s);
        if (up)
            ups.push_back(s);
    }

    // New point m sits above the down-set D and below the up-set E; transitivity
    // through m needs d <= e for every d in D and e in E.
    std::vector< std::vector< PointSet > > out;
    for (auto d : downs) {
        for (auto e : ups) {
            bool ok = true;
            for (auto t : e.indices())
                if (!d.subset_of(below[t])) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            std::vector< PointSet > next = below;
            for (auto t : e.indices())
                next[t].insert(m);
            next.push_back(d | PointSet::singleton(m));
            out.push_back(std::move(next));
        }
    }
    return out;
}

namespace
{

FiniteSpace space_from_below(const std::vector< PointSet >& below)
{
    return FiniteSpace::from_neighborhoods(default_point_names(below.size()), below);
}

std::vector< std::vector< PointSet > > labeled_preorders(std::size_t n)
{
    std::vector< std::vector< PointSet > > level{ {} };
    for (std::size_t m = 0; m < n; ++m) {
        std::vector< std::vector< PointSet > > next;
        for (const auto& p : level) {
            auto ext = extend_preorder(p);
            std::move(ext.begin(), ext.end(), std::back_inserter(next));
        }
        level = std::move(next);
    }
    return level;
}

/// Canonical representatives on m points, sorted by code.
std::vector< FiniteSpace > homeo_representatives(std::size_t n)
{
    std::vector< FiniteSpace > reps{ FiniteSpace{} };
    for (std::size_t m = 0; m < n; ++m) {
        // Deleting the last point of any (m+1)-point preorder leaves one
        // isomorphic to a representative, so extending representatives suffices.
        std::map< std::vector< std::uint64_t >, FiniteSpace > seen;
        for (const auto& rep : reps) {
            for (const auto& below : extend_preorder(rep.neighborhoods())) {
                FiniteSpace s = space_from_below(below);
                CanonicalForm form = canonical_form(s, max_space_points);
                if (!seen.count(form.code))
                    seen.emplace(form.code, space_from_canonical(s, form));
            }
        }
        reps.clear();
        for (auto& [code, s] : seen)
            reps.push_back(std::move(s));
    }
    return reps;
}

std::string entry_id(char prefix, std::size_t n, std::size_t k)
{
    return std::string(1, prefix) + std::to_string(n) + "." + std::to_string(k);
}

void check_size(std::size_t n, const CatalogOptions& opts)
{
    if (n > opts.max_size)
        throw GuardError{ "catalog up to " + std::to_string(n) + " points requested; guard is " +
                          std::to_string(opts.max_size) };
}

} // namespace

SpaceCatalog enumerate(std::size_t n, EnumerationMode mode, const EnumerateOptions& opts)
{
    const std::size_t guard = mode == EnumerationMode::Labeled ? opts.max_labeled : opts.max_homeo;
    if (n > guard)
        throw GuardError{ "enumeration of " + std::to_string(n) + "-point topologies; guard is " +
                          std::to_string(guard) };
    SpaceCatalog cat;
    cat.n = n;
    cat.mode = mode;
    if (mode == EnumerationMode::Labeled) {
        std::size_t k = 0;
        for (const auto& below : labeled_preorders(n))
            cat.entries.push_back({ entry_id('L', n, k++), space_from_below(below) });
    } else {
        std::size_t k = 0;
        for (auto& s : homeo_representatives(n))
            cat.entries.push_back({ entry_id('T', n, k++), std::move(s) });
    }
    return cat;
}

std::vector< CatalogEntry > catalog_up_to(std::size_t n, bool include_empty, const EnumerateOptions& opts)
{
    std::vector< CatalogEntry > out;
    for (std::size_t m = include_empty ? 0 : 1; m <= n; ++m) {
        auto cat = enumerate(m, EnumerationMode::Homeo, opts);
        std::move(cat.entries.begin(), cat.entries.end(), std::back_inserter(out));
    }
    return out;
}

std::vector< ClassificationRow > classify(std::size_t n, const std::vector< NamedFormula >& formulas,
                                          const CatalogOptions& opts)
{
    check_size(n, opts);
    auto entries = catalog_up_to(n, opts.include_empty);
    std::vector< ClassificationRow > rows(entries.size());
    detail::parallel_for(entries.size(), opts.jobs, [&](std::size_t i) {
        const FiniteSpace& s = entries[i].space;
        ClassificationRow row{ entries[i].id, s, {}, true, is_connected(s, s.full()) };
        for (const auto& nf : formulas)
            row.flags.push_back(valid_on_space(s, nf.formula, opts.validity).valid);
        for (PointIndex x = 0; x < s.size(); ++x)
            row.loc1comp = row.loc1comp && is_locally_1_component(s, x);
        rows[i] = std::move(row);
    });
    return rows;
}

std::string classification_csv(const std::vector< ClassificationRow >& rows, const std::vector< NamedFormula >& formulas)
{
    std::ostringstream os;
    os << "space_id,n";
    for (const auto& f : formulas)
        os << ',' << f.name;
    os << ",loc1comp,connected\n";
    for (const auto& r : rows) {
        os << r.id << ',' << r.space.size();
        for (bool b : r.flags)
            os << ',' << (b ? 1 : 0);
        os << ',' << (r.loc1comp ? 1 : 0) << ',' << (r.connected ? 1 : 0) << '\n';
    }
    return os.str();
}

KurTheoremReport verify_theorem_kur(std::size_t n, const CatalogOptions& opts)
{
    check_size(n, opts);
    auto entries = catalog_up_to(n, opts.include_empty);
    struct Outcome
    {
        bool kur, idiff;
        std::uint64_t valuations;
    };
    std::vector< Outcome > outcomes(entries.size());
    detail::parallel_for(entries.size(), opts.jobs, [&](std::size_t i) {
        auto a = valid_on_space(entries[i].space, builtin::kur(), opts.validity);
        auto b = valid_on_space(entries[i].space, builtin::kur_idiff(), opts.validity);
        outcomes[i] = { a.valid, b.valid, a.valuations + b.valuations };
    });
    KurTheoremReport report;
    report.spaces = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        report.valuations += outcomes[i].valuations;
        if (outcomes[i].kur != outcomes[i].idiff)
            report.discrepancies.push_back({ entries[i].id, entries[i].space, outcomes[i].kur, outcomes[i].idiff });
    }
    return report;
}

L1cLemmaReport verify_lemma_l1c(std::size_t n, const CatalogOptions& opts)
{
    check_size(n, opts);
    auto entries = catalog_up_to(n, opts.include_empty);
    std::vector< std::vector< L1cViolation > > found(entries.size());
    std::vector< std::size_t > checked(entries.size(), 0);
    detail::parallel_for(entries.size(), opts.jobs, [&](std::size_t i) {
        const FiniteSpace& s = entries[i].space;
        for (PointIndex x = 0; x < s.size(); ++x) {
            if (!is_locally_1_component(s, x))
                continue;
            ++checked[i];
            auto r = point_validity(s, x, builtin::kur(), opts.validity);
            if (!r.valid)
                found[i].push_back({ entries[i].id, s, x, *r.countermodel });
        }
    });
    L1cLemmaReport report;
    report.spaces = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        report.points_checked += checked[i];
        std::move(found[i].begin(), found[i].end(), std::back_inserter(report.violations));
    }
    return report;
}

TransferReport search_transfer_pairs(std::size_t n, const Formula& phi, const ClosureSet& sigma,
                                     const CatalogOptions& opts)
{
    check_size(n, opts);
    for (const auto& s : sigma)
        if (!in_interior_difference_fragment(s))
            throw FragmentError{ "Sigma must avoid [d], <d>, [A] and <E>; got " + render(s) };

    auto entries = catalog_up_to(n, opts.include_empty);
    std::vector< char > valid(entries.size(), 0);
    detail::parallel_for(entries.size(), opts.jobs, [&](std::size_t i) {
        valid[i] = valid_on_space(entries[i].space, phi, opts.validity).valid;
    });

    std::set< std::string > sigma_vars;
    for (const auto& s : sigma)
        for (const auto& v : vars(s))
            sigma_vars.insert(v);

    TransferReport report;
    std::vector< std::vector< TransferFinding > > per_source(entries.size());
    std::vector< std::size_t > scanned(entries.size(), 0);
    detail::parallel_for(entries.size(), opts.jobs, [&](std::size_t i) {
        const FiniteSpace& x = entries[i].space;
        for (std::size_t j = 0; j < entries.size(); ++j) {
            const FiniteSpace& y = entries[j].space;
            if (i == j || y.size() > x.size())
                continue;
            ++scanned[i];
            if (!valid[i] || valid[j])
                continue;
            const std::size_t bits = y.size() * sigma_vars.size();
            if (bits > opts.validity.max_bits)
                throw GuardError{ "transfer search needs " + std::to_string(bits) + " valuation bits" };
            bool every = true;
            const std::uint64_t total = std::uint64_t{ 1 } << bits;
            for (std::uint64_t v = 0; v < total && every; ++v) {
                auto val = valuation_from_counter(y, sigma_vars, v);
                PointSet u = unique_points(y, val, sigma);
                every = !find_U_morphisms(x, y, u, { x.size(), 1 }).empty();
            }
            if (every)
                per_source[i].push_back({ entries[i].id, entries[j].id, x, y, total });
        }
    });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        report.pairs_scanned += scanned[i];
        std::move(per_source[i].begin(), per_source[i].end(), std::back_inserter(report.findings));
    }
    return report;
}

} // namespace topomodal
