#include "topomodal/semantics.hpp"

#include "parallel.hpp"
#include "topomodal/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

namespace topomodal
{

FiniteValuation valuation_from_counter(const FiniteSpace& s, const std::set< std::string >& vars,
                                       std::uint64_t counter)
{
    FiniteValuation val;
    const std::size_t k = vars.size();
    std::size_t j = 0;
    for (const auto& v : vars) {
        PointSet set;
        for (PointIndex x = 0; x < s.size(); ++x)
            if ((counter >> (x * k + j)) & 1U)
                set.insert(x);
        val.emplace(v, set);
        ++j;
    }
    return val;
}

namespace
{

ValidityReport search_countermodel(const FiniteSpace& s, PointSet targets, const Formula& f,
                                   const ValidityOptions& opts)
{
    const std::set< std::string > names = vars(f);
    const std::size_t bits = s.size() * names.size();
    if (bits > opts.max_bits || bits >= 63)
        throw GuardError{ "validity check needs " + std::to_string(bits) + " valuation bits (" +
                          std::to_string(s.size()) + " points x " + std::to_string(names.size()) +
                          " variables); guard is " + std::to_string(opts.max_bits) };
    const std::uint64_t total = std::uint64_t{ 1 } << bits;
    const FiniteCarrier carrier{ s };

    auto fails = [&](std::uint64_t v) {
        return !(targets - eval(carrier, valuation_from_counter(s, names, v), f)).empty();
    };

    constexpr std::uint64_t none = std::numeric_limits< std::uint64_t >::max();
    std::uint64_t first_failure = none;
    if (opts.jobs <= 1 || total < 1024) {
        for (std::uint64_t v = 0; v < total; ++v)
            if (fails(v)) {
                first_failure = v;
                break;
            }
    } else {
        const std::uint64_t block = std::max< std::uint64_t >(64, total / (std::uint64_t{ opts.jobs } * 32));
        const std::size_t blocks = static_cast< std::size_t >((total + block - 1) / block);
        std::atomic< std::uint64_t > best{ none };
        detail::parallel_for(blocks, opts.jobs, [&](std::size_t b) {
            const std::uint64_t start = b * block;
            const std::uint64_t end = std::min(total, start + block);
            for (std::uint64_t v = start; v < end && v < best.load(std::memory_order_relaxed); ++v) {
                if (fails(v)) {
                    std::uint64_t cur = best.load();
                    while (v < cur && !best.compare_exchange_weak(cur, v)) {
                    }
                    return;
                }
            }
        });
        first_failure = best.load();
    }

    ValidityReport report;
    if (first_failure == none) {
        report.valid = true;
        report.valuations = total;
        return report;
    }
    report.valid = false;
    report.valuations = first_failure + 1;
    Countermodel cm;
    cm.counter = first_failure;
    cm.valuation = valuation_from_counter(s, names, first_failure);
    cm.extension = eval(carrier, cm.valuation, f);
    cm.point = (targets - cm.extension).front();
    report.countermodel = std::move(cm);
    return report;
}

} // namespace

ValidityReport valid_on_space(const FiniteSpace& s, const Formula& f, const ValidityOptions& opts)
{
    return search_countermodel(s, s.full(), f, opts);
}

ValidityReport point_validity(const FiniteSpace& s, PointIndex x, const Formula& f, const ValidityOptions& opts)
{
    if (x >= s.size())
        throw TopologyError{ "point index out of range" };
    return search_countermodel(s, PointSet::singleton(x), f, opts);
}

EquivResult equiv_classes_up_to(std::size_t n, const Formula& f, const Formula& g, const EquivOptions& opts)
{
    if (n > opts.max_size)
        throw GuardError{ "equivalence check up to " + std::to_string(n) + " points; guard is " +
                          std::to_string(opts.max_size) };
    EquivResult result;
    for (const auto& entry : catalog_up_to(n, opts.include_empty)) {
        const auto rf = valid_on_space(entry.space, f, opts.validity);
        const auto rg = valid_on_space(entry.space, g, opts.validity);
        ++result.spaces;
        result.valuations += rf.valuations + rg.valuations;
        if (rf.valid != rg.valid) {
            result.equal = false;
            result.witness = EquivWitness{ entry.id, entry.space, rf.valid, rg.valid };
            return result;
        }
    }
    return result;
}

} // namespace topomodal
