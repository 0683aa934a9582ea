#include "support/generators.hpp"
#include "support/oracles.hpp"

#include "topomodal/catalog.hpp"
#include "topomodal/morphism.hpp"

#include <doctest.h>

using namespace topomodal;

namespace
{

PointMap by_names(const FiniteSpace& x, const FiniteSpace& y, std::map< std::string, std::string > m)
{
    return PointMap::from_names(x, y, m);
}

FiniteSpace discrete_named(std::vector< std::string > names)
{
    std::vector< std::vector< std::string > > subbasis;
    for (const auto& n : names)
        subbasis.push_back({ n });
    return FiniteSpace::from_subbasis(std::move(names), subbasis);
}

/// Re-checks every witness a report carries against the raw map.
void check_witnesses(const PointMap& f, PointSet u, const MorphismReport& r)
{
    const auto& x = f.source();
    const auto& y = f.target();
    if (r.continuity_witness) {
        CHECK(y.is_open(*r.continuity_witness));
        CHECK_FALSE(x.is_open(f.preimage(*r.continuity_witness)));
    }
    if (r.openness_witness) {
        CHECK(x.is_open(*r.openness_witness));
        CHECK_FALSE(y.is_open(f.image_of(*r.openness_witness)));
    }
    if (r.missed_point)
        CHECK_FALSE(f.image_of(x.full()).contains(*r.missed_point));
    if (r.fiber_witness) {
        CHECK(u.contains(*r.fiber_witness));
        CHECK(f.preimage(PointSet::singleton(*r.fiber_witness)).size() != 1);
    }
    CHECK(r.continuous == !r.continuity_witness.has_value());
    CHECK(r.open == !r.openness_witness.has_value());
    CHECK(r.surjective == !r.missed_point.has_value());
    CHECK(r.injective_on_subset == !r.fiber_witness.has_value());
}

} // namespace

TEST_SUITE("morphism")
{
    TEST_CASE("analyze examples")
    {
        const auto sier = FiniteSpace::sierpinski();
        const auto id = by_names(sier, sier, { { "a", "a" }, { "b", "b" } });
        const auto r = analyze_map(id, sier.full());
        CHECK(r.is_u_morphism());

        const auto pt = FiniteSpace::discrete(1);
        const auto k = by_names(sier, pt, { { "a", "a" }, { "b", "a" } });
        const auto rk = analyze_map(k, pt.full());
        CHECK(rk.continuous);
        CHECK(rk.open);
        CHECK(rk.surjective);
        CHECK_FALSE(rk.injective_on_subset);
        REQUIRE(rk.fiber_witness);
        check_witnesses(k, pt.full(), rk);

        const auto pl = FiniteSpace::pseudo_line();
        const auto f = by_names(pl, sier, { { "l", "a" }, { "m", "b" }, { "r", "a" } });
        CHECK(analyze_map(f, sier.subset({ "b" })).is_u_morphism());

        const auto g = by_names(sier, sier, { { "a", "b" }, { "b", "a" } });
        const auto rg = analyze_map(g, {});
        CHECK_FALSE(rg.continuous);
        check_witnesses(g, {}, rg);

        CHECK_THROWS_AS((void)by_names(sier, pt, { { "a", "a" } }), TopologyError);
        CHECK_THROWS_AS((void)by_names(sier, pt, { { "a", "a" }, { "b", "zz" } }), TopologyError);
    }

    TEST_CASE("analysis agrees with the open-family oracle")
    {
        gen::Rng rng{ 59 };
        for (int i = 0; i < 400; ++i) {
            const auto x = gen::space(rng, 4);
            const auto y = gen::space(rng, 3);
            std::vector< PointIndex > img(x.size());
            for (auto& v : img)
                v = gen::below(rng, y.size());
            const PointMap f{ x, y, img };
            const PointSet u = gen::subset(rng, y);
            const auto r = analyze_map(f, u);
            const auto ox = oracle::opens_of(x), oy = oracle::opens_of(y);
            CHECK(r.continuous == oracle::continuous(ox, oy, img));
            CHECK(r.open == oracle::open_map(ox, oy, img));
            check_witnesses(f, u, r);
        }
    }

    TEST_CASE("unique points")
    {
        const auto y = discrete_named({ "a", "b", "c" });
        const FiniteValuation v{ { "p", y.subset({ "b", "c" }) } };
        const auto sigma = closure_set({ parse("[!=]p") });
        CHECK(unique_points(y, v, sigma) == y.subset({ "a" }));

        const FiniteValuation all{ { "p", y.full() } };
        CHECK(unique_points(y, all, closure_set({ parse("p") })).empty());

        const auto pt = FiniteSpace::discrete(1);
        for (auto bits : { 0U, 1U })
            CHECK(unique_points(pt, { { "p", PointSet{ bits } } }, closure_set({ parse("p") })) == pt.full());

        CHECK_THROWS_AS((void)unique_points(y, v, closure_set({ parse("[d]p") })), FragmentError);
        CHECK_THROWS_AS((void)unique_points(y, v, closure_set({ parse("[A]p") })), FragmentError);
    }

    TEST_CASE("pullback valuations")
    {
        const auto x2 = FiniteSpace::discrete(2), pt = FiniteSpace::discrete(1);
        const auto k = by_names(x2, pt, { { "a", "a" }, { "b", "a" } });
        CHECK(pullback_valuation(k, { { "p", pt.full() } }).at("p") == x2.full());

        const auto x = discrete_named({ "a", "b1", "b2", "c" });
        const auto y = discrete_named({ "a", "b", "c" });
        const auto f = by_names(x, y, { { "a", "a" }, { "b1", "b" }, { "b2", "b" }, { "c", "c" } });
        CHECK(pullback_valuation(f, { { "p", y.subset({ "b", "c" }) } }).at("p") == x.subset({ "b1", "b2", "c" }));

        const auto id = by_names(y, y, { { "a", "a" }, { "b", "b" }, { "c", "c" } });
        const FiniteValuation v{ { "p", y.subset({ "a" }) }, { "q", y.subset({ "b", "c" }) } };
        CHECK(pullback_valuation(id, v) == v);
    }

    TEST_CASE("preservation examples")
    {
        const auto x = discrete_named({ "a", "b1", "b2", "c" });
        const auto y = discrete_named({ "a", "b", "c" });
        const auto f = by_names(x, y, { { "a", "a" }, { "b1", "b" }, { "b2", "b" }, { "c", "c" } });
        const auto sigma = closure_set({ parse("[!=]p") });
        const auto r = verify_preservation(f, { { "p", y.subset({ "b", "c" }) } }, sigma);
        CHECK(r.unique == y.subset({ "a" }));
        CHECK(r.sigma_morphism);
        CHECK(r.mismatches.empty());

        const auto x2 = FiniteSpace::discrete(2), pt = FiniteSpace::discrete(1);
        const auto k = by_names(x2, pt, { { "a", "a" }, { "b", "a" } });
        const auto rk = verify_preservation(k, { { "p", PointSet{} } }, sigma);
        CHECK_FALSE(rk.sigma_morphism);
        bool saw = false;
        for (const auto& m : rk.mismatches)
            if (m.formula == parse("[!=]p")) {
                saw = true;
                CHECK(m.source_extension.empty());
                CHECK(m.pulled_back == x2.full());
            }
        CHECK(saw);

        gen::Rng rng{ 61 };
        for (int i = 0; i < 50; ++i) {
            const auto s = gen::space(rng, 4);
            std::vector< PointIndex > img(s.size());
            std::iota(img.begin(), img.end(), 0);
            const PointMap idm{ s, s, img };
            const auto v = gen::valuation(rng, s, { "p", "q" });
            const auto sg = closure_set({ parse("[!=]p & <c>q"), parse("[i](p -> q)") });
            CHECK(verify_preservation(idm, v, sg).mismatches.empty());
        }
    }

    TEST_CASE("morphism search")
    {
        const auto doubled = FiniteSpace::validate({ "a1", "a2", "b" }, { {}, { "a1" }, { "a2" }, { "a1", "a2" }, { "a1", "a2", "b" } });
        const auto sier = FiniteSpace::sierpinski();
        const auto maps = find_U_morphisms(doubled, sier, sier.subset({ "b" }));
        const auto collapse = std::map< std::string, std::string >{ { "a1", "a" }, { "a2", "a" }, { "b", "b" } };
        CHECK(std::any_of(maps.begin(), maps.end(), [&](const PointMap& m) { return m.as_names() == collapse; }));

        const auto pt = FiniteSpace::discrete(1);
        const auto to_pt = find_U_morphisms(sier, pt, {});
        REQUIRE(to_pt.size() == 1);
        CHECK(to_pt[0].image() == std::vector< PointIndex >{ 0, 0 });
        CHECK(find_U_morphisms(sier, pt, pt.full()).empty());
        CHECK_THROWS_AS((void)find_U_morphisms(FiniteSpace::discrete(7), pt, {}), GuardError);
    }

    TEST_CASE("morphism search matches brute force")
    {
        const auto cat = catalog_up_to(3);
        for (const auto& ex : cat)
            for (const auto& ey : cat) {
                const auto& x = ex.space;
                const auto& y = ey.space;
                const auto ox = oracle::opens_of(x), oy = oracle::opens_of(y);
                const PointSet u = y.size() > 1 ? PointSet::singleton(1) : PointSet{};
                std::vector< std::vector< PointIndex > > brute;
                std::vector< PointIndex > img(x.size(), 0);
                std::size_t total = 1;
                for (std::size_t i = 0; i < x.size(); ++i)
                    total *= y.size();
                for (std::size_t code = 0; code < total; ++code) {
                    std::size_t c = code;
                    for (std::size_t i = x.size(); i-- > 0;) {
                        img[i] = c % y.size();
                        c /= y.size();
                    }
                    std::vector< std::size_t > hits(y.size(), 0);
                    for (auto t : img)
                        ++hits[t];
                    bool ok = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h > 0; });
                    for (auto t : u.indices())
                        ok = ok && hits[t] == 1;
                    if (ok && oracle::continuous(ox, oy, img) && oracle::open_map(ox, oy, img))
                        brute.push_back(img);
                }
                std::vector< std::vector< PointIndex > > found;
                for (const auto& m : find_U_morphisms(x, y, u))
                    found.push_back(m.image());
                CHECK(found == brute);
            }
    }

    TEST_CASE("gg check")
    {
        const auto sier = FiniteSpace::sierpinski(), pt = FiniteSpace::discrete(1);
        CHECK(gg_check(sier, pt, 0).holds);
        const auto g1 = gg_check(sier, pt, 1);
        CHECK_FALSE(g1.holds);
        CHECK(*g1.failing == pt.full());
        const auto d4 = FiniteSpace::discrete(4), d3 = FiniteSpace::discrete(3);
        CHECK(gg_check(d4, d3, 2).holds);
        const auto g3 = gg_check(d4, d3, 3);
        CHECK_FALSE(g3.holds);
        CHECK(*g3.failing == d3.full());
    }

    TEST_CASE("subset order")
    {
        const auto subs = subsets_by_size(3, 2);
        const std::vector< std::uint64_t > expected{ 0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110 };
        REQUIRE(subs.size() == expected.size());
        for (std::size_t i = 0; i < subs.size(); ++i)
            CHECK(subs[i].bits() == expected[i]);
    }

    TEST_CASE("interior surjections preserve interior-only formulas")
    {
        const auto cat = catalog_up_to(3);
        const auto sigma = closure_set({ parse("[i]p"), parse("[i](p | [i]~p)"), parse("<c>[i]p") });
        std::size_t checked = 0;
        for (const auto& ex : cat)
            for (const auto& ey : cat)
                for (const auto& f : find_U_morphisms(ex.space, ey.space, {}))
                    for (std::uint64_t bits = 0; bits <= ey.space.full().bits(); ++bits) {
                        const FiniteValuation v{ { "p", PointSet{ bits } } };
                        const auto pulled = pullback_valuation(f, v);
                        for (const auto& phi : sigma) {
                            CHECK(eval(ex.space, pulled, phi) == f.preimage(eval(ey.space, v, phi)));
                            ++checked;
                        }
                    }
        CHECK(checked > 0);
    }
}
