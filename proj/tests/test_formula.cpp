#include "support/generators.hpp"

#include "topomodal/formula.hpp"

#include <doctest.h>

using namespace topomodal;

namespace
{

Formula p() { return Formula::var("p"); }
Formula q() { return Formula::var("q"); }
Formula box(Kind k, Formula f) { return Formula::unary(k, std::move(f)); }

} // namespace

TEST_SUITE("formula")
{
    TEST_CASE("atoms and constants")
    {
        CHECK(parse("p") == p());
        CHECK(parse("true") == Formula::top());
        CHECK(parse("false") == Formula::bot());
        CHECK(parse("x_1") == Formula::var("x_1"));
    }

    TEST_CASE("Kur parses to the expected tree")
    {
        const Formula kur = Formula::implies(
            box(Kind::DBox, Formula::disj(box(Kind::IBox, p()), box(Kind::IBox, Formula::neg(p())))),
            Formula::disj(box(Kind::DBox, p()), box(Kind::DBox, Formula::neg(p()))));
        CHECK(parse("[d]([i]p | [i]~p) -> ([d]p | [d]~p)") == kur);
        CHECK(builtin::kur() == kur);
        CHECK(parse("Kur") == kur);
        CHECK(render(kur) == "[d]([i]p | [i]~p) -> [d]p | [d]~p");
    }

    TEST_CASE("dual sugar is kept distinct")
    {
        const Formula unfolded = parse("~[d]~p");
        CHECK(unfolded == Formula::neg(box(Kind::DBox, Formula::neg(p()))));
        const Formula dia = parse("<d>p");
        CHECK(dia == box(Kind::DDia, p()));
        CHECK_FALSE(dia == unfolded);
        CHECK(render(dia) == "<d>p");
    }

    TEST_CASE("precedence and associativity")
    {
        CHECK(render(Formula::conj(p(), Formula::disj(q(), Formula::var("r")))) == "p & (q | r)");
        CHECK(parse("p -> q -> p") == Formula::implies(p(), Formula::implies(q(), p())));
        CHECK(parse("(p -> q) -> p") == Formula::implies(Formula::implies(p(), q()), p()));
        CHECK(parse("p & q | p") == Formula::disj(Formula::conj(p(), q()), p()));
        CHECK(parse("p | q & p") == Formula::disj(p(), Formula::conj(q(), p())));
        CHECK(parse("~p & q") == Formula::conj(Formula::neg(p()), q()));
        CHECK(parse("p & q & p") == Formula::conj(Formula::conj(p(), q()), p()));
        CHECK(render(parse("p & (q & p)")) == "p & (q & p)");
        CHECK(render(parse("[A](p -> q)")) == "[A](p -> q)");
    }

    TEST_CASE("all modalities")
    {
        const std::pair< const char*, Kind > table[] = {
            { "[d]", Kind::DBox },     { "<d>", Kind::DDia },      { "[i]", Kind::IBox }, { "<c>", Kind::CDia },
            { "[!=]", Kind::DiffBox }, { "<!=>", Kind::DiffDia }, { "[A]", Kind::All },  { "<E>", Kind::Exists },
        };
        for (const auto& [tok, kind] : table) {
            CAPTURE(tok);
            const Formula f = parse(std::string(tok) + "p");
            CHECK(f == box(kind, p()));
            CHECK(render(f) == std::string(tok) + "p");
        }
    }

    TEST_CASE("syntax errors carry position and expectations")
    {
        try {
            (void)parse("p & ");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.position() == 4);
            CHECK_FALSE(e.expected().empty());
        }
        CHECK_THROWS_AS((void)parse("(p"), ParseError);
        CHECK_THROWS_AS((void)parse("p q"), ParseError);
        CHECK_THROWS_AS((void)parse("[x]p"), ParseError);
        CHECK_THROWS_AS((void)parse("Nope"), ParseError);
        CHECK_THROWS_AS((void)parse(""), ParseError);
        CHECK_THROWS_AS((void)parse("P"), ParseError);
    }

    TEST_CASE("vars")
    {
        CHECK(vars(builtin::kur()) == std::set< std::string >{ "p" });
        CHECK(vars(builtin::kur_idiff()) == std::set< std::string >{ "p", "q" });
        CHECK(vars(Formula::top()).empty());
        CHECK(vars(parse("a & (b1 -> [A]a)")) == std::set< std::string >{ "a", "b1" });
    }

    TEST_CASE("built-ins")
    {
        CHECK(builtin::box_kur() == box(Kind::DBox, builtin::kur()));
        CHECK(parse("BoxKur") == builtin::box_kur());
        CHECK(parse("KurIDiff") == builtin::kur_idiff());
        CHECK(builtin::lookup("Missing") == nullptr);
        CHECK(parse(render(builtin::kur_idiff())) == builtin::kur_idiff());
        CHECK(in_interior_difference_fragment(builtin::kur_idiff()));
        CHECK_FALSE(in_interior_difference_fragment(builtin::kur()));
        CHECK(in_interior_difference_fragment(parse("[!=][i]p & <c>~p")));
    }

    TEST_CASE("closure sets")
    {
        const auto cp = closure_set({ p() });
        CHECK(cp.members() == std::set< Formula >{ p(), Formula::neg(p()) });

        const Formula dp = box(Kind::DiffBox, p());
        CHECK(closure_set({ dp }).members() == std::set< Formula >{ dp, Formula::neg(dp), p(), Formula::neg(p()) });

        const Formula ip = box(Kind::IBox, p());
        CHECK(closure_set({ ip }).members() == std::set< Formula >{ ip, Formula::neg(ip), p(), Formula::neg(p()) });

        const auto cn = closure_set({ Formula::neg(p()) });
        CHECK(cn.members() == std::set< Formula >{ p(), Formula::neg(p()) });
        for (const auto& f : closure_set({ parse("~~p") }))
            CHECK_FALSE((f.kind() == Kind::Not && f.child().kind() == Kind::Not && !(f == parse("~~p"))));
    }

    TEST_CASE("round trip and closure properties on random formulas")
    {
        gen::Rng rng{ 20240611 };
        const std::vector< std::string > vs{ "p", "q", "r_2" };
        for (int i = 0; i < 2000; ++i) {
            const Formula f = gen::formula(rng, 1 + gen::below(rng, 8), vs);
            const std::string text = render(f);
            CAPTURE(text);
            REQUIRE(parse(text) == f);

            std::set< Formula > gens{ f };
            if (gen::coin(rng))
                gens.insert(gen::formula(rng, 3, vs));
            const auto cl = closure_set(gens);
            CHECK(closure_set(cl.members()).members() == cl.members());
            std::set< Formula > subs;
            for (const auto& g : gens)
                for (const auto& s : subformulas(g))
                    subs.insert(s);
            CHECK(cl.size() <= 2 * subs.size());
            for (const auto& m : cl) {
                for (const auto& k : m.children())
                    CHECK(cl.contains(k));
                if (m.kind() != Kind::Not)
                    CHECK(cl.contains(Formula::neg(m)));
            }
        }
    }
}
