#include "topomodal/cli.hpp"
#include "topomodal/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace topomodal;
using io::json;

namespace
{

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector< std::string > args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return { code, out.str(), err.str() };
}

json run_json(std::vector< std::string > args, int expected)
{
    args.insert(args.begin(), "--json");
    const auto r = run(args);
    CHECK(r.code == expected);
    return json::parse(r.out);
}

const char* pseudoline = R"({"points":["l","m","r"],"opens":[[],["l"],["r"],["l","r"],["l","m","r"]]})";

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("valid with a space file")
    {
        const std::string path = "cli_pseudoline.json";
        std::ofstream{ path } << pseudoline;
        const auto r = run({ "valid", "--space", path, "-f", "Kur" });
        CHECK(r.code == cli::Refuted);
        CHECK(r.out.find("countermodel at point m") != std::string::npos);
        CHECK(r.out.find("p = {l}") != std::string::npos);
        std::remove(path.c_str());

        const auto j = run_json({ "valid", "--space", pseudoline, "-f", "Kur" }, cli::Refuted);
        CHECK(j["command"] == "valid");
        CHECK(j["verdict"] == "invalid");
        CHECK(j["witness"]["point"] == "m");
        CHECK(j["witness"]["valuation"]["p"] == json::array({ "l" }));
        CHECK(j["stats"]["spaces"] == 1);
        CHECK(j["stats"].contains("millis"));
        CHECK(run({ "valid", "--space", "sierpinski", "-f", "Kur" }).code == cli::Holds);
    }

    TEST_CASE("equiv")
    {
        const auto r = run({ "equiv", "-n", "4", "-f1", "Kur", "-f2", "KurIDiff" });
        CHECK(r.code == cli::Holds);
        CHECK(r.out.find("equal on 46 representatives") != std::string::npos);
        const auto j = run_json({ "equiv", "-n", "3", "--f1", "Kur", "--f2", "true" }, cli::Refuted);
        CHECK(is_homeomorphic(io::space_from_json(j["witness"]["space"]), FiniteSpace::pseudo_line()));
    }

    TEST_CASE("real eval")
    {
        const auto r = run({ "real", "eval", "-v", "p=(0,1) u (1,2)", "-f", "[d]p" });
        CHECK(r.code == cli::Holds);
        CHECK(r.out == "(0,2)\n");
        const auto j = run_json({ "real", "eval", "-v", "p=(0,1) u {2}", "-f", "<d>p" }, cli::Holds);
        CHECK(Region::parse(j["witness"]["extension"].get< std::string >()) == Region::parse("[0,1]"));
        CHECK(run({ "real", "eval", "-v", "p=(0,1)", "-f", "[i]p", "--point", "1" }).code == cli::Refuted);
        CHECK(run({ "real", "eval", "-v", "p=(0,1", "-f", "p" }).code == cli::UsageError);
    }

    TEST_CASE("parse and eval")
    {
        const auto j = run_json({ "parse", "-f", "[d]([i]p | [i]~p) -> ([d]p | [d]~p)" }, cli::Holds);
        CHECK(parse(j["witness"]["formula"].get< std::string >()) == builtin::kur());
        CHECK(run({ "parse", "-f", "p &" }).code == cli::UsageError);

        const std::string model = std::string(R"({"space":)") + pseudoline + R"(,"valuation":{"p":["l"]}})";
        const auto e = run_json({ "eval", "--model", model, "-f", "Kur" }, cli::Holds);
        CHECK(e["witness"]["extension"] == json::array({ "l", "r" }));
        CHECK(run({ "eval", "--model", model, "-f", "Kur", "--point", "m" }).code == cli::Refuted);
        const auto real = run({ "eval", "--model", R"j({"space":"R","valuation":{"p":"(0,1) u (1,2)"}})j", "-f", "[d]p" });
        CHECK(real.out == "(0,2)\n");
        CHECK(run({ "point-valid", "--space", "pseudoline", "--point", "l", "-f", "Kur" }).code == cli::Holds);
        CHECK(run({ "point-valid", "--space", "pseudoline", "--point", "m", "-f", "Kur" }).code == cli::Refuted);
    }

    TEST_CASE("enumerate and classify")
    {
        const auto j = run_json({ "enumerate", "-n", "4", "--mode", "labeled" }, cli::Holds);
        CHECK(j["witness"]["count"] == 355);
        const auto l = run_json({ "enumerate", "-n", "3", "--list" }, cli::Holds);
        REQUIRE(l["witness"]["spaces"].size() == 9);
        for (const auto& s : l["witness"]["spaces"])
            CHECK_NOTHROW((void)io::space_from_json(s["space"]));
        CHECK(run({ "enumerate", "-n", "9" }).code == cli::UsageError);

        const auto c = run({ "classify", "-n", "2", "-f", "Kur", "-f", "BoxKur" });
        CHECK(c.code == cli::Holds);
        CHECK(c.out.rfind("space_id,n,Kur,BoxKur,loc1comp,connected\n", 0) == 0);
        const auto cj = run_json({ "classify", "-n", "2", "-f", "Kur", "--format", "json" }, cli::Holds);
        CHECK(cj["witness"]["rows"].size() == 4);
    }

    TEST_CASE("verify")
    {
        CHECK(run({ "verify", "kur-theorem", "-n", "3" }).code == cli::Holds);
        const auto r = run({ "--jobs", "2", "verify", "l1c-lemma", "-n", "3" });
        CHECK(r.code == cli::Holds);
        CHECK(r.out.find("zero violations") != std::string::npos);
        CHECK(run({ "verify", "kur-theorem", "-n", "7" }).code == cli::UsageError);
    }

    TEST_CASE("morphisms")
    {
        const std::string map = R"({"from":"pseudoline","to":"sierpinski","map":{"l":"a","m":"b","r":"a"}})";
        CHECK(run({ "morphism", "analyze", "--map", map, "--subset", "b" }).code == cli::Holds);
        const std::string k = R"({"from":"discrete:2","to":"point","map":{"a":"a","b":"a"}})";
        const auto a = run_json({ "morphism", "analyze", "--map", k, "--subset", "a" }, cli::Refuted);
        CHECK(a["witness"]["fiber_witness"] == "a");
        const auto p = run_json({ "morphism", "preserve", "--map", k, "--valuation", R"({"p":[]})", "-f", "[!=]p" },
                                cli::Refuted);
        CHECK_FALSE(p["witness"]["sigma_morphism"].get< bool >());
        CHECK_FALSE(p["witness"]["mismatches"].empty());
        CHECK(run({ "morphism", "find", "--from", "sierpinski", "--to", "point" }).code == cli::Holds);
        CHECK(run({ "morphism", "find", "--from", "sierpinski", "--to", "point", "--subset", "a" }).code == cli::Refuted);
        CHECK(run({ "gg", "--from", "discrete:4", "--to", "discrete:3", "-k", "2" }).code == cli::Holds);
        const auto g = run_json({ "gg", "--from", "discrete:4", "--to", "discrete:3", "-k", "3" }, cli::Refuted);
        CHECK(g["witness"]["failing"] == json::array({ "a", "b", "c" }));
    }

    TEST_CASE("search transfer")
    {
        const auto j = run_json({ "search", "transfer", "-n", "2", "-f", "BoxKur", "--sigma", "[!=]p", "--sigma", "[i]p" },
                                cli::Holds);
        CHECK(j["witness"]["exploratory"] == true);
    }

    TEST_CASE("usage errors")
    {
        CHECK(run({}).code == cli::UsageError);
        CHECK(run({ "bogus" }).code == cli::UsageError);
        CHECK(run({ "valid", "--space", "pseudoline" }).code == cli::UsageError);
        CHECK(run({ "valid", "--space", "pseudoline", "-f", "p", "--frobnicate" }).code == cli::UsageError);
        CHECK(run({ "valid", "--space", "nowhere", "-f", "p" }).code == cli::UsageError);
        CHECK(run({ "--help" }).code == cli::Holds);
    }

    TEST_CASE("json formats round-trip")
    {
        const auto s = FiniteSpace::pseudo_line();
        CHECK(io::space_from_json(io::space_to_json(s)) == s);
        CHECK(io::space_from_json(json::parse(R"({"points":["a","b"],"subbasis":[["a"]]})")) == FiniteSpace::sierpinski());
        const FiniteValuation v{ { "p", s.subset({ "l", "r" }) } };
        CHECK(io::finite_valuation_from_json(s, io::finite_valuation_to_json(s, v)) == v);
        const PointMap f = PointMap::from_names(s, s, { { "l", "r" }, { "m", "m" }, { "r", "l" } });
        CHECK(io::map_from_json(io::map_to_json(f)).image() == f.image());
        CHECK_THROWS_AS((void)io::space_from_json(json::parse(R"({"points":["a"]})")), TopologyError);
        CHECK(io::named_space("discrete:3") == FiniteSpace::discrete(3));
        CHECK(io::named_space("indiscrete:2") == FiniteSpace::indiscrete(2));
    }
}
