#include "topomodal/cli.hpp"

#include "topomodal/catalog.hpp"
#include "topomodal/formula.hpp"
#include "topomodal/io.hpp"
#include "topomodal/morphism.hpp"
#include "topomodal/realline.hpp"
#include "topomodal/semantics.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>

namespace topomodal::cli
{

namespace
{

using io::json;

/// What a command produced, before it is printed as text or as the JSON envelope.
struct Outcome
{
    int exit = Holds;
    std::string verdict;
    json witness;
    std::string text;
    std::size_t spaces = 0;
    std::uint64_t valuations = 0;
};

std::string set_text(const FiniteSpace& s, PointSet set)
{
    std::string out = "{";
    bool first = true;
    for (const auto& n : s.names(set)) {
        out += first ? "" : ",";
        out += n;
        first = false;
    }
    return out + "}";
}

std::string valuation_text(const FiniteSpace& s, const FiniteValuation& val)
{
    std::string out;
    for (const auto& [name, set] : val)
        out += "  " + name + " = " + set_text(s, set) + "\n";
    return out;
}

std::string compact(const json& j) { return j.dump(); }

FiniteSpace load_space(const std::string& arg) { return io::space_from_json(io::load_argument(arg)); }

PointSet parse_subset(const FiniteSpace& s, const std::string& csv)
{
    PointSet out;
    std::stringstream in{ csv };
    std::string name;
    while (std::getline(in, name, ','))
        if (!name.empty())
            out.insert(s.index_of(name));
    return out;
}

json countermodel_json(const FiniteSpace& s, const Countermodel& cm)
{
    return json{ { "valuation", io::finite_valuation_to_json(s, cm.valuation) },
                 { "point", s.point(cm.point) },
                 { "extension", io::point_set_to_json(s, cm.extension) } };
}

Outcome validity_outcome(const FiniteSpace& s, const ValidityReport& r, const std::string& what)
{
    Outcome o;
    o.spaces = 1;
    o.valuations = r.valuations;
    if (r.valid) {
        o.verdict = "valid";
        o.text = "valid: " + what + " (" + std::to_string(r.valuations) + " valuations)\n";
        return o;
    }
    const auto& cm = *r.countermodel;
    o.exit = Refuted;
    o.verdict = "invalid";
    o.witness = countermodel_json(s, cm);
    o.text = "invalid: " + what + "\ncountermodel at point " + s.point(cm.point) + "\n" + valuation_text(s, cm.valuation) +
             "  extension = " + set_text(s, cm.extension) + "\n";
    return o;
}

std::string morphism_report_text(const PointMap& f, const MorphismReport& r)
{
    const auto& x = f.source();
    const auto& y = f.target();
    auto flag = [](bool b) { return b ? "yes" : "no"; };
    std::string out;
    out += std::string("continuous: ") + flag(r.continuous);
    if (r.continuity_witness)
        out += "  (preimage of " + set_text(y, *r.continuity_witness) + " is not open)";
    out += std::string("\nopen:       ") + flag(r.open);
    if (r.openness_witness)
        out += "  (image of " + set_text(x, *r.openness_witness) + " is not open)";
    out += std::string("\nsurjective: ") + flag(r.surjective);
    if (r.missed_point)
        out += "  (" + y.point(*r.missed_point) + " is not hit)";
    out += std::string("\ninjective on subset: ") + flag(r.injective_on_subset);
    if (r.fiber_witness)
        out += "  (fibre of " + y.point(*r.fiber_witness) + " has " +
               std::to_string(f.preimage(PointSet::singleton(*r.fiber_witness)).size()) + " points)";
    return out + "\n";
}

json morphism_report_json(const PointMap& f, const MorphismReport& r)
{
    json j{ { "continuous", r.continuous },
            { "open", r.open },
            { "surjective", r.surjective },
            { "injective_on_subset", r.injective_on_subset } };
    if (r.continuity_witness)
        j["continuity_witness"] = io::point_set_to_json(f.target(), *r.continuity_witness);
    if (r.openness_witness)
        j["openness_witness"] = io::point_set_to_json(f.source(), *r.openness_witness);
    if (r.missed_point)
        j["missed_point"] = f.target().point(*r.missed_point);
    if (r.fiber_witness)
        j["fiber_witness"] = f.target().point(*r.fiber_witness);
    return j;
}

std::string map_text(const PointMap& f)
{
    std::string out;
    for (const auto& [a, b] : f.as_names())
        out += (out.empty() ? "" : ", ") + a + "->" + b;
    return out;
}

/// CLI11 short options are single characters; accept -f1 / -f2 as spelled in the docs.
std::vector< std::string > normalize_args(const std::vector< std::string >& args)
{
    std::vector< std::string > out;
    for (const auto& a : args) {
        if (a == "-f1" || a == "-f2")
            out.push_back("-" + a);
        else
            out.push_back(a);
    }
    return out;
}

} // namespace

int run(const std::vector< std::string >& raw_args, std::ostream& out, std::ostream& err)
{
    CLI::App app{ "Derivative-based topological modal logic workbench", "topomodal" };
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    unsigned jobs = 1;
    unsigned max_bits = 24;
    app.add_flag("--json", as_json, "Machine-readable JSON envelope");
    app.add_option("--jobs", jobs, "Worker threads for exhaustive searches")->check(CLI::Range(1U, 256U));
    app.add_option("--max-bits", max_bits, "Guard on points x variables per validity check");

    std::function< Outcome() > action;
    std::string command;
    auto bind = [&](CLI::App* sub, std::string name, std::function< Outcome() > fn) {
        sub->callback([&, name = std::move(name), fn = std::move(fn)] {
            command = name;
            action = fn;
        });
    };
    auto validity = [&] { return ValidityOptions{ max_bits, jobs }; };
    auto catalog_opts = [&](std::size_t max_size, bool include_empty) {
        CatalogOptions c;
        c.max_size = max_size;
        c.include_empty = include_empty;
        c.validity = ValidityOptions{ max_bits, 1 };
        c.jobs = jobs;
        return c;
    };

    // parse
    std::string formula_text;
    auto* parse_cmd = app.add_subcommand("parse", "Parse and re-render a formula");
    parse_cmd->add_option("-f,--formula", formula_text, "Formula text")->required();
    bind(parse_cmd, "parse", [&] {
        Formula f = parse(formula_text);
        Outcome o;
        o.verdict = "ok";
        std::vector< std::string > names;
        for (const auto& v : vars(f))
            names.push_back(v);
        o.witness = json{ { "formula", render(f) }, { "vars", names }, { "depth", f.depth() } };
        o.text = render(f) + "\n";
        return o;
    });

    // eval
    std::string model_arg, point_arg;
    auto* eval_cmd = app.add_subcommand("eval", "Extension of a formula in a model file");
    eval_cmd->add_option("--model", model_arg, "Model JSON (file or inline)")->required();
    eval_cmd->add_option("-f,--formula", formula_text, "Formula text")->required();
    eval_cmd->add_option("--point", point_arg, "Report membership of this point instead");
    bind(eval_cmd, "eval", [&] {
        Formula f = parse(formula_text);
        Outcome o;
        auto model = io::model_from_json(io::load_argument(model_arg));
        if (auto* fm = std::get_if< io::FiniteModel >(&model)) {
            PointSet ext = eval(fm->space, fm->valuation, f);
            o.spaces = 1;
            o.witness = json{ { "extension", io::point_set_to_json(fm->space, ext) } };
            o.text = set_text(fm->space, ext) + "\n";
            o.verdict = "ok";
            if (!point_arg.empty()) {
                const bool in = ext.contains(fm->space.index_of(point_arg));
                o.verdict = in ? "true" : "false";
                o.exit = in ? Holds : Refuted;
                o.text = (in ? "true\n" : "false\n");
            }
        } else {
            const auto& rm = std::get< io::RealModel >(model);
            Region ext = eval(rm.valuation, f);
            o.witness = json{ { "extension", ext.str() } };
            o.text = ext.str() + "\n";
            o.verdict = "ok";
            if (!point_arg.empty()) {
                const bool in = ext.contains(parse_rat(point_arg));
                o.verdict = in ? "true" : "false";
                o.exit = in ? Holds : Refuted;
                o.text = (in ? "true\n" : "false\n");
            }
        }
        return o;
    });

    // valid
    std::string space_arg;
    auto* valid_cmd = app.add_subcommand("valid", "Decide validity of a formula on a finite space");
    valid_cmd->add_option("--space", space_arg, "Space JSON (file, inline, or a named space)")->required();
    valid_cmd->add_option("-f,--formula", formula_text, "Formula text")->required();
    bind(valid_cmd, "valid", [&] {
        FiniteSpace s = load_space(space_arg);
        Formula f = parse(formula_text);
        return validity_outcome(s, valid_on_space(s, f, validity()), render(f));
    });

    // point-valid
    auto* pvalid_cmd = app.add_subcommand("point-valid", "Decide truth at one point under every valuation");
    pvalid_cmd->add_option("--space", space_arg, "Space JSON (file, inline, or a named space)")->required();
    pvalid_cmd->add_option("--point", point_arg, "Point name")->required();
    pvalid_cmd->add_option("-f,--formula", formula_text, "Formula text")->required();
    bind(pvalid_cmd, "point-valid", [&] {
        FiniteSpace s = load_space(space_arg);
        Formula f = parse(formula_text);
        return validity_outcome(s, point_validity(s, s.index_of(point_arg), f, validity()),
                                render(f) + " at " + point_arg);
    });

    // equiv
    std::size_t n = 0;
    std::size_t max_size = 5;
    bool include_empty = false;
    std::string f1_text, f2_text;
    auto* equiv_cmd = app.add_subcommand("equiv", "Compare the classes of finite spaces two formulas define");
    equiv_cmd->add_option("-n", n, "Largest space size")->required();
    equiv_cmd->add_option("--f1", f1_text, "First formula (also -f1)")->required();
    equiv_cmd->add_option("--f2", f2_text, "Second formula (also -f2)")->required();
    equiv_cmd->add_flag("--include-empty", include_empty, "Also check the empty space");
    equiv_cmd->add_option("--max-size", max_size, "Guard on n");
    bind(equiv_cmd, "equiv", [&] {
        EquivOptions eo;
        eo.max_size = max_size;
        eo.include_empty = include_empty;
        eo.validity = validity();
        auto r = equiv_classes_up_to(n, parse(f1_text), parse(f2_text), eo);
        Outcome o;
        o.spaces = r.spaces;
        o.valuations = r.valuations;
        if (r.equal) {
            o.verdict = "equal";
            o.text = "equal on " + std::to_string(r.spaces) + " representatives (verified on all finite spaces up to " +
                     std::to_string(n) + " points)\n";
        } else {
            const auto& w = *r.witness;
            o.exit = Refuted;
            o.verdict = "different";
            o.witness = json{ { "id", w.id },
                              { "space", io::space_to_json(w.space) },
                              { "f1_valid", w.first_valid },
                              { "f2_valid", w.second_valid } };
            o.text = "different on " + w.id + " " + compact(io::space_to_json(w.space)) +
                     ": f1 " + (w.first_valid ? "valid" : "invalid") + ", f2 " + (w.second_valid ? "valid" : "invalid") +
                     "\n";
        }
        return o;
    });

    // enumerate
    std::string mode_text = "homeo";
    bool list = false;
    std::size_t max_labeled = 5, max_homeo = 6;
    auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate finite topologies");
    enum_cmd->add_option("-n", n, "Number of points")->required();
    enum_cmd->add_option("--mode", mode_text, "labeled or homeo")->check(CLI::IsMember({ "labeled", "homeo" }));
    enum_cmd->add_flag("--list", list, "Print every space");
    enum_cmd->add_option("--max-labeled", max_labeled, "Guard for labeled mode");
    enum_cmd->add_option("--max-homeo", max_homeo, "Guard for homeo mode");
    bind(enum_cmd, "enumerate", [&] {
        auto mode = mode_text == "labeled" ? EnumerationMode::Labeled : EnumerationMode::Homeo;
        auto cat = enumerate(n, mode, { max_labeled, max_homeo });
        Outcome o;
        o.verdict = "ok";
        o.spaces = cat.size();
        json spaces = json::array();
        std::string lines;
        for (const auto& e : cat.entries) {
            json sj = io::space_to_json(e.space);
            spaces.push_back(json{ { "id", e.id }, { "space", sj } });
            lines += e.id + " " + compact(sj) + "\n";
        }
        o.witness = json{ { "n", n }, { "mode", mode_text }, { "count", cat.size() } };
        if (list)
            o.witness["spaces"] = spaces;
        o.text = std::to_string(cat.size()) + " " + (mode == EnumerationMode::Labeled ? "labeled topologies" : "homeomorphism classes") +
                 " on " + std::to_string(n) + " points\n" + (list ? lines : "");
        return o;
    });

    // classify
    std::vector< std::string > formula_list;
    std::string format = "csv";
    auto* classify_cmd = app.add_subcommand("classify", "Validity table over the catalog");
    classify_cmd->add_option("-n", n, "Largest space size")->required();
    classify_cmd->add_option("-f,--formula", formula_list, "Formulas (repeatable)")->required();
    classify_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({ "csv", "json" }));
    classify_cmd->add_flag("--include-empty", include_empty, "Also classify the empty space");
    classify_cmd->add_option("--max-size", max_size, "Guard on n");
    bind(classify_cmd, "classify", [&] {
        std::vector< NamedFormula > fs;
        for (const auto& t : formula_list)
            fs.push_back({ t, parse(t) });
        auto rows = classify(n, fs, catalog_opts(max_size, include_empty));
        Outcome o;
        o.verdict = "ok";
        o.spaces = rows.size();
        json jr = json::array();
        for (const auto& r : rows) {
            json flags = json::object();
            for (std::size_t i = 0; i < fs.size(); ++i)
                flags[fs[i].name] = static_cast< bool >(r.flags[i]);
            jr.push_back(json{ { "space_id", r.id },
                               { "n", r.space.size() },
                               { "space", io::space_to_json(r.space) },
                               { "flags", flags },
                               { "loc1comp", r.loc1comp },
                               { "connected", r.connected } });
        }
        o.witness = json{ { "rows", jr } };
        o.text = format == "json" ? jr.dump(2) + "\n" : classification_csv(rows, fs);
        return o;
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Exhaustive checks over the finite catalog");
    verify_cmd->require_subcommand(1);
    auto* kur_cmd = verify_cmd->add_subcommand("kur-theorem", "Kur and KurIDiff define the same finite spaces");
    kur_cmd->add_option("-n", n, "Largest space size")->required();
    kur_cmd->add_option("--max-size", max_size, "Guard on n");
    bind(kur_cmd, "verify kur-theorem", [&] {
        auto r = verify_theorem_kur(n, catalog_opts(max_size, false));
        Outcome o;
        o.spaces = r.spaces;
        o.valuations = r.valuations;
        if (r.holds()) {
            o.verdict = "holds";
            o.text = "zero discrepancies over " + std::to_string(r.spaces) + " representatives (verified on all finite spaces up to " +
                     std::to_string(n) + " points)\n";
            return o;
        }
        o.exit = Refuted;
        o.verdict = "fails";
        json list = json::array();
        for (const auto& d : r.discrepancies) {
            list.push_back(json{ { "id", d.id }, { "space", io::space_to_json(d.space) }, { "kur", d.kur }, { "kur_idiff", d.kur_idiff } });
            o.text += "discrepancy on " + d.id + ": Kur " + (d.kur ? "valid" : "invalid") + ", KurIDiff " +
                      (d.kur_idiff ? "valid" : "invalid") + "\n";
        }
        o.witness = list;
        return o;
    });
    auto* l1c_cmd = verify_cmd->add_subcommand("l1c-lemma", "Locally 1-component points satisfy Kur");
    l1c_cmd->add_option("-n", n, "Largest space size")->required();
    l1c_cmd->add_option("--max-size", max_size, "Guard on n");
    bind(l1c_cmd, "verify l1c-lemma", [&] {
        auto r = verify_lemma_l1c(n, catalog_opts(max_size, false));
        Outcome o;
        o.spaces = r.spaces;
        if (r.holds()) {
            o.verdict = "holds";
            o.text = "zero violations: " + std::to_string(r.points_checked) + " locally 1-component points over " +
                     std::to_string(r.spaces) + " representatives satisfy Kur\n";
            o.witness = json{ { "points_checked", r.points_checked } };
            return o;
        }
        o.exit = Refuted;
        o.verdict = "fails";
        json list = json::array();
        for (const auto& v : r.violations) {
            list.push_back(json{ { "id", v.id }, { "point", v.space.point(v.point) }, { "countermodel", countermodel_json(v.space, v.countermodel) } });
            o.text += "violation on " + v.id + " at " + v.space.point(v.point) + "\n";
        }
        o.witness = list;
        return o;
    });

    // morphism
    std::string map_arg, subset_arg, from_arg, to_arg, valuation_arg;
    std::size_t max_points = 6;
    auto* morph_cmd = app.add_subcommand("morphism", "Interior maps and Sigma-morphisms");
    morph_cmd->require_subcommand(1);
    auto* analyze_cmd = morph_cmd->add_subcommand("analyze", "Continuity, openness, surjectivity, injectivity over a subset");
    analyze_cmd->add_option("--map", map_arg, "Map JSON (file or inline)")->required();
    analyze_cmd->add_option("--subset", subset_arg, "Comma-separated target points");
    bind(analyze_cmd, "morphism analyze", [&] {
        PointMap f = io::map_from_json(io::load_argument(map_arg));
        PointSet u = parse_subset(f.target(), subset_arg);
        auto r = analyze_map(f, u);
        Outcome o;
        o.verdict = r.is_u_morphism() ? "u-morphism" : "not-u-morphism";
        o.exit = r.is_u_morphism() ? Holds : Refuted;
        o.witness = morphism_report_json(f, r);
        o.text = morphism_report_text(f, r);
        return o;
    });
    auto* find_cmd = morph_cmd->add_subcommand("find", "All interior surjections injective over a subset");
    find_cmd->add_option("--from", from_arg, "Source space")->required();
    find_cmd->add_option("--to", to_arg, "Target space")->required();
    find_cmd->add_option("--subset", subset_arg, "Comma-separated target points");
    find_cmd->add_option("--max-points", max_points, "Guard on the source size");
    bind(find_cmd, "morphism find", [&] {
        FiniteSpace x = load_space(from_arg), y = load_space(to_arg);
        auto maps = find_U_morphisms(x, y, parse_subset(y, subset_arg), { max_points });
        Outcome o;
        o.verdict = maps.empty() ? "none" : "found";
        o.exit = maps.empty() ? Refuted : Holds;
        json list = json::array();
        for (const auto& m : maps) {
            list.push_back(m.as_names());
            o.text += map_text(m) + "\n";
        }
        o.text = std::to_string(maps.size()) + " morphism(s)\n" + o.text;
        o.witness = json{ { "count", maps.size() }, { "maps", list } };
        return o;
    });
    std::vector< std::string > generators;
    auto* preserve_cmd = morph_cmd->add_subcommand("preserve", "Compare extensions with preimages over a closure set");
    preserve_cmd->add_option("--map", map_arg, "Map JSON (file or inline)")->required();
    preserve_cmd->add_option("--valuation", valuation_arg, "Target valuation JSON, e.g. {\"p\":[\"b\"]}")->required();
    preserve_cmd->add_option("-f,--formula", generators, "Generators of Sigma (repeatable)")->required();
    bind(preserve_cmd, "morphism preserve", [&] {
        PointMap f = io::map_from_json(io::load_argument(map_arg));
        auto val = io::finite_valuation_from_json(f.target(), io::load_argument(valuation_arg));
        std::set< Formula > gens;
        for (const auto& g : generators)
            gens.insert(parse(g));
        auto r = verify_preservation(f, val, closure_set(gens));
        Outcome o;
        o.verdict = r.mismatches.empty() ? "preserved" : "mismatch";
        o.exit = r.mismatches.empty() ? Holds : Refuted;
        json list = json::array();
        o.text = "unique points: " + set_text(f.target(), r.unique) + "\nsigma-morphism: " + (r.sigma_morphism ? "yes" : "no") + "\n";
        for (const auto& m : r.mismatches) {
            list.push_back(json{ { "formula", render(m.formula) },
                                 { "source_extension", io::point_set_to_json(f.source(), m.source_extension) },
                                 { "preimage", io::point_set_to_json(f.source(), m.pulled_back) } });
            o.text += "mismatch at " + render(m.formula) + ": " + set_text(f.source(), m.source_extension) +
                      " vs preimage " + set_text(f.source(), m.pulled_back) + "\n";
        }
        if (r.mismatches.empty())
            o.text += "all formulas agree with their preimages\n";
        o.witness = json{ { "unique", io::point_set_to_json(f.target(), r.unique) },
                          { "sigma_morphism", r.sigma_morphism },
                          { "mismatches", list } };
        return o;
    });

    // gg
    std::size_t k = 0;
    auto* gg_cmd = app.add_subcommand("gg", "Morphisms for every target subset with at most k points");
    gg_cmd->add_option("--from", from_arg, "Source space")->required();
    gg_cmd->add_option("--to", to_arg, "Target space")->required();
    gg_cmd->add_option("-k", k, "Largest subset size")->required();
    gg_cmd->add_option("--max-points", max_points, "Guard on the source size");
    bind(gg_cmd, "gg", [&] {
        FiniteSpace x = load_space(from_arg), y = load_space(to_arg);
        auto r = gg_check(x, y, k, { max_points });
        Outcome o;
        if (r.holds) {
            o.verdict = "holds";
            o.text = "holds for all " + std::to_string(r.subsets_checked) + " subsets of size <= " + std::to_string(k) + "\n";
        } else {
            o.exit = Refuted;
            o.verdict = "fails";
            o.witness = json{ { "failing", io::point_set_to_json(y, *r.failing) } };
            o.text = "fails: no morphism injective over " + set_text(y, *r.failing) + "\n";
        }
        return o;
    });

    // real eval
    std::vector< std::string > real_vals;
    auto* real_cmd = app.add_subcommand("real", "The real line with rational regions");
    real_cmd->require_subcommand(1);
    auto* real_eval = real_cmd->add_subcommand("eval", "Extension of a formula over the real line");
    real_eval->add_option("-v,--valuation", real_vals, "Assignment name=region (repeatable)");
    real_eval->add_option("-f,--formula", formula_text, "Formula text")->required();
    real_eval->add_option("--point", point_arg, "Report membership of this rational instead");
    bind(real_eval, "real eval", [&] {
        RealValuation val;
        for (const auto& a : real_vals) {
            const auto eq = a.find('=');
            if (eq == std::string::npos)
                throw RegionError{ "valuation '" + a + "' must look like name=region" };
            std::string name = a.substr(0, eq);
            while (!name.empty() && name.back() == ' ')
                name.pop_back();
            val.insert_or_assign(name, Region::parse(a.substr(eq + 1)));
        }
        Region ext = eval(val, parse(formula_text));
        Outcome o;
        o.verdict = "ok";
        o.witness = json{ { "extension", ext.str() } };
        o.text = ext.str() + "\n";
        if (!point_arg.empty()) {
            const bool in = ext.contains(parse_rat(point_arg));
            o.verdict = in ? "true" : "false";
            o.exit = in ? Holds : Refuted;
            o.text = in ? "true\n" : "false\n";
        }
        return o;
    });

    // search transfer
    std::vector< std::string > sigma_gens;
    auto* search_cmd = app.add_subcommand("search", "Exploratory searches");
    search_cmd->require_subcommand(1);
    auto* transfer_cmd = search_cmd->add_subcommand("transfer", "Finite pairs separating a formula under Sigma-morphisms");
    transfer_cmd->add_option("-n", n, "Largest space size")->required();
    transfer_cmd->add_option("-f,--formula", formula_text, "Formula phi")->required();
    transfer_cmd->add_option("--sigma", sigma_gens, "Generators of Sigma (repeatable)")->required();
    transfer_cmd->add_option("--max-size", max_size, "Guard on n");
    bind(transfer_cmd, "search transfer", [&] {
        std::set< Formula > gens;
        for (const auto& g : sigma_gens)
            gens.insert(parse(g));
        auto r = search_transfer_pairs(n, parse(formula_text), closure_set(gens), catalog_opts(max_size, false));
        Outcome o;
        o.verdict = r.findings.empty() ? "none-found" : "found";
        json list = json::array();
        o.text = "exploratory search over " + std::to_string(r.pairs_scanned) + " pairs: ";
        if (r.findings.empty())
            o.text += "none found\n";
        else
            o.text += std::to_string(r.findings.size()) + " finding(s)\n";
        for (const auto& fnd : r.findings) {
            list.push_back(json{ { "source", fnd.source_id }, { "target", fnd.target_id } });
            o.text += "  " + fnd.source_id + " -> " + fnd.target_id + "\n";
        }
        o.witness = json{ { "exploratory", true }, { "pairs", r.pairs_scanned }, { "findings", list } };
        return o;
    });

    std::vector< std::string > args = normalize_args(raw_args);
    std::vector< std::string > argv_storage{ "topomodal" };
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector< const char* > argv;
    for (const auto& a : argv_storage)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast< int >(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Holds;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Holds;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return UsageError;
    }
    if (!action) {
        err << "usage error: no command given\n" << app.help();
        return UsageError;
    }

    const auto started = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = action();
    } catch (const GuardError& e) {
        err << "guard error: " << e.what() << "\n";
        o = Outcome{ UsageError, "error", json{ { "error", e.what() } }, {}, 0, 0 };
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        o = Outcome{ UsageError, "error", json{ { "error", e.what() } }, {}, 0, 0 };
    }
    const auto millis =
        std::chrono::duration_cast< std::chrono::milliseconds >(std::chrono::steady_clock::now() - started).count();

    if (as_json) {
        json env{ { "command", command },
                  { "verdict", o.verdict },
                  { "witness", o.witness },
                  { "stats", { { "spaces", o.spaces }, { "valuations", o.valuations }, { "millis", millis } } } };
        out << env.dump(2) << "\n";
    } else {
        out << o.text;
    }
    return o.exit;
}

} // namespace topomodal::cli
