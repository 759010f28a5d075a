#include "obstructia/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "obstructia/error.hpp"
#include "obstructia/fincat.hpp"
#include "obstructia/homotopy.hpp"
#include "obstructia/opengraph.hpp"
#include "obstructia/report.hpp"
#include "obstructia/setcat.hpp"
#include "obstructia/states.hpp"
#include "text_util.hpp"

namespace obstructia {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IOError", "cannot read '" + path + "'", {path});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Options {
    std::string format = "text";
    std::size_t cap_objects = SizeCaps{}.max_objects;

    SizeCaps caps() const {
        SizeCaps c;
        c.max_objects = cap_objects;
        return c;
    }
};

Json report_json(const ObstructionReport& r) { return Json::parse(format_report_json(r)); }

void emit_report(const ObstructionReport& r, const Options& opt, std::ostream& out) {
    if (opt.format == "dot") {
        out << format_report_dot(r);
    } else if (opt.format == "interchange") {
        out << format_report_json(r);
    } else {
        out << format_report_text(r);
    }
}

/// Several reports under labelled sections (text) or keys (interchange).
void emit_reports(const std::vector<std::pair<std::string, const ObstructionReport*>>& reports,
                  Json extra, const Options& opt, std::ostream& out) {
    if (opt.format == "interchange") {
        Json j;
        j["version"] = 1;
        for (auto& [k, v] : extra.items()) j[k] = v;
        for (const auto& [key, r] : reports) j[key] = report_json(*r);
        out << j.dump(2) << "\n";
        return;
    }
    for (const auto& [key, r] : reports) {
        if (opt.format == "dot") {
            out << format_report_dot(*r);
        } else {
            out << "== " << key << "\n" << format_report_text(*r);
        }
    }
    if (opt.format == "text") {
        for (auto& [k, v] : extra.items()) {
            out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// --- cat ---------------------------------------------------------------------

CategoryPtr load_category(const std::string& path) { return share(parse_category(read_file(path))); }

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

int cat_validate(const std::string& path, const Options& opt, std::ostream& out) {
    auto c = load_category(path);
    if (opt.format == "interchange") {
        Json j;
        j["version"] = 1;
        j["valid"] = true;
        j["objects"] = c->object_count();
        j["morphisms"] = c->morphism_count();
        j["groupoid"] = is_groupoid(*c);
        out << j.dump(2) << "\n";
    } else if (opt.format == "dot") {
        throw Error("UnsupportedFormat", "validate has no DOT rendering");
    } else {
        out << "valid\nobjects: " << c->object_count() << "\nmorphisms: " << c->morphism_count()
            << "\ngroupoid: " << yes_no(is_groupoid(*c)) << "\n";
    }
    return 0;
}

int cat_pi(const std::string& path, const std::string& object, int i, const Options& opt,
           std::ostream& out) {
    auto c = load_category(path);
    Index x = c->object_index(object);
    emit_report(i == 0 ? pi0(*c, x, stem(path)) : pi1(c, x, opt.caps(), stem(path)), opt, out);
    return 0;
}

int cat_analyze(const std::string& path, const std::string& morphism, const Options& opt,
                std::ostream& out) {
    auto c = load_category(path);
    Index f = c->morphism_index(morphism);
    MorphismAnalysis a = analyze_morphism(c, f, opt.caps(), stem(path));
    Json flags;
    flags["morphism"] = morphism;
    flags["split_epi"] = a.split_epi;
    flags["mono"] = a.mono;
    flags["iso"] = a.iso;
    emit_reports({{"pi0", &a.pi0}, {"pi1", &a.pi1}}, flags, opt, out);
    return 0;
}

int cat_check_terminal(const std::string& path, const std::string& object, const Options& opt,
                       std::ostream& out) {
    auto c = load_category(path);
    Index x = c->object_index(object);
    ObstructionReport r0 = pi0(*c, x, stem(path));
    ObstructionReport r1 = pi1(c, x, opt.caps(), stem(path));
    Json flags;
    flags["object"] = object;
    flags["weak_terminal"] = is_weak_terminal(*c, x);
    flags["subterminal"] = is_subterminal(*c, x);
    flags["terminal"] = is_terminal(*c, x);
    if (flags["weak_terminal"].get<bool>() != r0.trivial || flags["subterminal"].get<bool>() != r1.trivial) {
        throw Error("OracleMismatch", "homotopy posets disagree with the hom-set predicates", {object});
    }
    emit_reports({{"pi0", &r0}, {"pi1", &r1}}, flags, opt, out);
    return 0;
}

// --- opengraph -----------------------------------------------------------------

OpenGraph load_graph(const std::string& path) { return parse_open_graph(read_file(path)); }

Json graph_json(const OpenGraph& g) {
    Json j;
    j["inputs"] = g.inputs;
    j["outputs"] = g.outputs;
    j["vertices"] = g.vertices;
    auto edges = Json::array();
    for (auto [u, v] : g.edges) edges.push_back(Json::array({g.vertices[u], g.vertices[v]}));
    j["edges"] = edges;
    Json in = Json::object(), outl = Json::object();
    for (std::size_t x = 0; x < g.inputs.size(); ++x) in[g.inputs[x]] = g.vertices[g.in_leg[x]];
    for (std::size_t y = 0; y < g.outputs.size(); ++y) outl[g.outputs[y]] = g.vertices[g.out_leg[y]];
    j["in"] = in;
    j["out"] = outl;
    return j;
}

Json relation_json(const Relation& r) {
    auto pairs = Json::array();
    for (auto [a, b] : r.pairs) pairs.push_back(Json::array({r.dom[a], r.cod[b]}));
    return pairs;
}

OpenGraph compose_all(const std::vector<std::string>& paths) {
    OpenGraph g = load_graph(paths.at(0));
    for (std::size_t i = 1; i < paths.size(); ++i) g = compose(g, load_graph(paths[i]));
    return g;
}

int og_compose(const std::vector<std::string>& paths, const Options& opt, std::ostream& out) {
    if (paths.size() < 2) throw CLI::ValidationError("compose", "needs at least two graphs");
    OpenGraph g = compose_all(paths);
    if (opt.format == "dot") {
        out << open_graph_dot(g, "composite");
    } else if (opt.format == "interchange") {
        Json j;
        j["version"] = 1;
        j["graph"] = graph_json(g);
        out << j.dump(2) << "\n";
    } else {
        out << format_open_graph(g);
    }
    return 0;
}

int og_reach(const std::vector<std::string>& paths, const Options& opt, std::ostream& out) {
    Relation r = reach(compose_all(paths));
    if (opt.format == "interchange") {
        Json j;
        j["version"] = 1;
        j["reach"] = relation_json(r);
        out << j.dump(2) << "\n";
    } else if (opt.format == "dot") {
        throw Error("UnsupportedFormat", "reach has no DOT rendering");
    } else {
        out << r.to_string() << "\n";
    }
    return 0;
}

int og_obstruct(const std::vector<std::string>& paths, const Options& opt, std::ostream& out) {
    if (paths.size() != 2) throw CLI::ValidationError("obstruct", "needs exactly two graphs");
    OpenGraph g = load_graph(paths[0]);
    OpenGraph h = load_graph(paths[1]);
    Laxator lax = laxator(g, h);
    if (lax.composite.pairs.size() > 12) {
        throw Error("CapExceeded", "reach(G;H) has more than 12 pairs");
    }
    ObstructionReport r0 = laxator_obstructions(g, h);
    ObstructionReport r1 = pi1_laxator(g, h);
    if (opt.format == "dot") {
        out << format_report_dot(r0);
        return 0;
    }
    Json extra;
    extra["parts"] = opt.format == "interchange" ? relation_json(lax.parts) : Json(lax.parts.to_string());
    extra["composite"] =
        opt.format == "interchange" ? relation_json(lax.composite) : Json(lax.composite.to_string());
    emit_reports({{"pi0", &r0}, {"pi1", &r1}}, extra, opt, out);
    return 0;
}

int og_act(const std::vector<std::string>& paths, const Options& opt, std::ostream& out) {
    if (paths.size() != 2) throw CLI::ValidationError("act", "expects <hom file> <second graph>");
    HomSpec spec = parse_hom_spec(read_file(paths[0]));
    auto base = std::filesystem::path(paths[0]).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path q(p);
        return (q.is_absolute() ? q : base / q).string();
    };
    GraphHom hom = make_graph_hom(load_graph(resolve(spec.source_path)),
                                  load_graph(resolve(spec.target_path)), spec.vertex_map);
    OpenGraph h = load_graph(paths[1]);
    ActResult res = act(hom, h);
    if (opt.format == "dot") {
        out << open_graph_dot(res.acted, "acted");
        return 0;
    }
    auto flow = res.flow.by_name();
    if (opt.format == "interchange") {
        Json j;
        j["version"] = 1;
        j["acted"] = graph_json(res.acted);
        j["reach"] = relation_json(reach(res.acted));
        j["before"] = report_json(res.before);
        j["after"] = report_json(res.after);
        j["flow"] = flow;
        j["trivialises_all"] = res.flow.sends_everything_to_basepoint();
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "reach(G'): " << reach(res.acted).to_string() << "\n";
    out << "== before\n" << format_report_text(res.before);
    out << "== after\n" << format_report_text(res.after);
    out << "== flow\n";
    for (const auto& [a, b] : flow) out << a << " -> " << b << "\n";
    out << "trivialises all obstructions: " << yes_no(res.flow.sends_everything_to_basepoint()) << "\n";
    return 0;
}

// --- states -------------------------------------------------------------------

struct StateArgs {
    std::string context = "gf2";
    std::string sets, sets_out, dims, f, g;
};

std::pair<StateObject, StateObject> state_objects(const std::string& context, const std::string& sets,
                                                  const std::string& dims) {
    if (context == "cartesian") {
        auto parts = detail::split_list(sets, '|');
        if (parts.size() != 2) throw CLI::ValidationError("--sets", "expects \"a,b|c,d\"");
        return {StateObject::cartesian(detail::split_list(parts[0], ',')),
                StateObject::cartesian(detail::split_list(parts[1], ','))};
    }
    auto parts = detail::split_list(dims, ',');
    if (parts.size() != 2) throw CLI::ValidationError("--dims", "expects \"m,n\"");
    std::size_t d[2];
    for (int i = 0; i < 2; ++i) {
        try {
            d[i] = std::stoul(parts[i]);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--dims", "dimensions must be non-negative integers");
        }
    }
    return {StateObject::gf2(d[0]), StateObject::gf2(d[1])};
}

int states_obstruct(const StateArgs& a, const Options& opt, std::ostream& out) {
    auto [x, y] = state_objects(a.context, a.sets, a.dims);
    StateObstructions ob = obstructions(x, y);
    FiniteFunction lax = laxator(x, y);
    Json extra;
    extra["laxator_injective"] = lax.injective();
    extra["laxator_surjective"] = lax.surjective();
    emit_reports({{"pi0", &ob.pi0}, {"pi1", &ob.pi1}}, extra, opt, out);
    return 0;
}

StateMorphism parse_state_morphism(const std::string& spec, const StateObject& dom, const StateObject& cod) {
    if (dom.kind == ContextKind::GF2) {
        return StateMorphism::matrix(detail::split_list(spec, ','), dom.dim);
    }
    std::vector<std::size_t> mapping(dom.elements.size(), cod.elements.size());
    for (const auto& entry : detail::split_list(spec, ',')) {
        auto arrow = entry.find("=>");
        if (arrow == std::string::npos) throw Error("ParseError", "expected a=>b in '" + entry + "'", {entry});
        std::string a = detail::trim(std::string_view(entry).substr(0, arrow));
        std::string b = detail::trim(std::string_view(entry).substr(arrow + 2));
        auto ia = std::find(dom.elements.begin(), dom.elements.end(), a);
        auto ib = std::find(cod.elements.begin(), cod.elements.end(), b);
        if (ia == dom.elements.end() || ib == cod.elements.end()) {
            throw Error("TypeMismatch", "'" + entry + "' does not fit the given sets", {entry});
        }
        mapping[static_cast<std::size_t>(ia - dom.elements.begin())] =
            static_cast<std::size_t>(ib - cod.elements.begin());
    }
    if (std::count(mapping.begin(), mapping.end(), cod.elements.size()) > 0) {
        throw Error("TypeMismatch", "function leaves an element unassigned");
    }
    return StateMorphism::function(dom, cod, std::move(mapping));
}

int states_local_act(const StateArgs& a, const Options& opt, std::ostream& out) {
    auto [x, y] = state_objects(a.context, a.sets, a.dims);
    StateMorphism f = StateMorphism::identity(x), g = StateMorphism::identity(y);
    if (a.context == "cartesian") {
        auto [x2, y2] = a.sets_out.empty() ? std::make_pair(x, y) : state_objects(a.context, a.sets_out, "");
        if (!a.f.empty()) f = parse_state_morphism(a.f, x, x2);
        if (!a.g.empty()) g = parse_state_morphism(a.g, y, y2);
    } else {
        if (!a.f.empty()) f = parse_state_morphism(a.f, x, x);
        if (!a.g.empty()) g = parse_state_morphism(a.g, y, y);
    }
    LocalAction act = local_action(f, g);

    // Minimal obstructions (singletons) and where they go.
    auto source_states = states_of(tensor(f.dom, g.dom)).states;
    auto target_states = states_of(tensor(f.cod, g.cod)).states;
    std::vector<std::pair<std::string, std::string>> flow;
    for (std::size_t v = 0; v < source_states.size(); ++v) {
        if (act.source_separable[v]) continue;
        auto image = act.image_of({v});
        flow.emplace_back("{" + source_states[v] + "}",
                          image ? subset_name(target_states, *image) : act.target.pi0.basepoint);
    }
    std::sort(flow.begin(), flow.end());

    if (opt.format == "dot") {
        throw Error("UnsupportedFormat", "local-act has no DOT rendering");
    }
    if (opt.format == "interchange") {
        Json j;
        j["version"] = 1;
        j["preserves_separability"] = act.preserves_separability;
        j["source"] = report_json(act.source.pi0);
        j["target"] = report_json(act.target.pi0);
        Json minimal = Json::object();
        for (const auto& [k, v] : flow) minimal[k] = v;
        j["minimal_flow"] = minimal;
        j["map"] = act.map ? Json(act.map->by_name()) : Json(nullptr);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "separability preserved: " << yes_no(act.preserves_separability) << "\n";
    out << "minimal obstructions (" << flow.size() << "):\n";
    for (const auto& [k, v] : flow) out << "  " << k << " -> " << v << "\n";
    if (act.map) {
        out << "map:\n";
        for (const auto& [k, v] : act.map->by_name()) out << "  " << k << " -> " << v << "\n";
    } else {
        out << "map: not materialized\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Homotopy-poset obstructions for finite categories, functions, open graphs and states",
                 "obstructia"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "dot", "interchange"}));
    app.add_option("--cap-objects", opt.cap_objects, "Object cap for derived categories")
        ->check(CLI::PositiveNumber);

    std::function<int()> action;

    auto* cat = app.add_subcommand("cat", "Finite categories");
    cat->require_subcommand(1);
    std::string file, object, morphism;
    {
        auto* s = cat->add_subcommand("validate", "Check the category laws");
        s->add_option("file", file)->required();
        s->callback([&] { action = [&] { return cat_validate(file, opt, out); }; });
    }
    for (int i : {0, 1}) {
        auto* s = cat->add_subcommand(i == 0 ? "pi0" : "pi1",
                                      i == 0 ? "Obstructions to weak terminality"
                                             : "Obstructions to subterminality");
        s->add_option("file", file)->required();
        s->add_option("--object", object)->required();
        s->callback([&, i] { action = [&, i] { return cat_pi(file, object, i, opt, out); }; });
    }
    {
        auto* s = cat->add_subcommand("analyze", "Slice invariants of a morphism");
        s->add_option("file", file)->required();
        s->add_option("--morphism", morphism)->required();
        s->callback([&] { action = [&] { return cat_analyze(file, morphism, opt, out); }; });
    }
    {
        auto* s = cat->add_subcommand("check-terminal", "Compare hom-set predicates with pi0/pi1");
        s->add_option("file", file)->required();
        s->add_option("--object", object)->required();
        s->callback([&] { action = [&] { return cat_check_terminal(file, object, opt, out); }; });
    }

    auto* set = app.add_subcommand("set", "Functions between finite sets");
    set->require_subcommand(1);
    std::string fn_file;
    for (int i : {0, 1}) {
        auto* s = set->add_subcommand(i == 0 ? "pi0" : "pi1",
                                      i == 0 ? "Obstructions to surjectivity" : "Obstructions to injectivity");
        s->add_option("--fn", fn_file)->required();
        s->callback([&, i] {
            action = [&, i] {
                FiniteFunction f = parse_function(read_file(fn_file));
                emit_report(i == 0 ? pi0_function(f) : pi1_function(f), opt, out);
                return 0;
            };
        });
    }

    auto* og = app.add_subcommand("opengraph", "Open graphs and the reachability laxator");
    og->require_subcommand(1);
    std::vector<std::string> paths;
    auto graph_cmd = [&](const char* name, const char* help, int (*fn)(const std::vector<std::string>&,
                                                                        const Options&, std::ostream&)) {
        auto* s = og->add_subcommand(name, help);
        s->add_option("files", paths)->required();
        s->callback([&, fn] { action = [&, fn] { return fn(paths, opt, out); }; });
    };
    graph_cmd("compose", "Glue graphs left to right", og_compose);
    graph_cmd("reach", "Reachability relation of a graph (or of a composite)", og_reach);
    graph_cmd("obstruct", "Obstructions to compositionality of reachability", og_obstruct);
    graph_cmd("act", "Push obstructions along a homomorphism: <hom> <second graph>", og_act);

    auto* st = app.add_subcommand("states", "States and the tensor laxator");
    st->require_subcommand(1);
    StateArgs sa;
    auto state_flags = [&](CLI::App* s) {
        s->add_option("--context", sa.context)->check(CLI::IsMember({"cartesian", "gf2"}));
        s->add_option("--sets", sa.sets, "Two sets, e.g. \"a,b|c,d\"");
        s->add_option("--dims", sa.dims, "Two GF(2) dimensions, e.g. 2,2");
    };
    {
        auto* s = st->add_subcommand("obstruct", "pi0/pi1 of the state laxator");
        state_flags(s);
        s->callback([&] { action = [&] { return states_obstruct(sa, opt, out); }; });
    }
    {
        auto* s = st->add_subcommand("local-act", "Flow of obstructions under f (x) g");
        state_flags(s);
        s->add_option("--sets-out", sa.sets_out, "Target sets (cartesian)");
        s->add_option("--f", sa.f, "Bit rows (gf2) or a=>b list (cartesian)");
        s->add_option("--g", sa.g, "Bit rows (gf2) or a=>b list (cartesian)");
        s->callback([&] { action = [&] { return states_local_act(sa, opt, out); }; });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        return action();
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& w : e.witnesses()) err << "  witness: " << w << "\n";
        return 1;
    }
}

}  // namespace obstructia
