#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "imgrowth/imgrowth.h"

namespace {

using OpFn = img_status (*)(const img_map*, const img_params*, img_report**);

struct Command {
    const char* name;
    const char* help;
    OpFn fn;
    std::vector<std::string> keys;  // options beyond the map and output flags
};

const std::map<std::string, std::string> kOptionHelp = {
    {"element", "group element, e.g. ab4, a*b^4, [c,b^4], (b^4)^c"},
    {"elements", "two group elements"},
    {"word", "tree word, letters 1..d"},
    {"gens", "comma-separated elements"},
    {"level", "tree or subdivision level"},
    {"level-max", "highest level to try"},
    {"radius", "ball radius"},
    {"maxlen", "maximal word length"},
    {"vertex", "vertex name"},
    {"edge", "invariant edge as p,q"},
    {"base-tile", "base white tile"},
    {"base-word", "base tree word"},
    {"suite-file", "identity suite file"},
    {"k-max", "largest exponent tried for finite order"},
    {"max-tiles", "tile budget"},
};

const std::vector<Command> kCommands = {
    {"act", "Image of a tree word under an element", img_act, {"element", "word"}},
    {"mul", "Product of two elements", img_mul, {"elements"}},
    {"section", "Section of an element at a tree word", img_section, {"element", "word"}},
    {"trivial", "Decide whether an element is trivial", img_trivial, {"element"}},
    {"equal", "Decide whether two elements are equal", img_equal, {"elements"}},
    {"order", "Order of an element", img_order, {"element", "k-max"}},
    {"inf-order", "Search for an infinite-order certificate", img_inf_order, {"element", "k-max"}},
    {"schreier", "Schreier graph on a tree level", img_schreier, {"gens", "level"}},
    {"census", "Ball sizes in a level quotient", img_census, {"gens", "level", "radius"}},
    {"free-semigroup", "Certify that elements generate a free semigroup", img_free_semigroup,
     {"gens", "maxlen", "level", "level-max"}},
    {"verify-identities", "Check an identity suite", img_verify_identities, {"suite-file"}},
    {"recurrence", "Sections of letter-fixing witnesses and whether they generate", img_recurrence,
     {"gens", "word"}},
    {"subdivide", "Level-n tiling summary", img_subdivide, {"level", "max-tiles"}},
    {"flowers", "Flower degrees of level-n vertices", img_flowers, {"level", "vertex", "max-tiles"}},
    {"edge-report", "Vertices along an invariant edge", img_edge_report, {"level", "edge", "max-tiles"}},
    {"tile-action", "Generator action on white tiles by flower rotation", img_tile_action, {"level", "max-tiles"}},
    {"intertwine", "Match tile and tree-word Schreier graphs", img_intertwine,
     {"level", "base-tile", "base-word", "max-tiles"}},
    {"alpha", "Ramification function", img_alpha, {}},
    {"orbifold", "Orbifold Euler characteristic", img_orbifold, {}},
    {"check-criterion", "Exponential-growth criterion on an invariant edge", img_check_criterion,
     {"edge", "level"}},
    {"obstruction", "Thurston obstruction coefficient", img_obstruction, {}},
};

struct Output {
    std::string format = "json";
};

int emit_error(const Output& out, int code, const std::string& message) {
    std::cerr << "imgrowth: " << message << '\n';
    if (out.format == "json") {
        std::string status = code == IMG_INCONCLUSIVE ? "inconclusive" : "error";
        std::string escaped;
        for (char c : message) {
            if (c == '"' || c == '\\') escaped += '\\';
            if (static_cast<unsigned char>(c) < 0x20) continue;
            escaped += c;
        }
        std::cout << "{\"status\":\"" << status << "\",\"code\":" << code << ",\"message\":\"" << escaped << "\"}\n";
    }
    return code;
}

int emit(const Output& out, img_status st, img_report* rep) {
    if (!rep) return emit_error(out, st, img_last_error());
    int code = st;
    if (out.format == "json") {
        std::cout << img_report_json(rep) << '\n';
    } else if (out.format == "text") {
        std::cout << img_report_text(rep);
    } else {
        const char* dot = img_report_dot(rep);
        if (!dot) {
            img_report_free(rep);
            return emit_error(Output{"text"}, IMG_USAGE, "this command has no DOT output");
        }
        std::cout << dot;
    }
    img_report_free(rep);
    return code;
}

struct MapFlags {
    std::string map, presentation, rule, portrait, edge, obstruction;
};

void add_map_flags(CLI::App* sub, MapFlags& f) {
    sub->add_option("--map", f.map, "catalog entry (f1, poly-P, sierpinski-n, obstructed-n)");
    sub->add_option("--presentation-file", f.presentation, "wreath recursion file");
    sub->add_option("--rule-file", f.rule, "subdivision rule JSON");
    sub->add_option("--portrait-file", f.portrait, "ramification portrait JSON");
    sub->add_option("--edge-file", f.edge, "invariant edge JSON");
    sub->add_option("--obstruction-file", f.obstruction, "obstruction curve JSON");
}

const char* c_or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterated monodromy group toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(img_version()));

    Output out;
    MapFlags map_flags;
    std::map<std::string, std::string> values;
    std::vector<std::string> elements;
    std::string budget;
    unsigned long long seed = 1;
    const Command* chosen = nullptr;
    std::string catalog_name;
    bool catalog_list = false, catalog_show = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", out.format, "json, text or dot")
            ->check(CLI::IsMember({"json", "text", "dot"}));
        sub->add_option("--budget-states", budget, "visited-state budget");
        sub->add_option("--seed", seed, "seed for randomized checks");
    };

    for (const auto& cmd : kCommands) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        add_map_flags(sub, map_flags);
        add_common(sub);
        for (const auto& key : cmd.keys) {
            if (key == "elements") {
                sub->add_option("--element", elements, kOptionHelp.at(key))->expected(2)->required();
                continue;
            }
            auto* o = sub->add_option("--" + key, values[key], kOptionHelp.at(key));
            if (key == "element" || (key == "word" && std::string(cmd.name) != "recurrence")) o->required();
        }
        sub->callback([&chosen, &cmd] { chosen = &cmd; });
    }

    auto* cat = app.add_subcommand("catalog", "Built-in maps");
    cat->require_subcommand(1);
    auto* list = cat->add_subcommand("list", "Entries and supported operations");
    add_common(list);
    list->callback([&] { catalog_list = true; });
    auto* show = cat->add_subcommand("show", "Description and data of an entry");
    show->add_option("name", catalog_name, "entry name")->required();
    add_common(show);
    show->callback([&] { catalog_show = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "imgrowth: " << e.what() << '\n';
        return IMG_USAGE;
    }

    img_params* params = img_params_new();
    if (!params) return emit_error(out, IMG_INTERNAL, "out of memory");
    struct Guard {
        img_params* p;
        ~Guard() { img_params_free(p); }
    } guard{params};
    if (!budget.empty()) img_params_set(params, "budget-states", budget.c_str());
    img_params_set(params, "seed", std::to_string(seed).c_str());
    if (chosen) {
        for (const auto& key : chosen->keys) {
            if (key == "elements") {
                img_params_set(params, "element", elements[0].c_str());
                img_params_set(params, "element2", elements[1].c_str());
                continue;
            }
            auto* sub = app.get_subcommand(chosen->name);
            if (sub->get_option("--" + key)->count() > 0) img_params_set(params, key.c_str(), values[key].c_str());
        }
    }

    img_report* rep = nullptr;
    if (catalog_list || catalog_show) {
        img_status st = catalog_list ? img_catalog_list(params, &rep)
                                     : img_catalog_show(catalog_name.c_str(), params, &rep);
        return emit(out, st, rep);
    }

    img_map* map = nullptr;
    img_status st = img_map_load(c_or_null(map_flags.map), c_or_null(map_flags.presentation),
                                 c_or_null(map_flags.rule), c_or_null(map_flags.portrait), c_or_null(map_flags.edge),
                                 c_or_null(map_flags.obstruction), &map);
    if (st != IMG_OK) return emit_error(out, st, img_last_error());
    st = chosen->fn(map, params, &rep);
    img_map_free(map);
    return emit(out, st, rep);
}
