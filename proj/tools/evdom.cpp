// Batch command-line front end. Every command is scriptable: exit 0 on
// PASS/success, 1 on FAIL/UNSAT (with a report), 2 on usage or IO errors.
// Identical invocations produce byte-identical reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <evdom/cover.hpp>
#include <evdom/events.hpp>
#include <evdom/fragment.hpp>
#include <evdom/labeling.hpp>
#include <evdom/special.hpp>
#include <evdom/tiles.hpp>
#include <evdom/wise.hpp>

using namespace evdom;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long effective_budget(long budget_flag) {
    if (const char* env = std::getenv("WISE_BUDGET")) return std::atol(env);
    return budget_flag;
}

int verdict_exit(bool pass, const std::string& what, const std::string& witness,
                 const std::string& format) {
    if (format == "json") {
        std::cout << "{\n  \"check\": \"" << what << "\",\n  \"pass\": " << (pass ? "true" : "false");
        if (!witness.empty()) std::cout << ",\n  \"witness\": \"" << witness << "\"";
        std::cout << "\n}\n";
    } else {
        std::cout << what << ": " << (pass ? "PASS" : "FAIL") << "\n";
        if (!witness.empty()) std::cout << witness << "\n";
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"square-complex and event-domain toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    std::string format = "text";
    long budget = 4000000;
    app.add_option("--format", format, "output format: text|json|dot")->capture_default_str();
    app.add_option("--budget", budget, "cell budget for unfolding")->capture_default_str();

    auto* c_check = app.add_subcommand("check", "local structure checks");
    std::string check_kind, check_file;
    c_check->add_option("kind", check_kind, "npc|vh|csc|orientation|special")->required();
    c_check->add_option("file", check_file, "complex file")->required();

    auto* c_unfold = app.add_subcommand("unfold", "build a cover ball");
    std::string unfold_file, unfold_vertex;
    int unfold_radius = 2;
    bool csc_fast = false, filter_only = false;
    c_unfold->add_option("file", unfold_file)->required();
    c_unfold->add_option("--vertex", unfold_vertex, "base vertex name (default: first)");
    c_unfold->add_option("--radius", unfold_radius)->required();
    c_unfold->add_flag("--csc-fast", csc_fast, "product-of-trees fast path");
    c_unfold->add_flag("--filter-only", filter_only, "restrict to the directed future");

    auto* c_filter = app.add_subcommand("filter", "principal filter of a ball vertex");
    std::string filter_ball, filter_vertex;
    c_filter->add_option("ball", filter_ball, "ball json file")->required();
    c_filter->add_option("--vertex", filter_vertex, "lifted vertex name (default: basepoint)");

    auto* c_events = app.add_subcommand("events", "event structure of a fragment");
    std::string events_frag;
    bool events_natural = false;
    int config_bound = 8;
    c_events->add_option("fragment", events_frag, "fragment json file")->required();
    c_events->add_flag("--natural", events_natural, "also emit the mixed-relation graph");
    c_events->add_option("--config-bound", config_bound)->capture_default_str();

    auto* c_label = app.add_subcommand("label", "nice and trace labelings");
    c_label->require_subcommand(1);
    auto* c_lsearch = c_label->add_subcommand("search", "exhaustive nice-labeling search");
    std::string ls_frag;
    int ls_alphabet = 2;
    long ls_limit = 1;
    c_lsearch->add_option("fragment", ls_frag)->required();
    c_lsearch->add_option("--alphabet", ls_alphabet)->required();
    c_lsearch->add_option("--limit", ls_limit, "count solutions up to this many")
        ->capture_default_str();
    auto* c_lcheck = c_label->add_subcommand("check", "determinism of a labeling");
    std::string lc_frag, lc_labeling;
    c_lcheck->add_option("fragment", lc_frag)->required();
    c_lcheck->add_option("labeling", lc_labeling, "labeling json")->required();
    auto* c_ltrace = c_label->add_subcommand("trace", "trace conditions of the hyperplane labeling");
    std::string lt_base;
    int lt_radius = 3;
    c_ltrace->add_option("base", lt_base, "base complex file")->required();
    c_ltrace->add_option("--radius", lt_radius)->capture_default_str();

    auto* c_tiles = app.add_subcommand("tiles", "Wang tile machinery");
    c_tiles->require_subcommand(1);
    auto* c_tcheck = c_tiles->add_subcommand("check", "4-way determinism");
    auto* c_tpatch = c_tiles->add_subcommand("patch", "rectangle tiling search");
    auto* c_ttorus = c_tiles->add_subcommand("torus", "wrap-around tiling search");
    auto* c_tprobe = c_tiles->add_subcommand("probe", "bounded aperiodicity probe");
    std::string tiles_file;
    int patch_w = 4, patch_h = 4, torus_a = 2, torus_b = 2, max_patch = 6, max_period = 4;
    for (auto* sc : {c_tcheck, c_tpatch, c_ttorus, c_tprobe})
        sc->add_option("file", tiles_file)->required();
    c_tpatch->set_help_flag("--help", "print help");  // frees --h
    c_tpatch->add_option("--w", patch_w)->capture_default_str();
    c_tpatch->add_option("--h", patch_h)->capture_default_str();
    c_ttorus->add_option("--a", torus_a)->capture_default_str();
    c_ttorus->add_option("--b", torus_b)->capture_default_str();
    c_tprobe->add_option("--max-patch", max_patch)->capture_default_str();
    c_tprobe->add_option("--max-period", max_period)->capture_default_str();

    auto* c_wise = app.add_subcommand("wise", "the six-square counterexample pipeline");
    c_wise->require_subcommand(1);
    auto* c_wx = c_wise->add_subcommand("build-x", "emit the six-square complex");
    auto* c_ww = c_wise->add_subcommand("build-w", "emit the tipped subdivision");
    auto* c_word = c_wise->add_subcommand("word", "row word of the quarter-plane");
    int word_n = 3, word_m = 0;
    c_word->add_option("n", word_n)->required();
    c_word->add_option("m", word_m)->required();
    auto* c_pd = c_wise->add_subcommand("period-doubling", "vertical period of width-n strips");
    int pd_nmax = 12;
    c_pd->add_option("nmax", pd_nmax)->required();
    auto* c_drive = c_wise->add_subcommand("drive", "consolidated counterexample report");
    int drive_radius = 4, drive_depth = 2, drive_kmax = 5;
    c_drive->add_option("--radius", drive_radius)->capture_default_str();
    c_drive->add_option("--depth", drive_depth)->capture_default_str();
    c_drive->add_option("--kmax", drive_kmax)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        budget = effective_budget(budget);

        if (*c_check) {
            square_complex c = load_complex(check_file);
            if (check_kind == "npc") {
                verdict v = check_npc(c);
                return verdict_exit(v.pass, "npc", v.witness, format);
            } else if (check_kind == "vh") {
                verdict v = check_vh(c);
                return verdict_exit(v.pass, "vh", v.witness, format);
            } else if (check_kind == "csc") {
                csc_verdict v = check_csc(c);
                std::string extra =
                    v.pass ? (v.all_unique ? "corners unique" : "corners repeat") : v.witness;
                return verdict_exit(v.pass, "csc", extra, format);
            } else if (check_kind == "orientation") {
                verdict v = check_admissible_orientation(c);
                return verdict_exit(v.pass, "orientation", v.witness, format);
            } else if (check_kind == "special") {
                special_verdict v = check_special(c);
                if (format == "json")
                    std::cout << pathologies_to_json(c, v.report) << "\n";
                else
                    std::cout << v.summary << "\n";
                return v.is_special ? 0 : 1;
            }
            std::cerr << "unknown check '" << check_kind << "'\n";
            return 2;
        }

        if (*c_unfold) {
            square_complex c = load_complex(unfold_file);
            int v = unfold_vertex.empty() ? 0 : c.vertex_id(unfold_vertex);
            if (v < 0) throw unknown_vertex("no vertex '" + unfold_vertex + "'");
            cover_ball ball = csc_fast
                                  ? unfold_csc_product(c, v, unfold_radius, filter_only, budget)
                                  : unfold_ball(c, v, unfold_radius, budget);
            if (format == "dot")
                std::cout << ball_to_dot(ball);
            else if (format == "text")
                std::cout << "vertices " << ball.num_vertices() << "\nedges " << ball.edges.size()
                          << "\nsquares " << ball.squares.size() << "\n";
            else
                std::cout << ball_to_json(ball) << "\n";
            return 0;
        }

        if (*c_filter) {
            cover_ball ball = ball_from_json(slurp(filter_ball));
            int v = ball.basepoint;
            if (!filter_vertex.empty()) {
                v = -1;
                for (int i = 0; i < ball.num_vertices(); i++)
                    if (ball.vname[i] == filter_vertex) v = i;
                if (v < 0) throw unknown_vertex("no lifted vertex '" + filter_vertex + "'");
            }
            domain_fragment frag = principal_filter(ball, v);
            if (format == "dot")
                std::cout << fragment_to_dot(frag);
            else
                std::cout << fragment_to_json(frag) << "\n";
            return 0;
        }

        if (*c_events) {
            domain_fragment frag = fragment_from_json(slurp(events_frag));
            event_fragment ef = events_from_filter(frag, config_bound);
            if (events_natural && format == "dot") {
                std::cout << natural_to_dot(ef);
            } else {
                std::cout << events_to_json(ef) << "\n";
                if (events_natural) {
                    std::vector<int> witness;
                    int clique = natural_clique_max(ef, &witness);
                    std::cout << "natural_clique_max " << clique << "\n";
                }
            }
            return 0;
        }

        if (*c_lsearch) {
            domain_fragment frag = fragment_from_json(slurp(ls_frag));
            theta_classes_result th = theta_classes(frag);
            nice_search_result r = search_nice(frag, th, ls_alphabet, ls_limit);
            if (!r.found) {
                std::cout << "UNSAT (exhaustive) at alphabet " << ls_alphabet << "\n";
                return 1;
            }
            std::cout << labeling_to_json(r.labeling) << "\n";
            if (ls_limit > 1)
                std::cout << "solutions " << r.solutions << (r.exhausted ? " (exhaustive)" : "+")
                          << "\n";
            return 0;
        }
        if (*c_lcheck) {
            domain_fragment frag = fragment_from_json(slurp(lc_frag));
            theta_classes_result th = theta_classes(frag);
            nlohmann::json j = nlohmann::json::parse(slurp(lc_labeling));
            edge_labeling lab;
            lab.alphabet = j.at("alphabet").get<int>();
            lab.class_label = j.at("class_label").get<std::vector<int>>();
            verdict v = check_nice(frag, th, lab);
            return verdict_exit(v.pass, "nice", v.witness, format);
        }
        if (*c_ltrace) {
            square_complex base = load_complex(lt_base);
            verdict ori = check_admissible_orientation(base);
            if (!ori.pass)
                return verdict_exit(false, "trace", "no admissible orientation: " + ori.witness,
                                    format);
            cover_ball ball = unfold_ball(base, 0, lt_radius, budget);
            domain_fragment frag = principal_filter(ball, ball.basepoint);
            theta_classes_result th = theta_classes(frag);
            edge_labeling lab = canonical_hyperplane_labeling(base, frag, th);
            verdict nice = check_nice(frag, th, lab);
            if (!nice.pass)
                return verdict_exit(false, "trace", "determinism: " + nice.witness, format);
            event_fragment ef = events_from_filter(frag);
            trace_verdict tv = check_trace(ef, lab);
            return verdict_exit(tv.pass, "trace", tv.pass ? "" : tv.axiom + ": " + tv.witness,
                                format);
        }

        if (*c_tcheck) {
            tile_set t = load_tiles(tiles_file);
            determinism_verdict v = check_4way_deterministic(t);
            return verdict_exit(v.pass, "4way-deterministic",
                                v.pass ? "" : v.corner + ": " + v.witness, format);
        }
        if (*c_tpatch) {
            tile_set t = load_tiles(tiles_file);
            auto g = tile_patch(t, patch_w, patch_h);
            if (!g) {
                std::cout << "UNSAT\n";
                return 1;
            }
            std::cout << (format == "json" ? tiling_to_json(t, *g) : tiling_to_text(t, *g));
            return 0;
        }
        if (*c_ttorus) {
            tile_set t = load_tiles(tiles_file);
            auto g = tile_torus(t, torus_a, torus_b);
            if (!g) {
                std::cout << "UNSAT\n";
                return 1;
            }
            std::cout << (format == "json" ? tiling_to_json(t, *g) : tiling_to_text(t, *g));
            return 0;
        }
        if (*c_tprobe) {
            tile_set t = load_tiles(tiles_file);
            probe_report r = aperiodicity_probe(t, max_patch, max_period);
            if (format == "json") {
                std::cout << probe_to_json(r) << "\n";
            } else {
                std::cout << "largest patch " << r.largest_patch
                          << (r.patches_exhausted ? " (bound reached)" : " (then stuck)") << "\n";
                for (auto [a, b] : r.torus_tilings) std::cout << "torus " << a << "x" << b << "\n";
                std::cout << r.classification << "\n";
            }
            return 0;
        }

        if (*c_wx) {
            std::cout << (format == "json" ? complex_to_json(build_x()) : write_complex(build_x()));
            return 0;
        }
        if (*c_ww) {
            std::cout << (format == "json" ? complex_to_json(build_w()) : write_complex(build_w()));
            return 0;
        }
        if (*c_word) {
            std::cout << row_word(wise_tileset(), word_n, word_m) << "\n";
            return 0;
        }
        if (*c_pd) {
            period_doubling_result r = period_doubling_check(wise_tileset(), pd_nmax);
            for (int n = 1; n <= r.checked_to; n++)
                std::cout << "n=" << n << " PASS (period " << (1L << n) << ")\n";
            if (!r.pass) {
                std::cout << "FAIL " << r.witness << "\n";
                return 1;
            }
            return 0;
        }
        if (*c_drive) {
            drive_report rep = counterexample_drive(drive_radius, drive_depth, drive_kmax, budget);
            std::cout << drive_report_to_json(rep) << "\n";
            return rep.pass ? 0 : 1;
        }

        std::cerr << "no subcommand\n";
        return 2;
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
