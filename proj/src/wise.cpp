#include <evdom/wise.hpp>

#include <algorithm>
#include <set>

#include <json.hpp>

#include <evdom/cover.hpp>
#include <evdom/special.hpp>

namespace evdom {

tile_set wise_tileset() {
    // Verified 4-way deterministic; the quarter-plane with bottom ray y and
    // left ray c realizes every positive {x,y}-word, with vertical period
    // 2^n on the width-n strip.
    return parse_tiles(
        "vcolor a b c\n"
        "hcolor x y\n"
        "tile q0 w=a s=x e=a n=y\n"
        "tile q1 w=a s=y e=b n=x\n"
        "tile q2 w=b s=x e=c n=x\n"
        "tile q3 w=b s=y e=c n=y\n"
        "tile q4 w=c s=x e=b n=y\n"
        "tile q5 w=c s=y e=a n=x\n");
}

tile_set wise_tileset_mutated() {
    tile_set t = wise_tileset();
    std::swap(t.tiles[2].north, t.tiles[3].north);  // the two w=b tiles
    return t;
}

std::map<std::string, int> wise_tip_lengths() {
    return {{"a", 1}, {"b", 2}, {"c", 3}, {"x", 4}, {"y", 5}};
}

square_complex build_x() {
    square_complex c = complex_from_tiles(wise_tileset());
    c.name = "wise_x";
    return c;
}

square_complex build_w() {
    square_complex w = attach_tips(barycentric_subdivision(build_x()), wise_tip_lengths());
    for (auto& e : w.edges) e.color.clear();  // the tips already encode the colors
    w.name = "wise_w";
    return w;
}

period_doubling_result period_doubling_check(const tile_set& t, int n_max) {
    period_doubling_result res;
    if (n_max < 1) throw validation_error("n_max must be positive");
    for (int n = 1; n <= n_max; n++) {
        long rows = 1L << n;
        quadrant_rect qr = fill_quadrant(t, n, static_cast<int>(rows) - 1, "y", "c");
        std::set<std::string> seen;
        std::string first_word;
        for (long m = 0; m < rows; m++) {
            std::string w = qr.row_word(static_cast<int>(m));
            if (!seen.insert(w).second) {
                res.pass = false;
                res.witness = "n=" + std::to_string(n) + ": word " + w + " repeats by height " +
                              std::to_string(m);
                return res;
            }
        }
        res.checked_to = n;
    }
    return res;
}

std::string row_word(const tile_set& t, int n, int m) {
    quadrant_rect qr = fill_quadrant(t, n, m, "y", "c");
    return qr.row_word(m);
}

drive_report counterexample_drive(int radius, int depth, int k_max, long budget) {
    drive_report rep;
    tile_set t = wise_tileset();
    square_complex x = build_x();
    square_complex w = build_w();
    rep.x_vertices = x.num_vertices();
    rep.x_edges = x.num_edges();
    rep.x_squares = x.num_squares();
    rep.w_vertices = w.num_vertices();
    rep.w_edges = w.num_edges();
    rep.w_squares = w.num_squares();
    rep.vh = check_vh(x).pass;
    rep.csc = check_csc(x).pass;
    rep.npc = check_npc(x).pass && check_npc(w).pass;
    rep.orientation = check_admissible_orientation(x).pass && check_admissible_orientation(w).pass;
    auto fail = [&](const std::string& why) {
        rep.pass = false;
        rep.failure = why;
        return rep;
    };
    if (!rep.vh || !rep.csc || !rep.npc || !rep.orientation) return fail("local checks");

    // ball of the tipped complex around a 0-vertex
    int root = 0;
    for (int v = 0; v < w.num_vertices(); v++)
        if (w.vertex_types[v] == 0) root = v;
    cover_ball ball = unfold_ball(w, root, radius, budget);
    census_result census = filter_type_census(ball, depth, false);
    rep.census_classes = census.classes;
    rep.census_bound = w.num_vertices();
    if (census.classes > rep.census_bound) return fail("census bound");

    filter_extraction fx = principal_filter_extract(ball, ball.basepoint);
    const domain_fragment& frag = fx.frag;
    for (int v = 0; v < frag.num_vertices(); v++) {
        if (!frag.vinterior[v]) continue;
        int bv = fx.to_ball[v];
        if (!ball.vinterior[bv]) continue;
        int type = frag.vtype[v];
        int deg = static_cast<int>(frag.out_adj()[v].size());
        auto it = rep.degree_profile.find(type);
        if (it == rep.degree_profile.end())
            rep.degree_profile[type] = {deg, deg};
        else {
            it->second.first = std::min(it->second.first, deg);
            it->second.second = std::max(it->second.second, deg);
        }
    }

    event_fragment ef = events_from_filter(frag, depth);
    rep.natural_clique = natural_clique_max(ef);
    if (rep.natural_clique > 11) return fail("natural clique bound");

    rep.period_doubling_n = 12;
    rep.period_doubling = period_doubling_check(t, rep.period_doubling_n).pass;
    if (!rep.period_doubling) return fail("period doubling");

    // quadrant sweep: heights up to 2^n - 1 for the obstruction grid
    int n = 3;
    int max_height = (1 << n) - 1;
    quadrant_fragment qf =
        build_quadrant_fragment(t, n, max_height, wise_tip_lengths(), "y", "c", true);
    theta_classes_result theta = theta_classes(qf.frag);
    for (int kk = 1; kk <= k_max; kk++) {
        nice_search_result sr = search_nice(qf.frag, theta, kk, 1);
        rep.labelings.push_back({kk, sr.solutions});
        if (!sr.found) continue;
        for (int k1 = 0; k1 < max_height; k1++)
            for (int m1 = k1 + 1; m1 <= max_height; m1++) {
                obstruction_witness ow =
                    regular_obstruction_witness(qf, theta, sr.labeling, k1, m1, n);
                rep.obstructions.push_back({kk, k1, m1, n, ow});
            }
    }
    bool found_any = false;
    for (const auto& le : rep.labelings) found_any |= le.count > 0;
    if (!found_any) return fail("no nice labeling found up to k_max");
    if (rep.obstructions.empty()) return fail("no obstruction witnesses");
    rep.pass = true;
    return rep;
}

std::string drive_report_to_json(const drive_report& r) {
    nlohmann::json j;
    j["complex_counts"] = {{"x", {r.x_vertices, r.x_edges, r.x_squares}},
                           {"w", {r.w_vertices, r.w_edges, r.w_squares}}};
    j["checks"] = {{"vh", r.vh}, {"csc", r.csc}, {"npc", r.npc}, {"orientation", r.orientation}};
    j["census"] = {{"classes", r.census_classes}, {"bound", r.census_bound}};
    j["degree_profile"] = nlohmann::json::object();
    for (const auto& [type, mm] : r.degree_profile)
        j["degree_profile"][std::to_string(type)] = {mm.first, mm.second};
    j["natural_clique_max"] = r.natural_clique;
    j["period_doubling"] = {{"n_max", r.period_doubling_n},
                            {"status", r.period_doubling ? "PASS" : "FAIL"}};
    j["labelings"] = nlohmann::json::array();
    for (const auto& le : r.labelings)
        j["labelings"].push_back({{"k", le.alphabet}, {"count", le.count}});
    j["obstructions"] = nlohmann::json::array();
    for (const auto& oe : r.obstructions) {
        nlohmann::json jo = nlohmann::json::parse(witness_to_json(oe.witness));
        jo["labeling_id"] = oe.labeling_alphabet;
        jo["k"] = oe.k;
        jo["m"] = oe.m;
        jo["n"] = oe.n;
        j["obstructions"].push_back(jo);
    }
    j["pass"] = r.pass;
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j.dump(2);
}

}  // namespace evdom
