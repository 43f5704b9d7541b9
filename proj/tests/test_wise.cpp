#include <doctest.h>

#include <set>

#include <evdom/wise.hpp>

using namespace evdom;

TEST_CASE("tile transcription: deterministic and complete") {
    tile_set t = wise_tileset();
    CHECK(t.tiles.size() == 6);
    CHECK(check_4way_deterministic(t).pass);
    square_complex x = build_x();
    CHECK(x.num_vertices() == 1);
    CHECK(x.num_edges() == 5);
    CHECK(x.num_squares() == 6);
    CHECK(check_vh(x).pass);
    CHECK(check_csc(x).pass);
    CHECK(check_csc(x).all_unique);
    CHECK(check_npc(x).pass);
    CHECK(check_admissible_orientation(x).pass);
}

TEST_CASE("tipped complex: cell and type census") {
    square_complex w = build_w();
    CHECK(w.num_vertices() == 27);
    CHECK(w.num_edges() == 49);
    CHECK(w.num_squares() == 24);
    std::map<int, int> types;
    for (int t : w.vertex_types) types[t]++;
    CHECK(types[0] == 1);
    CHECK(types[1] == 5);
    CHECK(types[2] == 6);
    CHECK(types[3] == 15);
    CHECK(check_npc(w).pass);
    CHECK(check_admissible_orientation(w).pass);
    // tips: 1+2+3+4+5 of the 49 edges
    CHECK(49 - 34 == 15);
}

TEST_CASE("row words: the bottom row is all y") {
    tile_set t = wise_tileset();
    for (int n = 1; n <= 6; n++) CHECK(row_word(t, n, 0) == std::string(n, 'y'));
}

TEST_CASE("row words: width two cycles through all four words") {
    tile_set t = wise_tileset();
    std::set<std::string> words;
    for (int m = 0; m <= 3; m++) words.insert(row_word(t, 2, m));
    CHECK(words.size() == 4);
    CHECK(words.count("yy"));
}

TEST_CASE("row words: width three enumerates all eight words") {
    tile_set t = wise_tileset();
    std::set<std::string> words;
    for (int m = 0; m <= 7; m++) words.insert(row_word(t, 3, m));
    CHECK(words.size() == 8);
}

TEST_CASE("period doubling holds through n=8") {
    period_doubling_result r = period_doubling_check(wise_tileset(), 8);
    CHECK(r.pass);
    CHECK(r.checked_to == 8);
}

TEST_CASE("mutated tiles fail period doubling by n=2") {
    tile_set t = wise_tileset_mutated();
    CHECK(check_4way_deterministic(t).pass);  // still a valid complete set
    period_doubling_result r = period_doubling_check(t, 4);
    CHECK_FALSE(r.pass);
    CHECK(r.checked_to <= 1);
}

TEST_CASE("quadrant: a missing tile is reported as a bad transcription") {
    tile_set t = wise_tileset();
    t.tiles.pop_back();
    CHECK_THROWS_AS(fill_quadrant(t, 4, 4, "y", "c"), transcription_incomplete);
    tile_set dup = wise_tileset();
    dup.tiles.push_back(dup.tiles[0]);
    CHECK_THROWS_AS(fill_quadrant(dup, 2, 2, "y", "c"), transcription_incomplete);
}

TEST_CASE("quadrant: incremental rows agree") {
    tile_set t = wise_tileset();
    quadrant_rect small = fill_quadrant(t, 4, 3, "y", "c");
    quadrant_rect tall = fill_quadrant(t, 4, 6, "y", "c");
    for (int j = 0; j <= 3; j++) CHECK(small.row_word(j) == tall.row_word(j));
    for (int j = 0; j < 3; j++)
        for (int i = 0; i < 4; i++) CHECK(small.cell[i][j] == tall.cell[i][j]);
    CHECK(small.col_word(0) == "ccc");
}

TEST_CASE("quadrant fragment: structure and star degrees") {
    quadrant_fragment qf =
        build_quadrant_fragment(wise_tileset(), 2, 2, wise_tip_lengths(), "y", "c", true);
    const domain_fragment& f = qf.frag;
    // every 0-vertex sees all five colors outward
    for (int j = 0; j <= 2; j++)
        for (int i = 0; i <= 2; i++) {
            int z = qf.zv[i][j];
            CHECK(f.out_adj()[z].size() == 5);
            for (const std::string col : {"a", "b", "c", "x", "y"})
                CHECK(qf.star_bary(i, j, col) >= 0);
        }
    // centers have out-degree 2
    for (int j = 0; j < 2; j++)
        for (int i = 0; i < 2; i++) CHECK(f.out_adj()[qf.ctr[i][j]].size() == 2);
    CHECK(check_three_cube(f).pass);
    CHECK(median_check(f, 4).pass);
    CHECK(order_agreement_check(f).pass);
}

TEST_CASE("quadrant fragment: row halves are parallel across rows") {
    quadrant_fragment qf =
        build_quadrant_fragment(wise_tileset(), 3, 3, wise_tip_lengths(), "y", "c", false);
    theta_classes_result th = theta_classes(qf.frag);
    for (int i = 0; i < 3; i++) {
        int c0 = th.edge_class[qf.out_edge(qf.zv[i][0], qf.hb[i][0])];
        for (int j = 1; j <= 3; j++)
            CHECK(th.edge_class[qf.out_edge(qf.zv[i][j], qf.hb[i][j])] == c0);
    }
}

TEST_CASE("drive: consolidated report passes") {
    drive_report rep = counterexample_drive(4, 2, 5);
    INFO(rep.failure);
    CHECK(rep.pass);
    CHECK(rep.x_vertices == 1);
    CHECK(rep.x_edges == 5);
    CHECK(rep.x_squares == 6);
    CHECK(rep.w_vertices == 27);
    CHECK(rep.w_edges == 49);
    CHECK(rep.w_squares == 24);
    CHECK(rep.census_classes <= 27);
    CHECK(rep.natural_clique <= 11);
    CHECK(rep.period_doubling);
    // the sweep: no labeling below five, one found at five
    for (const auto& le : rep.labelings)
        CHECK((le.alphabet < 5 ? le.count == 0 : le.count >= 1));
    CHECK(rep.obstructions.size() == 28);  // all pairs 0 <= k < m <= 7
    std::string js = drive_report_to_json(rep);
    CHECK(js.find("\"period_doubling\"") != std::string::npos);
    CHECK(js.find("\"obstructions\"") != std::string::npos);
}
