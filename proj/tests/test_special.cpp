#include <doctest.h>

#include <evdom/special.hpp>

using namespace evdom;

namespace {
square_complex load(const std::string& name) {
    return load_complex(std::string(EVDOM_DATA_DIR) + "/" + name);
}
}  // namespace

TEST_CASE("hyperplanes: torus has two, both two-sided") {
    auto hyps = base_hyperplanes(load("torus.sqc"));
    CHECK(hyps.size() == 2);
    for (const auto& h : hyps) CHECK(h.two_sided);
}

TEST_CASE("hyperplanes: band with a flip has a one-sided middle") {
    auto hyps = base_hyperplanes(load("mobius.sqc"));
    int one_sided = 0;
    for (const auto& h : hyps)
        if (!h.two_sided) {
            one_sided++;
            CHECK(h.dual_edges.size() == 3);  // the three rungs
        }
    CHECK(one_sided == 1);
}

TEST_CASE("hyperplanes: six-square complex merges each palette") {
    // opposite sides of the squares pair x with y and a with b,c (the word
    // dynamics force this), so the closure leaves one hyperplane per
    // palette: {x,y} and {a,b,c}
    square_complex x = load("wise_x.sqc");
    auto hyps = base_hyperplanes(x);
    REQUIRE(hyps.size() == 2);
    std::vector<size_t> sizes = {hyps[0].dual_edges.size(), hyps[1].dual_edges.size()};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{2, 3});
    for (const auto& h : hyps) CHECK(h.two_sided);
}

TEST_CASE("pathologies: torus is special with indirect self-osculations only") {
    pathology_report r = detect_pathologies(load("torus.sqc"));
    CHECK(r.a_self_intersecting.empty());
    CHECK(r.b_one_sided.empty());
    CHECK(r.c_direct.empty());
    CHECK(r.e_inter_osculating.empty());
    CHECK(r.d_indirect.size() == 2);  // both loop ends meet at the vertex
    CHECK(check_special(load("torus.sqc")).is_special);
}

TEST_CASE("pathologies: six-square complex directly self-osculates") {
    // completeness covers every vertical-horizontal corner pair, so there
    // is no inter-osculation; but two same-palette outgoing loop ends are
    // never corner-consecutive and their classes merge, giving (c)
    pathology_report r = detect_pathologies(load("wise_x.sqc"));
    CHECK(r.a_self_intersecting.empty());
    CHECK(r.b_one_sided.empty());
    CHECK_FALSE(r.c_direct.empty());
    CHECK(r.e_inter_osculating.empty());
    CHECK_FALSE(check_special(load("wise_x.sqc")).is_special);
}

TEST_CASE("pathologies: embedded grid is special") {
    square_complex grid = parse_complex(
        "vertex v00\nvertex v10\nvertex v01\nvertex v11\nvertex v20\nvertex v21\n"
        "edge h0 v00 v10\nedge h1 v10 v20\nedge g0 v01 v11\nedge g1 v11 v21\n"
        "edge u0 v00 v01\nedge u1 v10 v11\nedge u2 v20 v21\n"
        "square h0 + u1 + g0 - u0 -\nsquare h1 + u2 + g1 - u1 -\n");
    CHECK(check_special(grid).is_special);
}

TEST_CASE("pathologies: folded square self-intersects and nothing else") {
    pathology_report r = detect_pathologies(load("fig_a.sqc"));
    CHECK_FALSE(r.a_self_intersecting.empty());
    CHECK(r.b_one_sided.empty());
    CHECK(r.c_direct.empty());
    CHECK(r.e_inter_osculating.empty());
    CHECK_FALSE(check_special(load("fig_a.sqc")).is_special);
}

TEST_CASE("pathologies: band with a flip is one-sided and nothing else") {
    pathology_report r = detect_pathologies(load("mobius.sqc"));
    CHECK(r.a_self_intersecting.empty());
    CHECK(r.b_one_sided.size() == 1);
    CHECK(r.c_direct.empty());
    CHECK(r.e_inter_osculating.empty());
    CHECK_FALSE(check_special(load("mobius.sqc")).is_special);
}

TEST_CASE("pathologies: direct self-osculation fixture and nothing else") {
    pathology_report r = detect_pathologies(load("fig_c.sqc"));
    CHECK(r.a_self_intersecting.empty());
    CHECK(r.b_one_sided.empty());
    CHECK_FALSE(r.c_direct.empty());
    CHECK(r.e_inter_osculating.empty());
    CHECK_FALSE(check_special(load("fig_c.sqc")).is_special);
}

TEST_CASE("pathologies: inter-osculation fixture and nothing else") {
    pathology_report r = detect_pathologies(load("fig_e.sqc"));
    CHECK(r.a_self_intersecting.empty());
    CHECK(r.b_one_sided.empty());
    CHECK(r.c_direct.empty());
    CHECK(r.e_inter_osculating.size() == 1);
    CHECK_FALSE(check_special(load("fig_e.sqc")).is_special);
}

TEST_CASE("pathology report serializes with witnesses") {
    square_complex c = load("fig_e.sqc");
    std::string js = pathologies_to_json(c, detect_pathologies(c));
    CHECK(js.find("\"e\"") != std::string::npos);
    CHECK(js.find("v11") != std::string::npos);
}
