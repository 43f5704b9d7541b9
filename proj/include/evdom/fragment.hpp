#ifndef EVDOM_FRAGMENT_HPP
#define EVDOM_FRAGMENT_HPP

#include <array>
#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include <evdom/cover.hpp>

namespace evdom {

// Pointed directed median-graph fragment: a truncated principal filter.
// Every vertex is reachable from the basepoint along directed edges.
//
// Distance discipline: fragment distances agree with the ambient cover
// exactly on certified pairs, where depth(u) + d(u,w) stays within the
// certified depth (every vertex that deep is interior). Operations that
// need exact geodesics accept only certified pairs and throw
// boundary_unsafe otherwise. Fragments built from convex pieces (the
// quadrant) set all_certified.
class domain_fragment {
public:
    std::vector<std::string> vname;
    std::vector<int> vtype;  // -1 untyped
    std::vector<uint8_t> vinterior;
    int basepoint = 0;

    struct fedge {
        int src, dst;
        std::string color;   // empty = uncolored
        int base_edge = -1;  // ambient base edge when extracted from a ball
    };
    std::vector<fedge> edges;

    // commuting square: a: s->p, b: s->q, c: p->t, d: q->t
    // opposite (parallel) side pairs are (a,d) and (b,c)
    struct fsquare {
        int a, b, c, d;
    };
    std::vector<fsquare> squares;

    bool all_certified = false;
    // Filter-shaped fragments (filter intersected with a ball) have exact
    // distances for every pair: the geodesic through the meet never climbs
    // above the endpoints' depths. Intervals and medians still need
    // certified pairs, since the join side may exit the ball.
    bool distances_exact = false;

    int num_vertices() const { return static_cast<int>(vname.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    void finish();  // build adjacency, depths, certified depth; validates

    const std::vector<std::vector<int>>& out_adj() const { return out_adj_; }
    const std::vector<std::vector<int>>& in_adj() const { return in_adj_; }
    const std::vector<int>& depth() const { return depth_; }
    int certified_depth() const { return all_certified ? INT_MAX / 4 : certified_depth_; }

    // undirected fragment distance (memoized BFS rows)
    int dist(int u, int w) const;
    bool pair_certified(int u, int w) const;
    bool reaches(int u, int w) const;  // u ->* w along directed edges

    std::vector<int> interval(int u, int w) const;  // throws boundary_unsafe

private:
    std::vector<std::vector<int>> out_adj_, in_adj_;
    std::vector<int> depth_;
    int certified_depth_ = 0;
    mutable std::vector<std::vector<int>> dist_rows_;
    mutable std::vector<std::vector<uint64_t>> reach_;  // bitsets, lazily built
    void build_reach() const;
};

// Fragment of the directed future of an interior vertex: directed
// reachability through interior vertices, induced edges and squares.
domain_fragment principal_filter(const cover_ball& ball, int v);

// Median property: |I(x,y) n I(y,z) n I(z,x)| == 1 for certified triples.
// max_region caps the vertex set swept (by depth); <=0 picks a cap
// automatically so the sweep stays around 350 vertices.
struct median_report {
    bool pass = true;
    long triples = 0;
    std::string witness;
};
median_report median_check(const domain_fragment& frag, int max_region = -1);

// Three squares pairwise sharing an edge at a common vertex never occur in
// a 2-dimensional NPC fragment; any occurrence is a violation.
verdict check_three_cube(const domain_fragment& frag);

// Djokovic-Winkler classes of the fragment with halfspace sides.
struct theta_classes_result {
    std::vector<int> edge_class;
    int num_classes = 0;
    std::vector<std::vector<int>> dual_edges;       // per class, sorted
    std::vector<uint8_t> boundary_flag;             // possibly under-merged
    std::vector<uint8_t> split_ok;                  // halfspace split computed cleanly
    std::vector<std::vector<int8_t>> side;          // per class, per vertex: 0 = basepoint side
    std::vector<int> min_vertex;                    // least enabling vertex (depth order)
    std::vector<int> first_depth;
};
theta_classes_result theta_classes(const domain_fragment& frag);

// prec_o (directed reachability) agrees with the basepoint order
// (x <= y iff x in I(basepoint,y)) on certified pairs.
verdict order_agreement_check(const domain_fragment& frag);

// The filter equals the intersection of the halfspaces containing the
// basepoint: a certified ball vertex is directed-reachable iff every class
// separating it from the basepoint is crossed tail-to-head.
verdict filter_halfspace_check(const cover_ball& ball, const domain_fragment& frag,
                               const std::vector<int>& frag_to_ball);

// Local convexity of the filter inside the ball at certified pairs.
verdict local_convexity_check(const cover_ball& ball, const domain_fragment& frag,
                              const std::vector<int>& frag_to_ball);

// Largest n admitting a directed n x n grid rooted at `root` (default:
// basepoint), all cells fragment squares, corner distances verified
// against the distance table.
int flat_grid_max(const domain_fragment& frag, int root = -1, int cap = 16);

// Four-point condition: max over 4-tuples of half the difference of the
// two largest distance sums, as a rational with denominator 2.
struct four_point_result {
    long twice_delta = 0;
    long tuples = 0;
    bool exhaustive = true;
    std::array<int, 4> witness{-1, -1, -1, -1};
};
four_point_result four_point_delta(const domain_fragment& frag, int max_region = -1,
                                   long sample_budget = 2'000'000);

// ball vertex ids for fragment vertices (filled by principal_filter)
struct filter_extraction {
    domain_fragment frag;
    std::vector<int> to_ball;
};
filter_extraction principal_filter_extract(const cover_ball& ball, int v);

std::string fragment_to_json(const domain_fragment& frag);
domain_fragment fragment_from_json(const std::string& text);
std::string fragment_to_dot(const domain_fragment& frag);

}  // namespace evdom

#endif
