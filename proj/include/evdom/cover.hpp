#ifndef EVDOM_COVER_HPP
#define EVDOM_COVER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <evdom/complex.hpp>

namespace evdom {

// Finite portion of a universal cover. Vertices within graph distance
// `radius` of the basepoint; a vertex is interior when its 1-skeleton star
// is complete (one lifted end per base end). corner_complete additionally
// certifies that every base square corner is lifted at the vertex.
// Cells are renamed canonically (lexicographically least shortest lift
// path), so equal inputs produce byte-identical balls.
struct cover_ball {
    square_complex base;
    int basepoint = 0;
    int radius = 0;

    std::vector<int> vfiber;                 // base vertex per lifted vertex
    std::vector<int> vdist;                  // graph distance to basepoint
    std::vector<uint8_t> vinterior;
    std::vector<uint8_t> vcorner_complete;
    std::vector<std::string> vname;

    struct lifted_edge {
        int base_edge;
        int src, dst;  // lifted vertices; src holds the tail end
    };
    std::vector<lifted_edge> edges;
    // per lifted vertex, sorted (base end -> lifted edge)
    std::vector<std::vector<std::pair<int, int>>> star;

    struct lifted_square {
        int base_square;
        std::array<int, 4> sides;  // lifted edges in base side order
    };
    std::vector<lifted_square> squares;

    int num_vertices() const { return static_cast<int>(vfiber.size()); }

    // lifted edge at vertex v over base end `bend`, or -1
    int star_at(int v, int bend) const;
    // the out-edges of v are the lifted edges whose tail is at v
    std::vector<int> out_edges(int v) const;
    int edge_other(int le, int v) const {
        return edges[le].src == v ? edges[le].dst : edges[le].src;
    }
};

// Generic star-completion unfolder with square folding. Requires
// check_npc(base) to pass. Budget bounds the number of lifted cells.
cover_ball unfold_ball(const square_complex& base, int base_vertex, int radius,
                       long budget = 4'000'000);

// Exact fast path for one-vertex complete VH complexes: the cover is a
// product of the horizontal and vertical subcomplex cover trees, truncated
// at l1 radius. With filter_only, only the directed future of the
// basepoint is built (out-trees instead of full trees).
cover_ball unfold_csc_product(const square_complex& base, int base_vertex, int radius,
                              bool filter_only = false, long budget = 16'000'000);

// Unique lift of a base walk from `start`; throws leaves_ball when the
// walk exits the built region.
struct lifted_path {
    std::vector<int> vertices;  // length k+1
    std::vector<int> edges;     // lifted edge per step
};
lifted_path lift_path(const cover_ball& ball, const std::vector<side>& base_walk, int start);

// Partial automorphism determined by u -> u' and path lifting, computed on
// the largest verified sub-ball. image[v] == -1 outside the domain.
struct transport_map {
    std::vector<int> image;
    int mapped = 0;  // vertices in the domain
};
transport_map deck_transport(const cover_ball& ball, int u, int u_prime);

// Basepoint-fixing isomorphism over the identity of the base (matches
// stars end-by-end). Returns false with a reason when the balls differ.
struct ball_iso_result {
    bool isomorphic = false;
    std::string reason;
};
ball_iso_result balls_isomorphic(const cover_ball& a, const cover_ball& b);

// Census of isomorphism types of depth-d truncated directed principal
// filters over vertices whose depth < d reach is interior. Isomorphisms
// preserve orientation, vertex types, and (when use_colors) edge colors.
struct census_entry {
    int count = 0;
    std::string representative;
};
struct census_result {
    int classes = 0;
    int eligible = 0;
    std::vector<census_entry> entries;
};
census_result filter_type_census(const cover_ball& ball, int depth, bool use_colors = true);

std::string ball_to_json(const cover_ball& ball);
cover_ball ball_from_json(const std::string& text);
std::string ball_to_dot(const cover_ball& ball);

}  // namespace evdom

#endif
