#ifndef EVDOM_COMPLEX_HPP
#define EVDOM_COMPLEX_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <evdom/errors.hpp>

namespace evdom {

enum class vh_tag : uint8_t { none, vertical, horizontal };

// Directed edge of a square complex. Loops (src == dst) are allowed.
struct edge_rec {
    std::string name;
    int src = -1;
    int dst = -1;
    std::string color;  // empty = uncolored
    vh_tag vh = vh_tag::none;
};

// One boundary side: an edge traversed forward (+) or backward (-).
struct side {
    int edge = -1;
    bool fwd = true;
    bool operator==(const side&) const = default;
};

struct square_rec {
    std::string name;
    std::array<side, 4> sides;
};

// Edge-end encoding: end 2*e is the tail (source end) of edge e, 2*e+1 the
// head. Links and stars are built from edge-ends, not neighbor vertices,
// so loops and multi-edges work.
inline int tail_end(int e) { return 2 * e; }
inline int head_end(int e) { return 2 * e + 1; }
inline int end_edge(int end) { return end / 2; }
inline bool end_is_head(int end) { return end & 1; }
inline int partner_end(int end) { return end ^ 1; }

class square_complex {
public:
    std::string name;
    std::vector<std::string> vertex_names;
    std::vector<int> vertex_types;  // -1 = untyped, else 0..3
    std::vector<edge_rec> edges;
    std::vector<square_rec> squares;

    int num_vertices() const { return static_cast<int>(vertex_names.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_squares() const { return static_cast<int>(squares.size()); }

    int add_vertex(const std::string& vname, int type = -1);
    int add_edge(const std::string& ename, int src, int dst,
                 const std::string& color = "", vh_tag vh = vh_tag::none);
    int add_square(const std::string& sname, const std::array<side, 4>& sides);

    int vertex_id(const std::string& vname) const;  // -1 if absent
    int edge_id(const std::string& ename) const;

    // Walk geometry of a side.
    int side_start(const side& s) const { return s.fwd ? edges[s.edge].src : edges[s.edge].dst; }
    int side_end(const side& s) const { return s.fwd ? edges[s.edge].dst : edges[s.edge].src; }
    int side_start_end(const side& s) const { return s.fwd ? tail_end(s.edge) : head_end(s.edge); }
    int side_end_end(const side& s) const { return s.fwd ? head_end(s.edge) : tail_end(s.edge); }

    int end_vertex(int end) const {
        const edge_rec& e = edges[end_edge(end)];
        return end_is_head(end) ? e.dst : e.src;
    }

    // Edge-ends incident to each vertex, ordered by end id.
    const std::vector<std::vector<int>>& ends_at() const;

    // Square corners. Corner i of a square sits at side_start(sides[i]);
    // it joins the end of side i-1 (arrive) with the start of side i (leave).
    struct corner {
        int square = -1;
        int pos = -1;
        int vertex = -1;
        int arrive_end = -1;
        int leave_end = -1;
    };
    const std::vector<corner>& corners() const;
    const std::vector<std::vector<int>>& corners_at() const;  // corner indices per vertex

    // Checks all invariants (closed walks, index ranges, alternation when
    // vh is total). Throws validation_error.
    void validate() const;

    std::string color_at(int e) const { return edges[e].color; }

private:
    std::map<std::string, int> vertex_index_;
    std::map<std::string, int> edge_index_;
    mutable std::vector<std::vector<int>> ends_at_;
    mutable std::vector<corner> corners_;
    mutable std::vector<std::vector<int>> corners_at_;
    mutable bool derived_valid_ = false;
    void build_derived() const;
};

// Link of a vertex: one node per incident edge-end, one link edge per
// square corner at the vertex (with multiplicity).
struct vertex_link {
    int vertex = -1;
    std::vector<int> nodes;  // edge-end ids, sorted
    struct link_edge {
        int a, b;      // edge-end ids, a <= b
        int square;    // witnessing square
        int pos;       // corner position
    };
    std::vector<link_edge> link_edges;
};

vertex_link make_vertex_link(const square_complex& c, int v);

// Verdict with a byte-stable witness string (lexicographically least
// offending cell first).
struct verdict {
    bool pass = true;
    std::string witness;
};

// Link is a simple triangle-free graph at every vertex. For square
// complexes this is the full local curvature condition: there are no
// 3-cubes, so flagness reduces to triangle-freeness, and simplicity
// excludes two squares sharing two consecutive edges.
verdict check_npc(const square_complex& c);

// Every square alternates vertical/horizontal sides. Requires total vh.
verdict check_vh(const square_complex& c);

struct csc_verdict {
    bool pass = true;
    bool all_unique = true;  // every corner pair spans exactly one corner
    std::string witness;
};

// Every (vertical end, horizontal end) pair at a vertex spans a corner.
csc_verdict check_csc(const square_complex& c);

// Opposite sides of every square are traversed with opposite boundary
// signs, i.e. the underlying directed edges point the same way.
verdict check_admissible_orientation(const square_complex& c);

// Directed elementary parallelism: pairs of opposite sides, as (edge,
// same_direction) relations. Used for hyperplane sidedness.
struct parallel_pair {
    int e1, e2;
    bool same_direction;  // signs opposite in the walk
    int square;
};
std::vector<parallel_pair> elementary_parallelisms(const square_complex& c);

// First barycentric subdivision. Original vertices become type 0, edge
// barycenters type 1, square centers type 2. Halves inherit color and
// orientation; center spokes run bottom-to-top and left-to-right in the
// canonical rotation of each square's walk.
square_complex barycentric_subdivision(const square_complex& c);

// Attach a pendant path of length tip_len(color) to every 1-vertex, edges
// oriented away from the root; new vertices get type 3.
square_complex attach_tips(const square_complex& subdivided,
                           const std::map<std::string, int>& tip_len);

// Line-oriented text format:
//   complex NAME
//   vertex NAME [type=K]
//   edge NAME SRC DST [color=C] [vh=V|H]
//   square E1 S1 E2 S2 E3 S3 E4 S4        (S in {+,-})
square_complex parse_complex(const std::string& text);
square_complex load_complex(const std::string& path);
std::string write_complex(const square_complex& c);

std::string complex_to_json(const square_complex& c);
square_complex complex_from_json(const std::string& json_text);

}  // namespace evdom

#endif
