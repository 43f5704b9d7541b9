#ifndef EVDOM_QUADRANT_HPP
#define EVDOM_QUADRANT_HPP

#include <map>
#include <string>
#include <vector>

#include <evdom/fragment.hpp>
#include <evdom/tiles.hpp>

namespace evdom {

// Rectangle of the directed quarter-plane spanned by a horizontal
// bottom ray and a vertical left ray, filled cell by cell through the
// unique corner extension (requires a complete SW-deterministic set).
struct quadrant_rect {
    int n = 0, m = 0;
    const tile_set* tiles = nullptr;
    std::vector<std::vector<int>> cell;  // [i][j], i < n, j < m
    std::vector<std::vector<int>> vcol;  // [i][j]: v color left of cell (i,j), i <= n, j < m
    std::vector<std::vector<int>> hrow;  // [i][j]: h color below row j, i < n, j <= m

    std::string row_word(int j) const;  // length-n word at height j
    std::string col_word(int i) const;  // length-m word at offset i
};

quadrant_rect fill_quadrant(const tile_set& t, int n, int m, const std::string& bottom_color,
                            const std::string& left_color);

// Subdivided quadrant with tips and (optionally) the full out-stars of its
// 0-vertices. This is a convex piece of the ambient cover, so all pairs
// are certified.
struct quadrant_fragment {
    domain_fragment frag;
    int n = 0, m = 0;
    quadrant_rect rect;
    std::vector<std::vector<int>> zv;   // [i][j] 0-vertices, i <= n, j <= m
    std::vector<std::vector<int>> hb;   // [i][j] barycenter of h edge (i..i+1, j), i < n, j <= m
    std::vector<std::vector<int>> vb;   // [i][j] barycenter of v edge (i, j..j+1), i <= n, j < m
    std::vector<std::vector<int>> ctr;  // [i][j] cell centers
    // out-neighbor barycenter of a 0-vertex per color (quadrant edges and
    // star stubs alike)
    std::map<std::pair<int, std::string>, int> bary_by_color;  // (zv vertex, color)

    int out_edge(int from, int to) const;  // fragment edge id or -1
    int star_bary(int i, int j, const std::string& color) const;
};

quadrant_fragment build_quadrant_fragment(const tile_set& t, int n, int m,
                                          const std::map<std::string, int>& tip_len,
                                          const std::string& bottom_color,
                                          const std::string& left_color, bool with_stars);

}  // namespace evdom

#endif
