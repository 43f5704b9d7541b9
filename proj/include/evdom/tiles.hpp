#ifndef EVDOM_TILES_HPP
#define EVDOM_TILES_HPP

#include <optional>
#include <string>
#include <vector>

#include <evdom/complex.hpp>

namespace evdom {

// Wang tiles with disjoint horizontal/vertical palettes. Tiles are never
// rotated or flipped.
struct tile_set {
    std::vector<std::string> hcolors;  // north/south palette
    std::vector<std::string> vcolors;  // east/west palette
    struct tile {
        std::string name;
        int north, east, south, west;  // palette indices
    };
    std::vector<tile> tiles;

    int hcolor_id(const std::string& nm) const;
    int vcolor_id(const std::string& nm) const;
};

tile_set parse_tiles(const std::string& text);
tile_set load_tiles(const std::string& path);
std::string write_tiles(const tile_set& t);

// The pair of colors at each of the four corners determines the tile.
struct determinism_verdict {
    bool pass = true;
    std::string corner;  // NW/NE/SW/SE on failure
    std::string witness;
};
determinism_verdict check_4way_deterministic(const tile_set& t);

// One vertex, one edge per color (vertical/horizontal tags from the
// palettes), one square per tile walked south, east, north(-), west(-).
square_complex complex_from_tiles(const tile_set& t);

// w x h patch with optional boundary color constraints (palette indices,
// -1 = free). Exhaustive backtracking; nullopt = UNSAT.
struct patch_constraints {
    std::vector<int> south, north;  // size w or empty
    std::vector<int> west, east;    // size h or empty
};
std::optional<std::vector<std::vector<int>>> tile_patch(const tile_set& t, int w, int h,
                                                        const patch_constraints& bc = {});

// a x b torus (wrap-around constraints); a found tiling certifies a doubly
// periodic tiling with periods (a,0),(0,b).
std::optional<std::vector<std::vector<int>>> tile_torus(const tile_set& t, int a, int b);

struct probe_report {
    int largest_patch = 0;        // largest n <= max_patch with n x n tiled
    bool patches_exhausted = true;  // largest_patch == max_patch
    std::vector<std::pair<int, int>> torus_tilings;  // (a,b) with tilings
    std::string classification;  // periodic / aperiodic-consistent / does-not-tile
};
probe_report aperiodicity_probe(const tile_set& t, int max_patch, int max_period);

std::string tiling_to_text(const tile_set& t, const std::vector<std::vector<int>>& g);
std::string tiling_to_json(const tile_set& t, const std::vector<std::vector<int>>& g);
std::string probe_to_json(const probe_report& r);

}  // namespace evdom

#endif
