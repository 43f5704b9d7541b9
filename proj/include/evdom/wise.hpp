#ifndef EVDOM_WISE_HPP
#define EVDOM_WISE_HPP

#include <map>
#include <string>

#include <evdom/labeling.hpp>
#include <evdom/quadrant.hpp>
#include <evdom/tiles.hpp>

namespace evdom {

// The six-square one-vertex complex: three vertical colors a,b,c, two
// horizontal colors x,y, squares glued color- and direction-respecting.
// The transcription is pinned by period_doubling_check: the width-n
// column strip of the quarter-plane has vertical period exactly 2^n.
tile_set wise_tileset();

// the same set with the north colors of two tiles swapped; breaks the
// period-doubling property at small n (mutation fixture)
tile_set wise_tileset_mutated();

// repository convention for tip lengths: a=1 b=2 c=3 x=4 y=5
std::map<std::string, int> wise_tip_lengths();

square_complex build_x();  // 1 vertex, 5 edges, 6 squares
square_complex build_w();  // subdivision of X with tips, colors stripped

// all 2^n row words at heights 0..2^n-1 are pairwise distinct, for every
// n <= n_max; doubles as the transcription validator
struct period_doubling_result {
    bool pass = true;
    int checked_to = 0;
    std::string witness;  // first collision
};
period_doubling_result period_doubling_check(const tile_set& t, int n_max);

std::string row_word(const tile_set& t, int n, int m);  // length-n word at height m

// Consolidated counterexample report over (1) a ball of the tipped
// complex: census, degree profile, natural-clique bound; (2) the word
// dynamics: period doubling; (3) the quadrant fragment: nice-labeling
// sweep and obstruction witnesses.
struct drive_report {
    // structure
    int x_vertices = 0, x_edges = 0, x_squares = 0;
    int w_vertices = 0, w_edges = 0, w_squares = 0;
    bool vh = false, csc = false, npc = false, orientation = false;
    // ball analyses
    int census_classes = 0, census_bound = 0;
    std::map<int, std::pair<int, int>> degree_profile;  // type -> (min,max) out-degree
    int natural_clique = 0;
    // word dynamics
    bool period_doubling = false;
    int period_doubling_n = 0;
    // labeling sweep
    struct labeling_entry {
        int alphabet;
        long count;
    };
    std::vector<labeling_entry> labelings;
    struct obstruction_entry {
        int labeling_alphabet;
        int k, m, n;
        obstruction_witness witness;
    };
    std::vector<obstruction_entry> obstructions;
    bool pass = false;
    std::string failure;
};

drive_report counterexample_drive(int radius, int depth, int k_max, long budget = 4'000'000);

std::string drive_report_to_json(const drive_report& r);

}  // namespace evdom

#endif
