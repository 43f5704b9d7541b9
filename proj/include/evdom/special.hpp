#ifndef EVDOM_SPECIAL_HPP
#define EVDOM_SPECIAL_HPP

#include <string>
#include <vector>

#include <evdom/complex.hpp>

namespace evdom {

// Hyperplane of a base complex: a parallelism class of edges with a side
// assignment when two-sided.
struct base_hyperplane {
    int id = -1;
    std::vector<int> dual_edges;  // sorted edge ids
    bool two_sided = true;
    // For two-sided classes, flip[e] distinguishes the two transverse
    // directions: an edge-end is source-like when (end is tail) xor flip.
    std::vector<uint8_t> flip;  // parallel to dual_edges
};

std::vector<base_hyperplane> base_hyperplanes(const square_complex& c);

// Pathology report. Indirect self-osculations are informational; they do
// not fail specialness.
struct pathology_report {
    struct self_intersection {
        int hyperplane, square;
        int side1, side2;  // consecutive positions
    };
    struct osculation {
        int vertex;
        int end1, end2;  // edge-end ids
    };
    struct self_osculation {
        int hyperplane;
        osculation at;
    };
    struct inter_osculation {
        int h1, h2;
        int square;  // intersection witness
        osculation at;
    };
    std::vector<self_intersection> a_self_intersecting;
    std::vector<int> b_one_sided;  // hyperplane ids
    std::vector<self_osculation> c_direct;
    std::vector<self_osculation> d_indirect;
    std::vector<inter_osculation> e_inter_osculating;
    std::vector<base_hyperplane> hyperplanes;
};

pathology_report detect_pathologies(const square_complex& c);

struct special_verdict {
    bool is_special = false;
    pathology_report report;
    std::string summary;
};
special_verdict check_special(const square_complex& c);

std::string pathologies_to_json(const square_complex& c, const pathology_report& r);

}  // namespace evdom

#endif
