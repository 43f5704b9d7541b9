#ifndef EVDOM_LABELING_HPP
#define EVDOM_LABELING_HPP

#include <optional>
#include <string>
#include <vector>

#include <evdom/events.hpp>
#include <evdom/fragment.hpp>
#include <evdom/quadrant.hpp>
#include <evdom/special.hpp>

namespace evdom {

// Labeling of a fragment's parallelism classes. Storing labels per class
// makes the concurrency condition structural; determinism is the only
// searched constraint.
struct edge_labeling {
    int alphabet = 0;
    std::vector<int> class_label;                   // per theta class, -1 unlabeled
    std::vector<std::string> symbols;               // optional symbol names
    bool has_independence = false;
    std::vector<std::vector<uint8_t>> independent;  // symbol x symbol, irreflexive symmetric
};

// Determinism: no vertex has two outgoing edges with equal labels.
verdict check_nice(const domain_fragment& frag, const theta_classes_result& theta,
                   const edge_labeling& lab);

// Exhaustive backtracking over classes ordered by first appearance from
// the basepoint, symmetry broken by bounded label introduction. UNSAT is
// exhaustive. count_limit > 1 keeps enumerating to count solutions.
struct nice_search_result {
    bool found = false;
    edge_labeling labeling;
    long solutions = 0;
    bool exhausted = true;
};
nice_search_result search_nice(const domain_fragment& frag, const theta_classes_result& theta,
                               int alphabet, long count_limit = 1);

// Trace conditions over resolved event pairs:
//   LES1: minimal conflict implies different labels
//   LES2: immediate causality or minimal conflict implies dependent labels
//   LES3: dependent labels imply comparable or conflicting events
struct trace_verdict {
    bool pass = true;
    std::string axiom;  // violated axiom on failure
    std::string witness;
    long unresolved_pairs = 0;
};
trace_verdict check_trace(const event_fragment& ef, const edge_labeling& lab);

// Sigma = hyperplanes of the base; each class is labeled by the base
// hyperplane of its projection; independence = base intersection pairs.
edge_labeling canonical_hyperplane_labeling(const square_complex& base,
                                            const domain_fragment& frag,
                                            const theta_classes_result& theta);

// Directed label- and type-preserving isomorphism of depth-truncated
// filters inside a fragment; exact backtracking with invariant refinement.
// lab == nullptr compares unlabeled (types and orientation only).
std::optional<std::vector<std::pair<int, int>>> labeled_filter_iso(
    const domain_fragment& frag, const theta_classes_result& theta, const edge_labeling* lab,
    int v1, int v2, int depth);

// Obstruction witness: assuming a label- and type-preserving isomorphism
// between the filters of the height-k and height-m row roots, transport
// forces two outgoing edges of one row vertex to carry equal labels. The
// witnessing pair is pinned by the first index where the two row words
// differ, independently of the particular nice labeling.
struct obstruction_witness {
    int index = -1;
    std::string vertex;
    int edge_row = -1;    // fragment edge toward the row barycenter
    int edge_other = -1;  // fragment edge the isomorphism would have to use
    std::string word_k, word_m;
    int label_row = -1, label_transported = -1;
};
obstruction_witness regular_obstruction_witness(const quadrant_fragment& qf,
                                                const theta_classes_result& theta,
                                                const edge_labeling& lab, int k, int m, int n);

std::string labeling_to_json(const edge_labeling& lab);
std::string witness_to_json(const obstruction_witness& w);

}  // namespace evdom

#endif
