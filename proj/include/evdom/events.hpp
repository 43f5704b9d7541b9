#ifndef EVDOM_EVENTS_HPP
#define EVDOM_EVENTS_HPP

#include <string>
#include <vector>

#include <evdom/fragment.hpp>

namespace evdom {

// Events of a pointed fragment: its parallelism classes. Relations are
// computed only on resolved pairs (classes fully inside the certified
// region, with first depths small enough that crossing witnesses cannot
// hide beyond the truncation); everything else stays unresolved rather
// than guessed.
class event_fragment {
public:
    enum class rel : uint8_t { unresolved, equal, le, ge, conflict, concurrent };

    theta_classes_result theta;
    int num_events = 0;
    std::vector<uint8_t> resolved;
    std::vector<std::vector<int>> enablers;  // vertices where the event is enabled
    std::vector<std::vector<int>> causes;    // strictly smaller events, sorted
    std::vector<rel> matrix;                 // row-major num_events^2
    std::vector<uint8_t> co_initial;         // pair matrices
    std::vector<uint8_t> minimal_conflict;
    std::vector<uint8_t> natural;
    std::vector<uint8_t> natural_clause3;
    int config_bound = 8;

    rel at(int e, int f) const { return matrix[e * num_events + f]; }
    bool pair_resolved(int e, int f) const { return at(e, f) != rel::unresolved; }
    bool is_mc(int e, int f) const { return minimal_conflict[e * num_events + f]; }
    bool is_natural(int e, int f) const { return natural[e * num_events + f]; }
    // immediate causality (cover relation of <=)
    bool immediate_le(int e, int f) const;
};

event_fragment events_from_filter(const domain_fragment& frag, int config_bound = 8);

// least irreflexive symmetric relation containing concurrency, minimal
// conflict, and the mixed co-initial clause (witnessed at two distinct
// configurations)
void natural_relation(event_fragment& ef);

int natural_clique_max(const event_fragment& ef, std::vector<int>* witness = nullptr);

// axioms: conflict inheritance, irreflexivity, partition of resolved pairs
verdict event_axioms_check(const event_fragment& ef);

// conflict-free downward-closed event sets of size <= s, ordered by
// inclusion, against fragment vertices at depth <= s
verdict domain_reconstruction_check(const domain_fragment& frag, const event_fragment& ef, int s);

std::string events_to_json(const event_fragment& ef);
std::string natural_to_dot(const event_fragment& ef);

}  // namespace evdom

#endif
