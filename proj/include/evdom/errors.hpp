#ifndef EVDOM_ERRORS_HPP
#define EVDOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace evdom {

// Every failure mode gets its own type so callers (and the CLI) can map
// them to stable diagnostics.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

#define EVDOM_ERROR(Name)                                                \
    struct Name : error {                                                \
        explicit Name(const std::string& what) : error(#Name ": " + what) {} \
    }

EVDOM_ERROR(parse_error);
EVDOM_ERROR(validation_error);
EVDOM_ERROR(unknown_vertex);
EVDOM_ERROR(missing_tags);
EVDOM_ERROR(not_subdivided);
EVDOM_ERROR(non_bijective_map);
EVDOM_ERROR(not_npc);
EVDOM_ERROR(not_csc);
EVDOM_ERROR(not_one_vertex);
EVDOM_ERROR(resource_limit);
EVDOM_ERROR(leaves_ball);
EVDOM_ERROR(different_fibers);
EVDOM_ERROR(depth_exceeds_ball);
EVDOM_ERROR(boundary_unsafe);
EVDOM_ERROR(unlabeled_class);
EVDOM_ERROR(missing_independence);
EVDOM_ERROR(words_equal);
EVDOM_ERROR(not_nice);
EVDOM_ERROR(palette_overlap);
EVDOM_ERROR(transcription_incomplete);
EVDOM_ERROR(fold_inconsistency);

#undef EVDOM_ERROR

}  // namespace evdom

#endif
