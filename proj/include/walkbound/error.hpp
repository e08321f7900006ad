#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace walkbound {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or disconnected graph input.
struct graph_error : error {
    using error::error;
};

struct disconnected_error : graph_error {
    std::uint32_t lowest;  // lowest node id of a component unreachable from node 0
    disconnected_error(const std::string& what, std::uint32_t v) : graph_error(what), lowest(v) {}
};

// Rejected generator or analysis parameters.
struct param_error : error {
    using error::error;
};

// A run aborted mid-walk: bad scripted choice, exhausted script, counter overflow.
struct walk_error : error {
    std::uint64_t step;
    walk_error(const std::string& what, std::uint64_t at)
        : error(what + " (step " + std::to_string(at) + ")"), step(at) {}
};

}  // namespace walkbound
