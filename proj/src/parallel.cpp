#include "measuregraph/parallel.hpp"

#include <cstdlib>
#include <string>

namespace measuregraph {

std::size_t worker_threads() {
    if (const char* env = std::getenv("MEASUREGRAPH_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace measuregraph
