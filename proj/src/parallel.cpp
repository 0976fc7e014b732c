#include "hardylab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hardylab {

int worker_count() {
    const char* env = std::getenv("HARDYLAB_THREADS");
    if (!env) return 1;
    try {
        const int n = std::stoi(env);
        return n >= 1 ? std::min(n, 256) : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

}  // namespace hardylab
