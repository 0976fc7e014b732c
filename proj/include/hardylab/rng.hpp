#pragma once

#include <cstdint>
#include <random>

namespace hardylab {

// Uniform [0,1) doubles with a bit-exact conversion, so streams match across standard libraries.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace hardylab
