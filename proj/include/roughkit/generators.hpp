#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "roughkit/path.hpp"

namespace roughkit::verify {

/// Deterministic test-path factory: the same (kind, seed, dim, cells) always
/// produces bitwise-identical values (normals are drawn by a fixed Box-Muller
/// over mt19937_64, independent of the standard library's distributions).
struct PathGenerator {
    enum class Kind { gaussian_walk, fbm_cholesky, polynomial, trig, zigzag };

    Kind kind = Kind::gaussian_walk;
    std::uint64_t seed = 0;
    std::size_t dim = 1;
    std::size_t cells = 128;
    double horizon = 1.0;
    double hurst = 0.5;     // fbm only, in (0, 1)
    double amplitude = 1.0; // scale applied to the values

    static Kind kind_from_string(const std::string& s);
};

GridPath gen_path(const PathGenerator& g);

/// fbm grids are capped here (O(n^3) Cholesky).
inline constexpr std::size_t kFbmMaxCells = 1024;

/// Standard normal stream used by the generators (Box-Muller, deterministic).
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
    double next();

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace roughkit::verify
