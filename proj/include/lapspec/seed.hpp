#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lapspec {

// Hierarchical seed: a master seed plus a path of lane indices. Two paths
// that differ anywhere yield statistically independent streams, and a given
// path always yields the same stream, independent of thread schedule.
struct SeedPath {
    std::uint64_t master = 0;
    std::vector<std::uint64_t> lane;

    SeedPath() = default;
    explicit SeedPath(std::uint64_t m) : master(m) {}
    SeedPath(std::uint64_t m, std::initializer_list<std::uint64_t> l)
        : master(m), lane(l) {}

    SeedPath child(std::uint64_t i) const {
        SeedPath p(*this);
        p.lane.push_back(i);
        return p;
    }
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace detail

// Counter-based generator: the key absorbs the seed path, and draw i is a
// strong mix of (key, i). No sequential state beyond the counter, so streams
// are reproducible and cheap to split.
class Rng {
public:
    explicit Rng(const SeedPath& path) {
        std::uint64_t k = detail::splitmix64(path.master ^ 0x5851f42d4c957f2dULL);
        for (std::uint64_t l : path.lane)
            k = detail::splitmix64(k ^ detail::splitmix64(l + 0x3c6ef372fe94f82aULL));
        key_ = k;
    }

    std::uint64_t next_u64() {
        return detail::splitmix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
    }

    // uniform on (0,1]; never returns 0 so log() is always safe
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal via the polar (Marsaglia) Box-Muller variant
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        have_cached_ = true;
        return u * f;
    }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace lapspec
