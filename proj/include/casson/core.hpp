#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace casson {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// log_map: an eigenvalue sits within 1e-8 of -1, the point left the chart.
struct BranchCutError : Error { using Error::Error; };

// Solver diagnostics.
struct SolverDivergedError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };

// Stabilizer / rank decisions too close to tolerance.
struct AmbiguousStabilizerError : Error { using Error::Error; };
struct RankDeficiencyError : Error { using Error::Error; };

// Spectral flow / Maslov machinery.
struct TrackingAmbiguousError : Error { using Error::Error; };
struct IsotypicLeakError : Error { using Error::Error; };
struct NotIsotropicError : Error { using Error::Error; };
struct DegenerateCrossingError : Error { using Error::Error; };
struct GridTooCoarseError : Error { using Error::Error; };
struct KernelEmptyError : Error { using Error::Error; };

// Path / pipeline machinery.
struct ContinuationStuckError : Error { using Error::Error; };
struct StratumCrossingError : Error { using Error::Error; };
struct FrameTransportUnstableError : Error { using Error::Error; };
struct NotMorseError : Error { using Error::Error; };
struct QuadratureDivergingError : Error { using Error::Error; };
struct DegenerateIntersectionsError : Error { using Error::Error; };
struct MalformedRecordError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Deterministic RNG. mt19937_64 is fully specified by the standard; the
// distributions below are hand-rolled because std::*_distribution is not,
// and reports must be byte-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {
        // splitmix64 warmup so nearby seeds decorrelate
        for (int i = 0; i < 4; ++i) next();
    }

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform() {  // [0,1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        if (have_cache_) { have_cache_ = false; return cache_; }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        cache_ = v * m;
        have_cache_ = true;
        return u * m;
    }

    int uniform_int(int n) {  // 0..n-1
        return static_cast<int>(next() % static_cast<std::uint64_t>(n));
    }

private:
    std::uint64_t s_;
    double cache_ = 0.0;
    bool have_cache_ = false;
};

// FNV-1a, used for config hashes embedded in reports.
inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace casson
