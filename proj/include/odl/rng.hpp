#pragma once
#include <algorithm>
#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace odl {

// Counter-based splittable RNG (SplitMix64 core). Streams derived from a key
// are independent of draw order in the parent, so parallel generation with
// per-item derived streams is reproducible regardless of scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Derive an independent child stream from a label. Children with distinct
    // labels never share a sequence; the parent is not advanced.
    Rng stream(std::string_view label) const {
        std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the label
        for (unsigned char c : label) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return Rng(mix(state_ ^ h));
    }
    Rng stream(std::uint64_t index) const {
        return Rng(mix(state_ + 0x9e3779b97f4a7c15ull * (index + 1)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n = 0");
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Standard normal via Box-Muller; second value cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // Uniformly random k-subset of {0,...,m-1}, sorted (Floyd's algorithm).
    std::vector<int> k_subset(int m, int k) {
        if (k > m) throw std::invalid_argument("Rng::k_subset: k > m");
        std::vector<int> out;
        out.reserve(k);
        for (int j = m - k; j < m; ++j) {
            int t = int(below(std::uint64_t(j) + 1));
            bool seen = false;
            for (int x : out)
                if (x == t) { seen = true; break; }
            out.push_back(seen ? j : t);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace odl
