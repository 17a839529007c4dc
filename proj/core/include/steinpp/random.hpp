#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>

namespace steinpp {

// Counter-free splitmix64 step; also used as the hash for stream splitting.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2) + mix64(b)));
}

// Identifies an independent random stream. Identical (base_seed, stream_id)
// pairs reproduce identical draw sequences; distinct ids share no state.
struct SeededStream {
    std::uint64_t base_seed = 0;
    std::uint64_t stream_id = 0;

    SeededStream substream(std::uint64_t id) const {
        return SeededStream{base_seed, hash_combine(stream_id, id)};
    }
    SeededStream substream(std::uint64_t a, std::uint64_t b) const {
        return substream(a).substream(b);
    }
};

// Self-contained generator so draw sequences do not depend on the standard
// library implementation. xoshiro256** seeded from splitmix64.
class RandomStream {
public:
    explicit RandomStream(SeededStream s) {
        std::uint64_t x = hash_combine(mix64(s.base_seed), s.stream_id);
        for (auto& w : state_) {
            x = mix64(x);
            w = x;
        }
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential(double rate) {
        // -log(1-U) keeps the result finite since uniform() < 1.
        return -std::log1p(-uniform()) / rate;
    }

    // Knuth product-of-uniforms, chunked so exp(-chunk) stays well away
    // from underflow for large means.
    long poisson(double lambda) {
        if (lambda < 0) throw std::invalid_argument("poisson: negative mean");
        long total = 0;
        while (lambda > 30.0) {
            total += poisson_small(30.0);
            lambda -= 30.0;
        }
        return total + poisson_small(lambda);
    }

    std::size_t uniform_index(std::size_t n) {
        // Rejection-free modulo bias is negligible for desk-scale n, but
        // bounded rejection keeps draws exact.
        std::uint64_t threshold = (~std::uint64_t{0} / n) * n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= threshold);
        return static_cast<std::size_t>(x % n);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    long poisson_small(double lambda) {
        double limit = std::exp(-lambda);
        long k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }

    std::uint64_t state_[4];
};

} // namespace steinpp
