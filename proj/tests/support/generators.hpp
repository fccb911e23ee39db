#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "blocklcs/blockmodel.hpp"

namespace testgen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    std::size_t size(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }

    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    std::string bits(std::size_t len) {
        std::string s(len, '0');
        for (auto& c : s) c = (engine_() & 1U) ? '1' : '0';
        return s;
    }

    std::string bits_up_to(std::size_t max_len) { return bits(size(0, max_len)); }

    /// Run-length biased strings: runs of length 1..max_run.
    std::string runs(std::size_t len, std::size_t max_run) {
        std::string s;
        char c = (engine_() & 1U) ? '1' : '0';
        while (s.size() < len) {
            s.append(std::min(size(1, max_run), len - s.size()), c);
            c = c == '0' ? '1' : '0';
        }
        return s;
    }

    blocklcs::BlockSequence model(int l, std::size_t n) { return blocklcs::sample_block_sequence(l, n, engine_()); }

    std::pair<blocklcs::BlockSequence, blocklcs::BlockSequence> model_pair(int l, std::size_t n) {
        auto x = model(l, n);
        auto y = model(l, n);
        return {x, y};
    }

    std::uint64_t seed() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Every binary string of length exactly len.
inline std::vector<std::string> all_strings(std::size_t len) {
    std::vector<std::string> out;
    for (std::size_t code = 0; code < (std::size_t{1} << len); ++code) {
        std::string s(len, '0');
        for (std::size_t b = 0; b < len; ++b)
            if (code >> b & 1U) s[b] = '1';
        out.push_back(s);
    }
    return out;
}

}  // namespace testgen
