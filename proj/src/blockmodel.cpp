#include "blocklcs/blockmodel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "blocklcs/errors.hpp"
#include "blocklcs/rng.hpp"

namespace blocklcs {

BlockSequence::BlockSequence(int first_symbol, std::vector<int> block_lengths, std::size_t n)
    : first_symbol_(first_symbol), lengths_(std::move(block_lengths)), n_(n) {
    if (first_symbol_ != 0 && first_symbol_ != 1)
        throw InvalidParameter("first symbol must be 0 or 1");
    if (n_ == 0) throw InvalidParameter("truncation length n must be positive");
    if (lengths_.empty()) throw InvalidParameter("a block sequence needs at least one block");
    starts_.reserve(lengths_.size());
    std::size_t pos = 0;
    for (int len : lengths_) {
        if (len < 1) throw InvalidParameter("block lengths must be >= 1");
        if (pos >= n_) throw InvalidParameter("block starts beyond the first n bits");
        starts_.push_back(pos);
        pos += static_cast<std::size_t>(len);
    }
    if (pos < n_) throw InvalidParameter("block lengths do not cover n bits");
}

BlockSequence BlockSequence::from_bits(std::string_view bits) {
    if (bits.empty()) throw InvalidParameter("empty bit string");
    std::vector<int> lengths;
    char prev = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw InvalidParameter("bit strings may only contain '0' and '1'");
        if (c == prev) {
            ++lengths.back();
        } else {
            lengths.push_back(1);
            prev = c;
        }
    }
    return BlockSequence(bits.front() - '0', std::move(lengths), bits.size());
}

std::size_t BlockSequence::visible_length(std::size_t i) const noexcept {
    return std::min(static_cast<std::size_t>(lengths_[i]), n_ - starts_[i]);
}

bool BlockSequence::tail_truncated() const noexcept {
    return starts_.back() + static_cast<std::size_t>(lengths_.back()) > n_;
}

std::size_t BlockSequence::block_count(TailPolicy policy) const noexcept {
    if (policy == TailPolicy::Exclude && tail_truncated()) return lengths_.size() - 1;
    return lengths_.size();
}

std::vector<std::size_t> BlockSequence::block_of_position() const {
    std::vector<std::size_t> out(n_);
    for (std::size_t b = 0; b < lengths_.size(); ++b) {
        const std::size_t end = starts_[b] + visible_length(b);
        std::fill(out.begin() + static_cast<std::ptrdiff_t>(starts_[b]),
                  out.begin() + static_cast<std::ptrdiff_t>(end), b);
    }
    return out;
}

namespace {

void check_model_parameters(int l) {
    if (l < 2) throw InvalidParameter("block model needs l >= 2 (l - 1 must be a positive length)");
}

int draw_length(Rng& rng, int l) { return l - 1 + static_cast<int>(rng.uniform_below(3)); }

}  // namespace

BlockSequence sample_block_sequence(int l, std::size_t n, std::uint64_t seed) {
    check_model_parameters(l);
    if (n < 1) throw InvalidParameter("n must be >= 1");
    Rng rng(seed);
    const int first = rng.bit();
    std::vector<int> lengths;
    lengths.reserve(n / static_cast<std::size_t>(l - 1) + 2);
    std::size_t covered = 0;
    while (covered < n) {
        const int len = draw_length(rng, l);
        lengths.push_back(len);
        covered += static_cast<std::size_t>(len);
    }
    return BlockSequence(first, std::move(lengths), n);
}

std::vector<int> sample_block_lengths(int l, std::size_t count, std::uint64_t seed) {
    check_model_parameters(l);
    Rng rng(seed);
    (void)rng.bit();  // first symbol, drawn first in sample_block_sequence as well
    std::vector<int> lengths(count);
    for (auto& len : lengths) len = draw_length(rng, l);
    return lengths;
}

std::string materialize(const BlockSequence& bs) {
    std::string out;
    out.reserve(bs.n());
    for (std::size_t b = 0; b < bs.stored_blocks(); ++b)
        out.append(bs.visible_length(b), static_cast<char>('0' + bs.block_symbol(b)));
    return out;
}

RenewalStats::RenewalStats(const BlockSequence& bs) : n_(bs.n()) {
    sums_.reserve(bs.stored_blocks());
    std::size_t s = 0;
    for (int len : bs.block_lengths()) {
        s += static_cast<std::size_t>(len);
        sums_.push_back(s);
    }
}

std::size_t RenewalStats::block_count_at(std::size_t t) const {
    if (t > n_) throw InvalidParameter("block count queried beyond the first n bits");
    return static_cast<std::size_t>(std::upper_bound(sums_.begin(), sums_.end(), t) - sums_.begin());
}

RenewalStats renewal_stats(const BlockSequence& bs) { return RenewalStats(bs); }

Interval block_count_interval(std::size_t n, int l) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    if (l < 1) throw InvalidParameter("l must be positive");
    const double centre = static_cast<double>(n) / l;
    const double half = std::pow(static_cast<double>(n), 0.6);
    return {centre - half, centre + half};
}

std::string to_text(const BlockSequence& bs) {
    std::string out = std::to_string(bs.first_symbol());
    out += ';';
    for (std::size_t i = 0; i < bs.stored_blocks(); ++i) {
        if (i) out += ',';
        out += std::to_string(bs.block_lengths()[i]);
    }
    out += ';';
    out += std::to_string(bs.n());
    return out;
}

namespace {

template <typename T>
T parse_number(std::string_view s, const char* what) {
    T value{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end || s.empty())
        throw InvalidParameter(std::string("malformed ") + what + ": '" + std::string(s) + "'");
    return value;
}

}  // namespace

BlockSequence block_sequence_from_text(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r' || line.back() == ' '))
        line.remove_suffix(1);
    const auto a = line.find(';');
    const auto b = line.rfind(';');
    if (a == std::string_view::npos || a == b)
        throw InvalidParameter("block sequence text must have the form first;lengths;n");
    const int first = parse_number<int>(line.substr(0, a), "first symbol");
    const auto n = parse_number<std::size_t>(line.substr(b + 1), "truncation length");
    std::vector<int> lengths;
    std::string_view rest = line.substr(a + 1, b - a - 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        lengths.push_back(parse_number<int>(rest.substr(0, comma), "block length"));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return BlockSequence(first, std::move(lengths), n);
}

}  // namespace blocklcs
