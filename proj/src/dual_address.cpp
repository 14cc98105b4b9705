#include "scalefn/dual_address.hpp"

#include <algorithm>

#include "scalefn/errors.hpp"
#include "scalefn/markov_map.hpp"

namespace scalefn {

DualAddress::DualAddress(const Word& tail, const Word& block) {
    if (block.empty()) throw ParseError("dual address needs a nonempty repeating block");
    tail_rev_.assign(tail.rbegin(), tail.rend());
    block_rev_.assign(block.rbegin(), block.rend());
    canonicalize();
}

void DualAddress::canonicalize() {
    // absorb tail symbols that already follow the periodic pattern
    while (!tail_rev_.empty() && tail_rev_.back() == block_rev_.back()) {
        block_rev_.pop_back();
        block_rev_.insert(block_rev_.begin(), tail_rev_.back());
        tail_rev_.pop_back();
    }
    // primitive root of the block
    const int q = static_cast<int>(block_rev_.size());
    for (int d = 1; d < q; ++d) {
        if (q % d != 0) continue;
        bool periodic = true;
        for (int i = d; i < q && periodic; ++i)
            periodic = block_rev_[static_cast<size_t>(i)] ==
                       block_rev_[static_cast<size_t>(i % d)];
        if (periodic) {
            block_rev_.resize(static_cast<size_t>(d));
            break;
        }
    }
}

DualAddress DualAddress::parse(const std::string& literal) {
    const size_t bar = literal.find('|');
    if (bar == std::string::npos)
        throw ParseError("dual address literal must look like 'tail|block'");
    Word tail = parse_word(literal.substr(0, bar));
    Word block = parse_word(literal.substr(bar + 1));
    return DualAddress(tail, block);
}

std::string DualAddress::format() const {
    return format_word(tail_word()) + "|" + format_word(block_word());
}

Word DualAddress::tail_word() const { return Word(tail_rev_.rbegin(), tail_rev_.rend()); }
Word DualAddress::block_word() const { return Word(block_rev_.rbegin(), block_rev_.rend()); }

const Symbol& DualAddress::at(int j) const {
    const int p = tail_length();
    if (j < p) return tail_rev_[static_cast<size_t>(j)];
    return block_rev_[static_cast<size_t>((j - p) % period())];
}

Word DualAddress::truncate(int n) const {
    Word w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = at(n - 1 - i);
    return w;
}

DualAddress DualAddress::shifted() const {
    DualAddress out;
    if (!tail_rev_.empty()) {
        out.tail_rev_.assign(tail_rev_.begin() + 1, tail_rev_.end());
        out.block_rev_ = block_rev_;
    } else {
        out.block_rev_.assign(block_rev_.begin() + 1, block_rev_.end());
        out.block_rev_.push_back(block_rev_.front());
    }
    out.canonicalize();
    return out;
}

void DualAddress::require_admissible(const MarkovMap& map) const {
    const int p = tail_length(), q = period();
    // one period past the tail covers every distinct adjacent pair
    Word w = truncate(p + q + 1);
    map.require_suitable(w);
}

bool DualAddress::admissible(const MarkovMap& map) const {
    return map.suitable(truncate(tail_length() + period() + 1));
}

// ---------------------------------------------------------------------------

ForwardAddress::ForwardAddress(Word head, Word block)
    : head_(std::move(head)), block_(std::move(block)) {
    if (block_.empty()) throw ParseError("forward address needs a nonempty repeating block");
}

ForwardAddress ForwardAddress::parse(const std::string& literal) {
    const size_t bar = literal.find('|');
    if (bar == std::string::npos)
        throw ParseError("forward address literal must look like 'head|block'");
    return ForwardAddress(parse_word(literal.substr(0, bar)), parse_word(literal.substr(bar + 1)));
}

std::string ForwardAddress::format() const {
    return format_word(head_) + "|" + format_word(block_);
}

const Symbol& ForwardAddress::at(int i) const {
    const int h = static_cast<int>(head_.size());
    if (i < h) return head_[static_cast<size_t>(i)];
    return block_[static_cast<size_t>((i - h) % block_.size())];
}

Word ForwardAddress::prefix(int n) const {
    Word w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = at(i);
    return w;
}

void ForwardAddress::require_admissible(const MarkovMap& map) const {
    map.require_suitable(prefix(static_cast<int>(head_.size() + 2 * block_.size())));
}

} // namespace scalefn
