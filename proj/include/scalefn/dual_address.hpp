#ifndef SCALEFN_DUAL_ADDRESS_HPP
#define SCALEFN_DUAL_ADDRESS_HPP

#include <string>

#include "scalefn/word.hpp"

namespace scalefn {

class MarkovMap;

// Eventually periodic left-infinite sequence ... B B T, read right to left:
// position 0 is the rightmost symbol.  Stored in canonical form (shortest
// tail, then shortest repeating block), so equality is structural equality.
class DualAddress {
  public:
    DualAddress() = default;
    // tail and block given as ordinary words (left to right); block nonempty.
    DualAddress(const Word& tail, const Word& block);

    // `tail|block` with comma-separated symbols, e.g. "+2|-1" or "|-1".
    static DualAddress parse(const std::string& literal);
    std::string format() const;

    const std::vector<Symbol>& tail_rev() const { return tail_rev_; }
    const std::vector<Symbol>& block_rev() const { return block_rev_; }
    Word tail_word() const;
    Word block_word() const;

    int tail_length() const { return static_cast<int>(tail_rev_.size()); }
    int period() const { return static_cast<int>(block_rev_.size()); }
    bool purely_periodic() const { return tail_rev_.empty(); }

    // Symbol at position j from the right (j >= 0).
    const Symbol& at(int j) const;

    // Rightmost n symbols as a word.
    Word truncate(int n) const;

    // Knock off the rightmost symbol; result is canonical.
    DualAddress shifted() const;

    // Suitability of every truncation, including both junctions; throws.
    void require_admissible(const MarkovMap& map) const;
    bool admissible(const MarkovMap& map) const;

    friend bool operator==(const DualAddress& a, const DualAddress& b) {
        return a.tail_rev_ == b.tail_rev_ && a.block_rev_ == b.block_rev_;
    }
    friend bool operator!=(const DualAddress& a, const DualAddress& b) { return !(a == b); }

  private:
    std::vector<Symbol> tail_rev_;  // s_0 .. s_{p-1}
    std::vector<Symbol> block_rev_; // s_p .. s_{p+q-1}

    void canonicalize();
};

// head . block . block . ...  read left to right.
class ForwardAddress {
  public:
    ForwardAddress() = default;
    ForwardAddress(Word head, Word block);

    static ForwardAddress parse(const std::string& literal); // `head|block`
    std::string format() const;

    const Word& head() const { return head_; }
    const Word& block() const { return block_; }

    const Symbol& at(int i) const;
    Word prefix(int n) const;

    void require_admissible(const MarkovMap& map) const;

  private:
    Word head_;
    Word block_;
};

} // namespace scalefn

#endif
