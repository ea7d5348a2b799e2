#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace endslab {

// Fixed-universe subset, bit-indexed. Used for vertex sets of truncated
// graphs and for atom sets of finite scaled Boolean algebras.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t universe) : bits_(universe) {}

    static Bits full(std::size_t universe) {
        Bits b(universe);
        b.bits_.set();
        return b;
    }
    static Bits of(std::size_t universe, const std::vector<int>& members) {
        Bits b(universe);
        for (int m : members) b.insert(m);
        return b;
    }

    std::size_t universe() const { return bits_.size(); }
    std::size_t count() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }

    bool contains(int i) const {
        return i >= 0 && static_cast<std::size_t>(i) < bits_.size() && bits_.test(i);
    }
    void insert(int i) { bits_.set(i); }
    void erase(int i) { bits_.reset(i); }

    // -1 when empty
    int first() const {
        auto p = bits_.find_first();
        return p == boost::dynamic_bitset<std::uint64_t>::npos ? -1 : static_cast<int>(p);
    }
    int next(int i) const {
        auto p = bits_.find_next(static_cast<std::size_t>(i));
        return p == boost::dynamic_bitset<std::uint64_t>::npos ? -1 : static_cast<int>(p);
    }

    template <class F>
    void for_each(F&& f) const {
        for (int i = first(); i >= 0; i = next(i)) f(i);
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

    bool is_subset_of(const Bits& o) const { return bits_.is_subset_of(o.bits_); }
    bool intersects(const Bits& o) const { return bits_.intersects(o.bits_); }

    Bits complement() const {
        Bits r = *this;
        r.bits_.flip();
        return r;
    }

    Bits& operator|=(const Bits& o) { bits_ |= o.bits_; return *this; }
    Bits& operator&=(const Bits& o) { bits_ &= o.bits_; return *this; }
    Bits& operator^=(const Bits& o) { bits_ ^= o.bits_; return *this; }
    Bits& operator-=(const Bits& o) { bits_ -= o.bits_; return *this; }

    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
    friend Bits operator-(Bits a, const Bits& b) { return a -= b; }

    friend bool operator==(const Bits& a, const Bits& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const Bits& a, const Bits& b) { return !(a == b); }

    // Lexicographic on the sorted member list; gives reproducible orderings.
    friend bool operator<(const Bits& a, const Bits& b) {
        int x = a.first(), y = b.first();
        while (x >= 0 && y >= 0) {
            if (x != y) return x < y;
            x = a.next(x);
            y = b.next(y);
        }
        return x < 0 && y >= 0;
    }

private:
    boost::dynamic_bitset<std::uint64_t> bits_;
};

using VertexSet = Bits;

}  // namespace endslab
