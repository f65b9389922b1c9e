#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcsp
{

struct cap_exceeded : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct precondition_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// dynamic bitset, one word fast path for small domains
class Bitset
{
public:
    Bitset() = default;
    explicit Bitset(int n, bool full = false) : n_(n), w_((n + 63) / 64, 0)
    {
        if (full)
            set_all();
    }

    int size() const { return n_; }

    void set(int i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void set_all()
    {
        for (auto & w : w_)
            w = ~uint64_t{0};
        trim();
    }
    void reset_all()
    {
        for (auto & w : w_)
            w = 0;
    }

    int count() const
    {
        int c = 0;
        for (auto w : w_)
            c += __builtin_popcountll(w);
        return c;
    }
    bool none() const
    {
        for (auto w : w_)
            if (w)
                return false;
        return true;
    }
    bool any() const { return ! none(); }

    int first() const
    {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i])
                return int(i) * 64 + __builtin_ctzll(w_[i]);
        return -1;
    }
    int next(int i) const
    {
        ++i;
        if (i >= n_)
            return -1;
        size_t b = size_t(i) >> 6;
        uint64_t w = w_[b] & (~uint64_t{0} << (i & 63));
        while (true) {
            if (w)
                return int(b) * 64 + __builtin_ctzll(w);
            if (++b >= w_.size())
                return -1;
            w = w_[b];
        }
    }

    Bitset & operator&=(const Bitset & o)
    {
        for (size_t i = 0; i < w_.size(); ++i)
            w_[i] &= o.w_[i];
        return *this;
    }
    Bitset & operator|=(const Bitset & o)
    {
        for (size_t i = 0; i < w_.size(); ++i)
            w_[i] |= o.w_[i];
        return *this;
    }
    bool intersects(const Bitset & o) const
    {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i])
                return true;
        return false;
    }
    bool operator==(const Bitset & o) const = default;

private:
    void trim()
    {
        if (n_ & 63)
            w_.back() &= (uint64_t{1} << (n_ & 63)) - 1;
    }
    int n_ = 0;
    std::vector<uint64_t> w_;
};

// splitmix64-based deterministic generator; splittable by name so parallel
// sweeps stay reproducible regardless of scheduling
class Rng
{
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next()
    {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound) by rejection
    uint64_t below(uint64_t bound)
    {
        uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
        uint64_t v;
        do
            v = next();
        while (v >= limit);
        return v % bound;
    }

    Rng split(const std::string & name) const
    {
        uint64_t h = 0xcbf29ce484222325ull ^ state_;
        for (unsigned char c : name) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return Rng(h);
    }
    Rng split(uint64_t index) const
    {
        Rng r(state_ ^ (0x9e3779b97f4a7c15ull * (index + 1)));
        r.next();
        return r;
    }

private:
    uint64_t state_;
};

inline constexpr uint64_t default_seed = 20240817ull;

}
