#pragma once

// Residues modulo a prime and subsets of Z_p stored as p-bit vectors.

#include <sumsets/error.hpp>

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sumsets {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

class PrimeModulus {
public:
    static constexpr std::uint64_t max_value = (1ULL << 31) - 1;

    explicit PrimeModulus(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
        if (p < 3 || p > max_value || !is_prime(p)) {
            throw Error(ErrorKind::NotPrime, "modulus " + std::to_string(p) + " is not an odd prime below 2^31");
        }
    }

    std::uint32_t value() const noexcept { return p_; }

    std::uint32_t reduce(std::int64_t x) const noexcept {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    }
    std::uint32_t pow(std::uint32_t base, std::uint64_t e) const noexcept {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    /// Multiplicative inverse via Fermat; d must be a unit.
    std::uint32_t inverse(std::int64_t d) const {
        std::uint32_t r = reduce(d);
        if (r == 0) throw Error(ErrorKind::DomainError, "0 has no inverse modulo " + std::to_string(p_));
        return pow(r, p_ - 2);
    }

    friend bool operator==(PrimeModulus, PrimeModulus) = default;

private:
    std::uint32_t p_;
};

inline void require_same_modulus(PrimeModulus a, PrimeModulus b) {
    if (!(a == b)) {
        throw Error(ErrorKind::ModulusMismatch,
                    "moduli " + std::to_string(a.value()) + " and " + std::to_string(b.value()) + " differ");
    }
}

/// A subset of Z_p. Bit r of the vector is residue r; bits at or above p are
/// always zero.
class ResidueSet {
public:
    using Word = std::uint64_t;
    static constexpr unsigned word_bits = 64;

    explicit ResidueSet(PrimeModulus m) : mod_(m), words_((m.value() + word_bits - 1) / word_bits, 0) {}

    static ResidueSet full(PrimeModulus m) {
        ResidueSet s(m);
        std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
        s.trim();
        return s;
    }

    /// Members must already lie in [0, p).
    static ResidueSet from_residues(PrimeModulus m, std::span<const std::int64_t> residues) {
        ResidueSet s(m);
        for (std::int64_t r : residues) {
            if (r < 0 || r >= static_cast<std::int64_t>(m.value())) {
                throw Error(ErrorKind::InvalidResidue,
                            "residue " + std::to_string(r) + " outside [0, " + std::to_string(m.value()) + ")");
            }
            s.insert(static_cast<std::uint32_t>(r));
        }
        return s;
    }
    static ResidueSet of(PrimeModulus m, std::initializer_list<std::int64_t> residues) {
        return from_residues(m, std::span<const std::int64_t>(residues.begin(), residues.size()));
    }
    /// Arbitrary integers, reduced mod p.
    static ResidueSet from_integers(PrimeModulus m, std::span<const std::int64_t> values) {
        ResidueSet s(m);
        for (std::int64_t v : values) s.insert(m.reduce(v));
        return s;
    }

    /// Bit mask form for p <= 64.
    static ResidueSet from_mask(PrimeModulus m, std::uint64_t mask) {
        if (m.value() > 64) throw Error(ErrorKind::DomainError, "mask form needs p <= 64");
        ResidueSet s(m);
        s.words_[0] = mask;
        if (s.trim()) throw Error(ErrorKind::InvalidResidue, "mask has bits at or above p");
        return s;
    }
    std::uint64_t to_mask() const {
        if (mod_.value() > 64) throw Error(ErrorKind::DomainError, "mask form needs p <= 64");
        return words_[0];
    }

    PrimeModulus modulus() const noexcept { return mod_; }
    std::uint32_t p() const noexcept { return mod_.value(); }
    std::span<const Word> words() const noexcept { return words_; }

    bool contains(std::uint32_t r) const noexcept {
        return r < p() && ((words_[r / word_bits] >> (r % word_bits)) & 1U);
    }
    void insert(std::uint32_t r) { check(r); words_[r / word_bits] |= Word{1} << (r % word_bits); }
    void erase(std::uint32_t r) { check(r); words_[r / word_bits] &= ~(Word{1} << (r % word_bits)); }

    std::size_t size() const noexcept {
        std::size_t n = 0;
        for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool empty() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
    }
    bool is_full() const noexcept { return size() == p(); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            Word w = words_[i];
            while (w) {
                unsigned b = static_cast<unsigned>(std::countr_zero(w));
                f(static_cast<std::uint32_t>(i * word_bits + b));
                w &= w - 1;
            }
        }
    }
    std::vector<std::uint32_t> elements() const {
        std::vector<std::uint32_t> out;
        out.reserve(size());
        for_each([&](std::uint32_t r) { out.push_back(r); });
        return out;
    }

    bool subset_of(const ResidueSet& other) const {
        require_same_modulus(mod_, other.mod_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    /// {(a + t) mod p : a in this}.
    ResidueSet rotated(std::uint32_t t) const {
        t %= p();
        if (t == 0) return *this;
        ResidueSet out(mod_);
        or_shifted_left(out.words_, t);
        or_shifted_right(out.words_, p() - t);
        out.trim();
        return out;
    }
    /// this |= rotated(t) without the temporary.
    void or_rotated(const ResidueSet& src, std::uint32_t t) {
        require_same_modulus(mod_, src.mod_);
        t %= p();
        if (t == 0) {
            for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= src.words_[i];
            return;
        }
        src.or_shifted_left(words_, t);
        src.or_shifted_right(words_, p() - t);
        trim();
    }

    ResidueSet& operator|=(const ResidueSet& o) { return apply(o, [](Word a, Word b) { return a | b; }); }
    ResidueSet& operator&=(const ResidueSet& o) { return apply(o, [](Word a, Word b) { return a & b; }); }
    ResidueSet& operator-=(const ResidueSet& o) { return apply(o, [](Word a, Word b) { return a & ~b; }); }
    friend ResidueSet operator|(ResidueSet a, const ResidueSet& b) { return a |= b; }
    friend ResidueSet operator&(ResidueSet a, const ResidueSet& b) { return a &= b; }
    friend ResidueSet operator-(ResidueSet a, const ResidueSet& b) { return a -= b; }

    friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
        return a.mod_ == b.mod_ && a.words_ == b.words_;
    }
    /// Orders sets by the integer value of their bit vector (residue p-1 most
    /// significant). Only sets over the same modulus are comparable.
    friend std::strong_ordering operator<=>(const ResidueSet& a, const ResidueSet& b) {
        require_same_modulus(a.mod_, b.mod_);
        for (std::size_t i = a.words_.size(); i-- > 0;) {
            if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
        }
        return std::strong_ordering::equal;
    }

    /// "0,2,3"; the empty set serializes to "".
    std::string to_list() const {
        std::string out;
        for_each([&](std::uint32_t r) {
            if (!out.empty()) out += ',';
            out += std::to_string(r);
        });
        return out;
    }
    /// "0x" followed by ceil(p/4) lowercase hex digits, most significant first.
    std::string to_hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::size_t nibbles = (p() + 3) / 4;
        std::string out = "0x";
        out.reserve(2 + nibbles);
        for (std::size_t n = nibbles; n-- > 0;) {
            std::size_t bit = n * 4;
            unsigned v = static_cast<unsigned>((words_[bit / word_bits] >> (bit % word_bits)) & 0xF);
            out += digits[v];
        }
        return out;
    }

    static ResidueSet from_hex(PrimeModulus m, std::string_view text) {
        if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
        if (text.empty()) throw Error(ErrorKind::ParseError, "empty hex literal");
        ResidueSet s(m);
        std::size_t bit = 0;
        for (std::size_t i = text.size(); i-- > 0; bit += 4) {
            char c = text[i];
            unsigned v;
            if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
            else throw Error(ErrorKind::ParseError, std::string("bad hex digit '") + c + "'");
            for (unsigned j = 0; j < 4; ++j) {
                if (!((v >> j) & 1U)) continue;
                std::size_t r = bit + j;
                if (r >= m.value()) throw Error(ErrorKind::InvalidResidue, "hex literal sets residue " + std::to_string(r));
                s.insert(static_cast<std::uint32_t>(r));
            }
        }
        return s;
    }

    static ResidueSet from_list(PrimeModulus m, std::string_view text) {
        ResidueSet s(m);
        std::size_t pos = 0;
        auto trim_view = [](std::string_view v) {
            while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
            while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
            return v;
        };
        if (trim_view(text).empty()) return s;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string_view item = trim_view(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
            if (item.empty()) throw Error(ErrorKind::ParseError, "empty item in residue list");
            std::uint64_t v = 0;
            for (char c : item) {
                if (c < '0' || c > '9') throw Error(ErrorKind::ParseError, "bad residue '" + std::string(item) + "'");
                v = v * 10 + static_cast<unsigned>(c - '0');
                if (v >= m.value()) break;
            }
            if (v >= m.value()) {
                throw Error(ErrorKind::InvalidResidue,
                            "residue " + std::string(item) + " outside [0, " + std::to_string(m.value()) + ")");
            }
            s.insert(static_cast<std::uint32_t>(v));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        return s;
    }

    /// Comma-separated residues, or a 0x-prefixed hex bit mask.
    static ResidueSet parse(PrimeModulus m, std::string_view text) {
        if (text.starts_with("0x") || text.starts_with("0X")) return from_hex(m, text);
        return from_list(m, text);
    }

private:
    void check(std::uint32_t r) const {
        if (r >= p()) throw Error(ErrorKind::InvalidResidue, "residue " + std::to_string(r) + " >= p");
    }
    // Clears bits at or above p; reports whether any were set.
    bool trim() {
        unsigned tail = p() % word_bits;
        if (tail == 0) return false;
        Word mask = (Word{1} << tail) - 1;
        bool dirty = (words_.back() & ~mask) != 0;
        words_.back() &= mask;
        return dirty;
    }
    template <class Op>
    ResidueSet& apply(const ResidueSet& o, Op op) {
        require_same_modulus(mod_, o.mod_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = op(words_[i], o.words_[i]);
        return *this;
    }
    // dst |= (this << s), truncation to p bits left to the caller.
    void or_shifted_left(std::vector<Word>& dst, std::uint32_t s) const {
        std::size_t ws = s / word_bits;
        unsigned bs = s % word_bits;
        for (std::size_t i = dst.size(); i-- > ws;) {
            Word v = words_[i - ws] << bs;
            if (bs && i - ws > 0) v |= words_[i - ws - 1] >> (word_bits - bs);
            dst[i] |= v;
        }
    }
    // dst |= (this >> s).
    void or_shifted_right(std::vector<Word>& dst, std::uint32_t s) const {
        std::size_t ws = s / word_bits;
        unsigned bs = s % word_bits;
        for (std::size_t i = 0; i + ws < words_.size(); ++i) {
            Word v = words_[i + ws] >> bs;
            if (bs && i + ws + 1 < words_.size()) v |= words_[i + ws + 1] << (word_bits - bs);
            dst[i] |= v;
        }
    }

    PrimeModulus mod_;
    std::vector<Word> words_;
};

// ---------------------------------------------------------------------------
// Set algebra

inline ResidueSet negate(const ResidueSet& a) {
    ResidueSet out(a.modulus());
    a.for_each([&](std::uint32_t x) { out.insert(a.modulus().neg(x)); });
    return out;
}

/// d * A for any integer d; d = 0 collapses a nonempty set to {0}.
inline ResidueSet dilate(std::int64_t d, const ResidueSet& a) {
    PrimeModulus m = a.modulus();
    std::uint32_t dr = m.reduce(d);
    ResidueSet out(m);
    a.for_each([&](std::uint32_t x) { out.insert(m.mul(dr, x)); });
    return out;
}

inline ResidueSet translate(std::int64_t t, const ResidueSet& a) { return a.rotated(a.modulus().reduce(t)); }

inline ResidueSet complement(const ResidueSet& a) { return ResidueSet::full(a.modulus()) - a; }

// ---------------------------------------------------------------------------
// Interval partitions R_{y,L}

struct IntervalPartition {
    PrimeModulus modulus;
    std::uint32_t offset;
    std::uint32_t length;
    /// intervals[i] = {(iL+1+y), ..., ((i+1)L+y)} mod p, in that order.
    std::vector<std::vector<std::uint32_t>> intervals;
    std::vector<std::uint32_t> remainder;

    std::size_t count() const noexcept { return intervals.size(); }

    ResidueSet interval_set(std::size_t i) const {
        ResidueSet s(modulus);
        for (auto r : intervals.at(i)) s.insert(r);
        return s;
    }
    ResidueSet remainder_set() const {
        ResidueSet s(modulus);
        for (auto r : remainder) s.insert(r);
        return s;
    }
    /// Index of the interval holding r, or nullopt if r is in the remainder.
    std::optional<std::size_t> interval_of(std::uint32_t r) const {
        std::uint32_t p = modulus.value();
        // position of r counted from y+1
        std::uint32_t pos = modulus.add(r % p, modulus.neg(modulus.add(offset, 1)));
        std::size_t i = pos / length;
        if (i < intervals.size()) return i;
        return std::nullopt;
    }
    /// Union of the intervals whose bit is set in `chosen` (bit i = interval i).
    ResidueSet union_of(const std::vector<bool>& chosen) const {
        ResidueSet s(modulus);
        for (std::size_t i = 0; i < intervals.size() && i < chosen.size(); ++i)
            if (chosen[i])
                for (auto r : intervals[i]) s.insert(r);
        return s;
    }
};

inline IntervalPartition make_partition(PrimeModulus m, std::int64_t y, std::int64_t length) {
    if (length < 1 || length > static_cast<std::int64_t>(m.value())) {
        throw Error(ErrorKind::InvalidLength,
                    "interval length " + std::to_string(length) + " outside [1, " + std::to_string(m.value()) + "]");
    }
    IntervalPartition part{m, m.reduce(y), static_cast<std::uint32_t>(length), {}, {}};
    const std::uint32_t p = m.value();
    const std::uint32_t L = part.length;
    const std::uint32_t n = p / L;
    std::vector<bool> covered(p, false);
    part.intervals.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto& iv = part.intervals[i];
        iv.reserve(L);
        for (std::uint64_t j = std::uint64_t{i} * L + 1; j <= std::uint64_t{i + 1} * L; ++j) {
            std::uint32_t r = static_cast<std::uint32_t>((j + part.offset) % p);
            iv.push_back(r);
            covered[r] = true;
        }
    }
    for (std::uint32_t r = 0; r < p; ++r)
        if (!covered[r]) part.remainder.push_back(r);
    return part;
}

// ---------------------------------------------------------------------------
// Orbit canonical form

/// The smallest set (in the ResidueSet ordering) in the orbit of `a` under the
/// unit dilations, composed with all translations when requested.
inline ResidueSet canonical_form(const ResidueSet& a, bool use_translations) {
    const std::uint32_t p = a.p();
    ResidueSet best = a;
    for (std::uint32_t d = 1; d < p; ++d) {
        ResidueSet img = dilate(d, a);
        if (!use_translations) {
            if (img < best) best = img;
            continue;
        }
        for (std::uint32_t t = 0; t < p; ++t) {
            ResidueSet moved = img.rotated(t);
            if (moved < best) best = std::move(moved);
        }
    }
    return best;
}

}  // namespace sumsets
