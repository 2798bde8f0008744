#ifndef MZV_INDEXSETS_HPP
#define MZV_INDEXSETS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mzv/errors.hpp"

namespace mzv {

// One order constraint between adjacent tuple entries.
enum class Letter : std::uint8_t { LE, EQ };

// Nonempty word over {LE, EQ}; a word of length d constrains (d+1)-tuples.
class IndexWord {
public:
    explicit IndexWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
        if (letters_.empty()) throw contract_error("index word must be nonempty");
    }

    static IndexWord repeat(Letter l, std::size_t n) {
        if (n == 0) throw contract_error("index word must be nonempty");
        return IndexWord(std::vector<Letter>(n, l));
    }
    // (a^na, b^nb) with either block possibly empty, but not both.
    static IndexWord blocks(Letter a, std::size_t na, Letter b, std::size_t nb) {
        std::vector<Letter> ls;
        ls.insert(ls.end(), na, a);
        ls.insert(ls.end(), nb, b);
        return IndexWord(std::move(ls));
    }

    std::size_t length() const { return letters_.size(); }
    std::size_t tuple_size() const { return letters_.size() + 1; }
    Letter at(std::size_t i) const { return letters_.at(i); }
    const std::vector<Letter>& letters() const { return letters_; }

    std::string to_string() const {
        std::string s;
        for (Letter l : letters_) s += (l == Letter::LE ? "<=" : "=");
        return s;
    }

private:
    std::vector<Letter> letters_;
};

using Tuple = std::vector<long>;

// The finite slice S(word) ∩ [0,N]^{d+1}, or its m_i ≠ m_j restriction,
// with tuples in strictly increasing lexicographic order.
struct TupleSetSlice {
    IndexWord word;
    long bound = 0;
    // 1-based restriction indices (i < j), empty for the unrestricted set.
    std::optional<std::pair<std::size_t, std::size_t>> restriction;
    std::vector<Tuple> tuples;

    std::size_t size() const { return tuples.size(); }
    bool contains(const Tuple& t) const {
        return std::binary_search(tuples.begin(), tuples.end(), t);
    }
};

namespace detail {

inline bool satisfies(const IndexWord& w, const Tuple& t) {
    for (std::size_t p = 0; p + 1 < t.size(); ++p) {
        if (w.at(p) == Letter::LE ? t[p] > t[p + 1] : t[p] != t[p + 1]) return false;
    }
    return true;
}

// Depth-first enumeration of S(w) ∩ [0,bound]^{d+1} in lexicographic order.
template <typename Fn>
void for_each_chain(const IndexWord& w, long bound, Fn&& fn) {
    if (bound < 0) return;
    const std::size_t n = w.tuple_size();
    Tuple t(n, 0);
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == n) {
            fn(t);
            return;
        }
        long lo, hi;
        if (pos == 0) {
            lo = 0;
            hi = bound;
        } else if (w.at(pos - 1) == Letter::EQ) {
            lo = hi = t[pos - 1];
        } else {
            lo = t[pos - 1];
            hi = bound;
        }
        for (long v = lo; v <= hi; ++v) {
            t[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
}

}  // namespace detail

// S(word) ∩ [0,N]^{d+1}, lexicographically sorted.
inline TupleSetSlice enumerate_chain_tuples(const IndexWord& word, long bound) {
    if (bound < -1) throw contract_error("bound must be >= 0 (or -1 for the empty slice)");
    TupleSetSlice slice{word, bound, std::nullopt, {}};
    detail::for_each_chain(word, bound, [&](const Tuple& t) { slice.tuples.push_back(t); });
    return slice;
}

// The m_i ≠ m_j subset of S(word) ∩ [0,N]^{d+1}; i and j are 1-based with i < j.
inline TupleSetSlice enumerate_restricted(const IndexWord& word, std::size_t i, std::size_t j,
                                          long bound) {
    if (!(1 <= i && i < j && j <= word.tuple_size()))
        throw contract_error("restriction indices must satisfy 1 <= i < j <= d+1");
    TupleSetSlice slice{word, bound, std::make_pair(i, j), {}};
    detail::for_each_chain(word, bound, [&](const Tuple& t) {
        if (t[i - 1] != t[j - 1]) slice.tuples.push_back(t);
    });
    return slice;
}

namespace detail {

// Like enumerate_restricted but allows the degenerate i == j case, which is
// the empty set (m_i ≠ m_i never holds). The set-decomposition lemma needs it
// at d = 2, where S_{1,d-1} collapses to S_{1,1}.
inline TupleSetSlice enumerate_restricted_or_empty(const IndexWord& word, std::size_t i,
                                                   std::size_t j, long bound) {
    if (i == j) return TupleSetSlice{word, bound, std::nullopt, {}};
    return enumerate_restricted(word, i, j, bound);
}

}  // namespace detail

struct DecompositionCheck {
    bool ok = false;
    // Sizes of the left-hand set and the two right-hand pieces (piece2 may be
    // the unrestricted S(=^{d-1}) for part 3).
    std::size_t lhs_size = 0, piece1_size = 0, piece2_size = 0;
    std::optional<Tuple> witness;  // a tuple violating disjointness or the union
    std::string detail;
};

// Part 1: S_{1,d}(<=^{d-1}) = S_{1,d-1}(<=^{d-1}) ⊔ S_{d-1,d}(=^{d-2},<=)
// Part 2: S_{1,d}(<=^{d-1}) = S_{2,d}(<=^{d-1}) ⊔ S_{1,2}(<=,=^{d-2})
// Part 3: S_{1,d}(<=^{d-1}) ⊔ S(=^{d-1}) = S(<=^{d-1})
// All are checked on the truncation [0,N]^d: membership statements, so slice
// equality for every N is equivalent to the full identity.
inline DecompositionCheck verify_set_decomposition(int part, std::size_t d, long bound) {
    if (d < 2) throw contract_error("set decomposition requires depth d >= 2");
    if (part < 1 || part > 3) throw contract_error("part must be 1, 2 or 3");
    if (bound < 0) throw contract_error("bound must be >= 0");

    const IndexWord all_le = IndexWord::repeat(Letter::LE, d - 1);
    TupleSetSlice lhs = enumerate_restricted(all_le, 1, d, bound);
    TupleSetSlice p1{all_le, bound, std::nullopt, {}}, p2 = p1;

    if (part == 1) {
        p1 = detail::enumerate_restricted_or_empty(all_le, 1, d - 1, bound);
        p2 = enumerate_restricted(IndexWord::blocks(Letter::EQ, d - 2, Letter::LE, 1), d - 1, d,
                                  bound);
    } else if (part == 2) {
        p1 = detail::enumerate_restricted_or_empty(all_le, 2, d, bound);
        p2 = enumerate_restricted(IndexWord::blocks(Letter::LE, 1, Letter::EQ, d - 2), 1, 2, bound);
    } else {
        // Part 3 recombines into the full chain set.
        p1 = lhs;
        p2 = enumerate_chain_tuples(IndexWord::repeat(Letter::EQ, d - 1), bound);
        lhs = enumerate_chain_tuples(all_le, bound);
    }

    DecompositionCheck out;
    out.lhs_size = lhs.size();
    out.piece1_size = p1.size();
    out.piece2_size = p2.size();

    for (const Tuple& t : p1.tuples) {
        if (p2.contains(t)) {
            out.witness = t;
            out.detail = "pieces are not disjoint";
            return out;
        }
    }
    if (p1.size() + p2.size() != lhs.size()) {
        out.detail = "cardinalities do not add";
        // Find a concrete witness on whichever side disagrees.
        for (const Tuple& t : lhs.tuples) {
            if (!p1.contains(t) && !p2.contains(t)) {
                out.witness = t;
                return out;
            }
        }
        for (const Tuple& t : p1.tuples)
            if (!lhs.contains(t)) {
                out.witness = t;
                return out;
            }
        for (const Tuple& t : p2.tuples)
            if (!lhs.contains(t)) {
                out.witness = t;
                return out;
            }
        return out;
    }
    for (const Tuple& t : lhs.tuples) {
        if (!p1.contains(t) && !p2.contains(t)) {
            out.witness = t;
            out.detail = "union misses a tuple";
            return out;
        }
    }
    out.ok = true;
    return out;
}

// binomial(n, k) in exact integer arithmetic (small arguments only).
inline unsigned long long binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned long long r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace mzv

#endif
