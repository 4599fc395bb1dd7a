#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace egfp {

enum class Sign : std::uint8_t { plus, minus };

/// A signed block index from { +0, ..., +m, -0, ..., -m }.
///
/// +0 and -0 are distinct: the elementary matrix attached to -0 is the
/// inverse of the one attached to 0, so a plain integer cannot encode both.
struct SignedIndex {
    Sign sign = Sign::plus;
    int magnitude = 0; // >= 0

    friend bool operator==(const SignedIndex&, const SignedIndex&) = default;
    // Orders by value: ... < -1 < -0 and 0 < 1 < ...; minus class below plus.
    friend std::strong_ordering operator<=>(const SignedIndex& a, const SignedIndex& b);

    bool is_plus() const { return sign == Sign::plus; }
    bool is_minus() const { return sign == Sign::minus; }

    SignedIndex negated() const { return {is_plus() ? Sign::minus : Sign::plus, magnitude}; }

    /// Successor within the sign class: s -> s+1, -s -> -(s-1). -0 has none.
    std::optional<SignedIndex> successor() const;

    std::string str() const; // "3" / "-3" / "-0"
};

inline SignedIndex pos(int k) { return {Sign::plus, k}; }
inline SignedIndex neg(int k) { return {Sign::minus, k}; }

/// An ordered tuple of signed indices, possibly empty. Immutable by convention:
/// all operations return new tuples.
class IndexTuple {
public:
    IndexTuple() = default;
    explicit IndexTuple(std::vector<SignedIndex> entries) : entries_(std::move(entries)) {}
    IndexTuple(std::initializer_list<SignedIndex> entries) : entries_(entries) {}

    /// Builds from plain integers; negative values map to the minus class.
    /// Cannot express -0 (use neg(0) with the vector constructor for that).
    static IndexTuple of(std::initializer_list<int> values);
    static IndexTuple of(const std::vector<int>& values);

    /// The contiguous range (k, k+1, ..., l); empty when k > l.
    static IndexTuple range(int k, int l);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const SignedIndex& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<SignedIndex>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool contains(SignedIndex t) const;
    bool all_plus() const;
    bool all_minus() const;
    /// True when every entry has the same sign class (vacuously true if empty).
    bool single_class() const { return all_plus() || all_minus(); }
    int max_magnitude() const; // 0 for the empty tuple

    IndexTuple reversed() const;
    IndexTuple negated() const;
    IndexTuple shifted(int q) const; // entry values + q; must stay in one class
    IndexTuple concat(const IndexTuple& other) const;

    /// Entries with duplicates removed (first occurrence kept).
    std::vector<SignedIndex> value_set() const;
    /// True when no index occurs twice.
    bool is_simple() const;

    friend bool operator==(const IndexTuple&, const IndexTuple&) = default;

    std::string str() const; // "(3,-0,1)"

private:
    std::vector<SignedIndex> entries_;
};

IndexTuple concat(const IndexTuple& a, const IndexTuple& b);
IndexTuple concat(const IndexTuple& a, const IndexTuple& b, const IndexTuple& c);

/// c_t(alpha): the largest p such that (t, t+1, ..., t+p) is a subtuple of
/// alpha (successors taken within the sign class), or -1 when t is absent.
/// Requires alpha and t to share one sign class.
int consecutions(const IndexTuple& alpha, SignedIndex t);

/// i_t(alpha): the largest q such that (t+q, ..., t+1, t) is a subtuple of
/// alpha, or -1 when t is absent.
int inversions(const IndexTuple& alpha, SignedIndex t);

/// Total consecutions of a permutation of {0:m-1}: the number of k with
/// k before k+1 in alpha. total_inversions is the complement (m-1) - c.
int total_consecutions(const IndexTuple& alpha);
int total_inversions(const IndexTuple& alpha);

/// Successor Infix Property: every pair of equal entries has the successor
/// index strictly between them.
bool satisfies_sip(const IndexTuple& alpha);

enum class StandardKind { column, row };

/// The unique equivalent tuple in column/row standard form. Computed by
/// exhaustively commuting adjacent entries whose magnitudes differ by more
/// than one (at most O(len^2) swaps). Requires the SIP.
IndexTuple standard_form(const IndexTuple& alpha, StandardKind kind);

/// True iff the two tuples have equal Fiedler products, decided structurally
/// via column-standard-form equality. Requires SIP tuples of one sign class.
bool is_equivalent(const IndexTuple& alpha, const IndexTuple& beta);

/// End indices of a sub-permutation of {0:m-1} or {-m:-1}: members whose
/// predecessor or successor value is missing, excluding 0 resp. -m.
std::vector<SignedIndex> end_indices(const IndexTuple& alpha, int m);

std::ostream& operator<<(std::ostream& os, const SignedIndex& t);
std::ostream& operator<<(std::ostream& os, const IndexTuple& alpha);

} // namespace egfp
