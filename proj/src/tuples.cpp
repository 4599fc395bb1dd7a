#include "egfp/tuples.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace egfp {

std::strong_ordering operator<=>(const SignedIndex& a, const SignedIndex& b) {
    // Value order with -0 sitting between -1 and +0.
    auto key = [](const SignedIndex& t) {
        return t.is_plus() ? 2 * t.magnitude + 1 : -2 * t.magnitude;
    };
    return key(a) <=> key(b);
}

std::optional<SignedIndex> SignedIndex::successor() const {
    if (is_plus()) return SignedIndex{Sign::plus, magnitude + 1};
    if (magnitude == 0) return std::nullopt;
    return SignedIndex{Sign::minus, magnitude - 1};
}

std::string SignedIndex::str() const {
    return (is_minus() ? "-" : "") + std::to_string(magnitude);
}

IndexTuple IndexTuple::of(std::initializer_list<int> values) {
    return of(std::vector<int>(values));
}

IndexTuple IndexTuple::of(const std::vector<int>& values) {
    std::vector<SignedIndex> e;
    e.reserve(values.size());
    for (int v : values) e.push_back(v >= 0 ? pos(v) : neg(-v));
    return IndexTuple(std::move(e));
}

IndexTuple IndexTuple::range(int k, int l) {
    std::vector<SignedIndex> e;
    for (int v = k; v <= l; ++v) e.push_back(v >= 0 ? pos(v) : neg(-v));
    return IndexTuple(std::move(e));
}

bool IndexTuple::contains(SignedIndex t) const {
    return std::find(entries_.begin(), entries_.end(), t) != entries_.end();
}

bool IndexTuple::all_plus() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const SignedIndex& t) { return t.is_plus(); });
}

bool IndexTuple::all_minus() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const SignedIndex& t) { return t.is_minus(); });
}

int IndexTuple::max_magnitude() const {
    int m = 0;
    for (const auto& t : entries_) m = std::max(m, t.magnitude);
    return m;
}

IndexTuple IndexTuple::reversed() const {
    return IndexTuple(std::vector<SignedIndex>(entries_.rbegin(), entries_.rend()));
}

IndexTuple IndexTuple::negated() const {
    std::vector<SignedIndex> e;
    e.reserve(entries_.size());
    for (const auto& t : entries_) e.push_back(t.negated());
    return IndexTuple(std::move(e));
}

IndexTuple IndexTuple::shifted(int q) const {
    std::vector<SignedIndex> e;
    e.reserve(entries_.size());
    for (const auto& t : entries_) {
        int v = (t.is_plus() ? t.magnitude : -t.magnitude) + q;
        if (t.is_minus() && v > 0)
            throw std::invalid_argument("shift leaves the minus class: " + t.str());
        if (t.is_plus() && v < 0)
            throw std::invalid_argument("shift leaves the plus class: " + t.str());
        e.push_back(t.is_plus() ? pos(v) : neg(-v));
    }
    return IndexTuple(std::move(e));
}

IndexTuple IndexTuple::concat(const IndexTuple& other) const {
    std::vector<SignedIndex> e = entries_;
    e.insert(e.end(), other.entries_.begin(), other.entries_.end());
    return IndexTuple(std::move(e));
}

std::vector<SignedIndex> IndexTuple::value_set() const {
    std::vector<SignedIndex> out;
    for (const auto& t : entries_)
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return out;
}

bool IndexTuple::is_simple() const { return value_set().size() == entries_.size(); }

std::string IndexTuple::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ',';
        os << entries_[i].str();
    }
    os << ')';
    return os.str();
}

IndexTuple concat(const IndexTuple& a, const IndexTuple& b) { return a.concat(b); }
IndexTuple concat(const IndexTuple& a, const IndexTuple& b, const IndexTuple& c) {
    return a.concat(b).concat(c);
}

namespace {

void require_single_class(const IndexTuple& alpha, const char* who) {
    if (!alpha.single_class())
        throw std::invalid_argument(std::string(who) + ": mixed-sign tuple " + alpha.str());
}

void require_same_class(const IndexTuple& alpha, SignedIndex t, const char* who) {
    require_single_class(alpha, who);
    if (!alpha.empty() && alpha[0].sign != t.sign)
        throw std::invalid_argument(std::string(who) + ": index " + t.str() +
                                    " not in the sign class of " + alpha.str());
}

/// True when the two indices commute as elementary factors.
bool commutes(const SignedIndex& a, const SignedIndex& b) {
    return std::abs(a.magnitude - b.magnitude) > 1;
}

} // namespace

int consecutions(const IndexTuple& alpha, SignedIndex t) {
    require_same_class(alpha, t, "consecutions");
    // Greedy earliest-match subsequence search for (t, t+1, ..., t+p).
    std::size_t i = 0;
    while (i < alpha.size() && !(alpha[i] == t)) ++i;
    if (i == alpha.size()) return -1;
    int p = 0;
    std::optional<SignedIndex> want = t.successor();
    for (++i; i < alpha.size() && want; ++i) {
        if (alpha[i] == *want) {
            ++p;
            want = want->successor();
        }
    }
    return p;
}

int inversions(const IndexTuple& alpha, SignedIndex t) {
    require_same_class(alpha, t, "inversions");
    // Mirror of consecutions: latest-match search for (t+q, ..., t+1, t).
    std::size_t n = alpha.size();
    std::size_t i = n;
    while (i > 0 && !(alpha[i - 1] == t)) --i;
    if (i == 0) return -1;
    int q = 0;
    std::optional<SignedIndex> want = t.successor();
    for (--i; i > 0 && want; --i) {
        if (alpha[i - 1] == *want) {
            ++q;
            want = want->successor();
        }
    }
    return q;
}

int total_consecutions(const IndexTuple& alpha) {
    const int m = static_cast<int>(alpha.size());
    std::vector<int> position(m, -1);
    for (int i = 0; i < m; ++i) {
        const SignedIndex& t = alpha[i];
        if (!t.is_plus() || t.magnitude >= m || position[t.magnitude] != -1)
            throw std::invalid_argument("total_consecutions: not a permutation of {0:m-1}: " +
                                        alpha.str());
        position[t.magnitude] = i;
    }
    int c = 0;
    for (int k = 0; k + 1 < m; ++k)
        if (position[k] < position[k + 1]) ++c;
    return c;
}

int total_inversions(const IndexTuple& alpha) {
    const int m = static_cast<int>(alpha.size());
    return (m - 1) - total_consecutions(alpha);
}

bool satisfies_sip(const IndexTuple& alpha) {
    require_single_class(alpha, "satisfies_sip");
    const std::size_t n = alpha.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!(alpha[a] == alpha[b])) continue;
            std::optional<SignedIndex> succ = alpha[a].successor();
            if (!succ) return false; // -0 repeated: it has no successor
            bool found = false;
            for (std::size_t c = a + 1; c < b && !found; ++c)
                if (alpha[c] == *succ) found = true;
            if (!found) return false;
        }
    }
    return true;
}

IndexTuple standard_form(const IndexTuple& alpha, StandardKind kind) {
    if (!satisfies_sip(alpha))
        throw std::invalid_argument("standard_form: tuple violates the SIP: " + alpha.str());
    std::vector<SignedIndex> e = alpha.entries();
    // csf: commute ascending pairs leftwards until every commutable adjacent
    // pair descends. rsf is the mirror. Each swap strictly reduces the number
    // of (well-)ordered commutable pairs, so at most len^2 swaps happen.
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t i = 0; i + 1 < e.size(); ++i) {
            if (!commutes(e[i], e[i + 1])) continue;
            bool wrong = (kind == StandardKind::column) ? (e[i] < e[i + 1]) : (e[i + 1] < e[i]);
            if (wrong) {
                std::swap(e[i], e[i + 1]);
                swapped = true;
            }
        }
    }
    return IndexTuple(std::move(e));
}

bool is_equivalent(const IndexTuple& alpha, const IndexTuple& beta) {
    if (!alpha.empty() && !beta.empty() && alpha[0].sign != beta[0].sign)
        throw std::invalid_argument("is_equivalent: tuples from different sign classes");
    return standard_form(alpha, StandardKind::column) ==
           standard_form(beta, StandardKind::column);
}

std::vector<SignedIndex> end_indices(const IndexTuple& alpha, int m) {
    require_single_class(alpha, "end_indices");
    if (!alpha.is_simple())
        throw std::invalid_argument("end_indices: not a sub-permutation: " + alpha.str());
    std::vector<SignedIndex> out;
    for (const auto& t : alpha) {
        if (t.is_plus()) {
            if (t.magnitude == 0 || t.magnitude > m - 1)
                continue; // 0 excluded; m is outside the {0:m-1} domain
            if (!alpha.contains(pos(t.magnitude - 1)) || !alpha.contains(pos(t.magnitude + 1)))
                out.push_back(t);
        } else {
            if (t.magnitude == m || t.magnitude < 1)
                continue; // -m excluded; -0 outside the {-m:-1} domain
            if (!alpha.contains(neg(t.magnitude - 1)) || !alpha.contains(neg(t.magnitude + 1)))
                out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::ostream& operator<<(std::ostream& os, const SignedIndex& t) { return os << t.str(); }
std::ostream& operator<<(std::ostream& os, const IndexTuple& alpha) { return os << alpha.str(); }

} // namespace egfp
