#include "egfp/blockmat.hpp"

#include "egfp/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace egfp {

namespace {

bool invertible(const Eigen::MatrixXcd& x, double tol = 0.0) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(x);
    if (tol > 0) lu.setThreshold(tol);
    return lu.isInvertible();
}

Eigen::MatrixXcd inverse_of(const Eigen::MatrixXcd& x, const std::string& what) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(x);
    if (!lu.isInvertible()) throw SingularAssignmentError(what + " is singular");
    return lu.inverse();
}

/// Trivial assignment value for one index: the matrix X with
/// M_t(X) = M_t^P. For -0 and +m the elementary constructor inverts its
/// argument, so the stored values there are -A_0 and A_m.
std::pair<Eigen::MatrixXcd, Tag> trivial_entry(SignedIndex t, const MatrixPolynomial& p) {
    if (t.is_plus()) {
        if (t.magnitude == p.m) return {p.coeff(p.m), Tag::coefficient(p.m)};
        return {-p.coeff(t.magnitude), -Tag::coefficient(t.magnitude)};
    }
    if (t.magnitude == 0) return {-p.coeff(0), -Tag::coefficient(0)};
    return {p.coeff(t.magnitude), Tag::coefficient(t.magnitude)};
}

} // namespace

BlockMatrix::BlockMatrix(int mblocks, int n) : mb_(mblocks), n_(n) {
    blk_.assign(static_cast<std::size_t>(mb_) * mb_, Eigen::MatrixXcd::Zero(n_, n_));
    tag_.assign(static_cast<std::size_t>(mb_) * mb_, Tag::zero());
}

BlockMatrix BlockMatrix::identity(int mblocks, int n) {
    BlockMatrix r(mblocks, n);
    for (int i = 0; i < mblocks; ++i)
        r.set_block(i, i, Eigen::MatrixXcd::Identity(n, n), Tag::identity());
    return r;
}

void BlockMatrix::set_block(int i, int j, Eigen::MatrixXcd value, Tag tag) {
    blk_[idx(i, j)] = std::move(value);
    tag_[idx(i, j)] = std::move(tag);
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& other) const {
    if (mb_ != other.mb_ || n_ != other.n_)
        throw std::invalid_argument("block matrix dimension mismatch");
    BlockMatrix r(mb_, n_);
    for (int i = 0; i < mb_; ++i) {
        for (int k = 0; k < mb_; ++k) {
            if (tag(i, k).is_zero()) continue;
            for (int j = 0; j < mb_; ++j) {
                if (other.tag(k, j).is_zero()) continue;
                r.blk_[r.idx(i, j)] += block(i, k) * other.block(k, j);
                r.tag_[r.idx(i, j)] = r.tag_[r.idx(i, j)] + tag(i, k) * other.tag(k, j);
            }
        }
    }
    // A cancelled tag means the block is structurally zero; drop roundoff.
    for (std::size_t q = 0; q < r.tag_.size(); ++q)
        if (r.tag_[q].is_zero()) r.blk_[q].setZero();
    return r;
}

void BlockMatrix::negate_block_row(int i) {
    for (int j = 0; j < mb_; ++j) {
        blk_[idx(i, j)] = -blk_[idx(i, j)];
        tag_[idx(i, j)] = -tag_[idx(i, j)];
    }
}

Eigen::MatrixXcd BlockMatrix::dense() const {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim(), dim());
    for (int i = 0; i < mb_; ++i)
        for (int j = 0; j < mb_; ++j) d.block(i * n_, j * n_, n_, n_) = block(i, j);
    return d;
}

int BlockMatrix::bandwidth() const {
    int b = -1;
    for (int i = 0; i < mb_; ++i)
        for (int j = 0; j < mb_; ++j)
            if (!tag(i, j).is_zero()) b = std::max(b, std::abs(i - j));
    return b;
}

int BlockMatrix::bandwidth_numeric() const {
    int b = -1;
    for (int i = 0; i < mb_; ++i)
        for (int j = 0; j < mb_; ++j)
            if (!block(i, j).isZero(0.0)) b = std::max(b, std::abs(i - j));
    return b;
}

bool BlockMatrix::tags_equal(const BlockMatrix& other) const {
    return mb_ == other.mb_ && n_ == other.n_ && tag_ == other.tag_;
}

bool BlockMatrix::numerically_equal(const BlockMatrix& other, double tol) const {
    if (mb_ != other.mb_ || n_ != other.n_) return false;
    for (std::size_t q = 0; q < blk_.size(); ++q)
        if (!blk_[q].isApprox(other.blk_[q], tol) && (blk_[q] - other.blk_[q]).norm() > tol)
            return false;
    return true;
}

bool BlockMatrix::tags_consistent(const std::vector<Eigen::MatrixXcd>& coeffs,
                                  const std::map<std::string, Eigen::MatrixXcd>& assigned,
                                  double tol) const {
    for (int i = 0; i < mb_; ++i)
        for (int j = 0; j < mb_; ++j) {
            Eigen::MatrixXcd v = tag(i, j).evaluate(coeffs, assigned, n_);
            if ((v - block(i, j)).norm() > tol) return false;
        }
    return true;
}

MatrixAssignment MatrixAssignment::make_trivial(const IndexTuple& t, const MatrixPolynomial& p) {
    MatrixAssignment a;
    a.tuple = t;
    a.trivial = true;
    for (const auto& idx : t) {
        auto [v, tag] = trivial_entry(idx, p);
        a.mats.push_back(std::move(v));
        a.tags.push_back(std::move(tag));
    }
    return a;
}

MatrixAssignment MatrixAssignment::make_assigned(const IndexTuple& t,
                                                 const std::vector<std::string>& names,
                                                 const std::vector<Eigen::MatrixXcd>& values) {
    if (names.size() != t.size() || values.size() != t.size())
        throw std::invalid_argument("assignment length mismatch");
    MatrixAssignment a;
    a.tuple = t;
    a.trivial = false;
    a.mats = values;
    for (const auto& n : names) a.tags.push_back(Tag::assigned(n));
    return a;
}

bool MatrixAssignment::is_nonsingular(int m) const {
    for (std::size_t k = 0; k < tuple.size(); ++k) {
        int mag = tuple[k].magnitude;
        if ((mag == 0 || mag == m) && !invertible(mats[k])) return false;
    }
    return true;
}

std::map<std::string, Eigen::MatrixXcd> MatrixAssignment::named() const {
    std::map<std::string, Eigen::MatrixXcd> out;
    for (std::size_t k = 0; k < tags.size(); ++k) {
        const auto& terms = tags[k].terms();
        if (terms.size() == 1 && terms[0].atoms.size() == 1 &&
            terms[0].atoms[0].kind == TagAtom::Kind::assigned)
            out[terms[0].atoms[0].name] = mats[k];
    }
    return out;
}

BlockMatrix elementary(SignedIndex i, const Eigen::MatrixXcd& x, const Tag& xtag, int m) {
    const int n = static_cast<int>(x.rows());
    if (i.magnitude > m) throw std::invalid_argument("elementary index exceeds degree");

    Eigen::MatrixXcd v = x;
    Tag t = xtag;
    bool inverse_form = (i.is_minus() && i.magnitude == 0) || (i.is_plus() && i.magnitude == m);
    if (inverse_form) {
        v = inverse_of(x, "assignment at index " + i.str());
        auto ti = xtag.inverted();
        if (!ti) throw std::invalid_argument("tag of " + i.str() + " has no symbolic inverse");
        t = *ti;
    }

    BlockMatrix r = BlockMatrix::identity(m, n);
    if ((i.is_plus() && i.magnitude == 0) || (i.is_minus() && i.magnitude == 0)) {
        r.set_block(m - 1, m - 1, std::move(v), std::move(t)); // M_0 shape
    } else if ((i.is_minus() && i.magnitude == m) || (i.is_plus() && i.magnitude == m)) {
        r.set_block(0, 0, std::move(v), std::move(t)); // M_{-m} shape
    } else if (i.is_plus()) {
        // rows m-i-1, m-i (0-based): [[X, I], [I, 0]]
        int a = m - i.magnitude - 1;
        r.set_block(a, a, std::move(v), std::move(t));
        r.set_block(a, a + 1, Eigen::MatrixXcd::Identity(n, n), Tag::identity());
        r.set_block(a + 1, a, Eigen::MatrixXcd::Identity(n, n), Tag::identity());
        r.set_block(a + 1, a + 1, Eigen::MatrixXcd::Zero(n, n), Tag::zero());
    } else {
        // [[0, I], [I, X]]
        int a = m - i.magnitude - 1;
        r.set_block(a, a, Eigen::MatrixXcd::Zero(n, n), Tag::zero());
        r.set_block(a, a + 1, Eigen::MatrixXcd::Identity(n, n), Tag::identity());
        r.set_block(a + 1, a, Eigen::MatrixXcd::Identity(n, n), Tag::identity());
        r.set_block(a + 1, a + 1, std::move(v), std::move(t));
    }
    return r;
}

BlockMatrix fiedler(SignedIndex i, const MatrixPolynomial& p) {
    auto [v, tag] = trivial_entry(i, p);
    return elementary(i, v, tag, p.m);
}

BlockMatrix assignment_product(const MatrixAssignment& a, int m, int n) {
    BlockMatrix r = BlockMatrix::identity(m, n);
    for (std::size_t k = 0; k < a.tuple.size(); ++k)
        r = r * elementary(a.tuple[k], a.mats[k], a.tags[k], m);
    return r;
}

BlockMatrix fiedler_product(const IndexTuple& t, const MatrixPolynomial& p) {
    return assignment_product(MatrixAssignment::make_trivial(t, p), p.m, p.n);
}

namespace {

/// State for the action kernels: terms (i, tag) standing for e^T_{m-i} (x) tag
/// (rows) or e_{m-i} (x) tag (columns), i in 0..m-1.
using Line = std::vector<std::pair<int, Tag>>;

void merge_term(Line& line, int i, Tag t) {
    if (t.is_zero()) return;
    for (auto& [j, tag] : line) {
        if (j == i) {
            tag = tag + t;
            return;
        }
    }
    line.emplace_back(i, std::move(t));
}

void prune(Line& line) {
    line.erase(std::remove_if(line.begin(), line.end(),
                              [](const auto& e) { return e.second.is_zero(); }),
               line.end());
}

/// One factor of the row action. `w` is the effective block of the factor
/// (already inverted for -0/+m); composition multiplies tags on the right.
Line row_step(const Line& line, SignedIndex idx, const Tag& w, int m) {
    Line out;
    const int j = idx.magnitude;
    bool m0_shape = (j == 0); // covers +0 and -0
    bool mm_shape = (j == m); // covers -m and +m
    for (const auto& [i, v] : line) {
        if (m0_shape) {
            if (i == 0)
                merge_term(out, 0, v * w);
            else
                merge_term(out, i, v);
        } else if (mm_shape) {
            if (i == m - 1)
                merge_term(out, m - 1, v * w);
            else
                merge_term(out, i, v);
        } else if (idx.is_plus()) {
            if (j == i + 1) {
                merge_term(out, i + 1, v);
            } else if (j == i) { // i >= 1 here since j >= 1
                merge_term(out, i, v * w);
                merge_term(out, i - 1, v);
            } else {
                merge_term(out, i, v);
            }
        } else {
            if (j == i + 1) { // i <= m-2 here since j <= m-1
                merge_term(out, i, v * w);
                merge_term(out, i + 1, v);
            } else if (j == i) {
                merge_term(out, i - 1, v);
            } else {
                merge_term(out, i, v);
            }
        }
    }
    prune(out);
    return out;
}

/// One factor of the column action; composition multiplies tags on the left.
Line col_step(const Line& line, SignedIndex idx, const Tag& w, int m) {
    Line out;
    const int j = idx.magnitude;
    bool m0_shape = (j == 0);
    bool mm_shape = (j == m);
    for (const auto& [i, v] : line) {
        if (m0_shape) {
            if (i == 0)
                merge_term(out, 0, w * v);
            else
                merge_term(out, i, v);
        } else if (mm_shape) {
            if (i == m - 1)
                merge_term(out, m - 1, w * v);
            else
                merge_term(out, i, v);
        } else if (idx.is_plus()) {
            if (j == i + 1) {
                merge_term(out, i + 1, v);
            } else if (j == i) {
                merge_term(out, i, w * v);
                merge_term(out, i - 1, v);
            } else {
                merge_term(out, i, v);
            }
        } else {
            if (j == i + 1) {
                merge_term(out, i, w * v);
                merge_term(out, i + 1, v);
            } else if (j == i) {
                merge_term(out, i - 1, v);
            } else {
                merge_term(out, i, v);
            }
        }
    }
    prune(out);
    return out;
}

Tag effective_tag(SignedIndex idx, const Tag& raw, int m) {
    bool inverse_form =
        (idx.is_minus() && idx.magnitude == 0) || (idx.is_plus() && idx.magnitude == m);
    if (!inverse_form) return raw;
    auto t = raw.inverted();
    if (!t) throw std::invalid_argument("tag of " + idx.str() + " has no symbolic inverse");
    return *t;
}

SparseBlockLine finish(Line line, int m) {
    SparseBlockLine out;
    out.reserve(line.size());
    for (auto& [i, t] : line) out.emplace_back(m - i - 1, std::move(t)); // e_{m-i}, 0-based
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace

SparseBlockLine symbolic_row_action(int s, const std::vector<const MatrixAssignment*>& factors,
                                    int m) {
    if (s < 0 || s > m - 1) throw std::invalid_argument("row index out of range");
    Line line{{s, Tag::identity()}};
    for (const auto* a : factors)
        for (std::size_t k = 0; k < a->tuple.size(); ++k)
            line = row_step(line, a->tuple[k], effective_tag(a->tuple[k], a->tags[k], m), m);
    return finish(std::move(line), m);
}

SparseBlockLine symbolic_col_action(int s, const std::vector<const MatrixAssignment*>& factors,
                                    int m) {
    if (s < 0 || s > m - 1) throw std::invalid_argument("column index out of range");
    Line line{{s, Tag::identity()}};
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        const MatrixAssignment* a = *it;
        for (std::size_t k = a->tuple.size(); k-- > 0;)
            line = col_step(line, a->tuple[k], effective_tag(a->tuple[k], a->tags[k], m), m);
    }
    return finish(std::move(line), m);
}

SparseBlockLine symbolic_row_action(int s, const MatrixAssignment& a, int m) {
    if (a.tuple.single_class() && !satisfies_sip(a.tuple))
        throw std::invalid_argument("symbolic_row_action: tuple violates the SIP");
    return symbolic_row_action(s, std::vector<const MatrixAssignment*>{&a}, m);
}

SparseBlockLine symbolic_col_action(int s, const MatrixAssignment& a, int m) {
    if (a.tuple.single_class() && !satisfies_sip(a.tuple))
        throw std::invalid_argument("symbolic_col_action: tuple violates the SIP");
    return symbolic_col_action(s, std::vector<const MatrixAssignment*>{&a}, m);
}

} // namespace egfp
