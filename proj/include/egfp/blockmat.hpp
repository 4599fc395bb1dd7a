#pragma once

#include "egfp/poly.hpp"
#include "egfp/tags.hpp"
#include "egfp/tuples.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace egfp {

/// Square grid of m x m dense n x n blocks. Every block carries both its
/// numeric value and an exact symbolic tag; products maintain the two in
/// lockstep, so structural queries (bandwidth, operation-freeness, fixture
/// equality) never depend on floating point.
class BlockMatrix {
public:
    BlockMatrix() = default;
    BlockMatrix(int mblocks, int n); // zero

    static BlockMatrix identity(int mblocks, int n);

    int mblocks() const { return mb_; }
    int block_size() const { return n_; }
    int dim() const { return mb_ * n_; }

    const Eigen::MatrixXcd& block(int i, int j) const { return blk_[idx(i, j)]; }
    const Tag& tag(int i, int j) const { return tag_[idx(i, j)]; }
    void set_block(int i, int j, Eigen::MatrixXcd value, Tag tag);

    BlockMatrix operator*(const BlockMatrix& other) const;

    /// Flips the sign of an entire block row (used by the structured
    /// generators' diagonal sign multipliers).
    void negate_block_row(int i);

    Eigen::MatrixXcd dense() const;

    /// max |i - j| over blocks with a nonzero tag; -1 for the zero matrix.
    int bandwidth() const;
    /// Same on the numeric content with an exact zero test.
    int bandwidth_numeric() const;

    bool tags_equal(const BlockMatrix& other) const;
    bool numerically_equal(const BlockMatrix& other, double tol = 0.0) const;

    /// Re-evaluates every tag against the given symbols and compares with the
    /// stored numeric blocks; true when they agree entrywise to `tol`.
    bool tags_consistent(const std::vector<Eigen::MatrixXcd>& coeffs,
                         const std::map<std::string, Eigen::MatrixXcd>& assigned,
                         double tol = 0.0) const;

private:
    int idx(int i, int j) const { return i * mb_ + j; }
    int mb_ = 0, n_ = 0;
    std::vector<Eigen::MatrixXcd> blk_;
    std::vector<Tag> tag_;
};

/// Matrices paired one-to-one with an index tuple. `trivial` marks the
/// coefficient choice that turns every factor into the Fiedler matrix of P.
struct MatrixAssignment {
    IndexTuple tuple;
    std::vector<Eigen::MatrixXcd> mats;
    std::vector<Tag> tags;
    bool trivial = false;

    static MatrixAssignment make_trivial(const IndexTuple& t, const MatrixPolynomial& p);
    static MatrixAssignment make_assigned(const IndexTuple& t,
                                          const std::vector<std::string>& names,
                                          const std::vector<Eigen::MatrixXcd>& values);
    static MatrixAssignment empty() { return MatrixAssignment{}; }

    /// A nonsingular assignment: values at 0- and m-magnitude positions are
    /// invertible (factors of other magnitudes are invertible regardless).
    bool is_nonsingular(int m) const;

    /// All assigned matrices by name, for tag evaluation.
    std::map<std::string, Eigen::MatrixXcd> named() const;
};

/// The elementary matrix M_i(X) of size mn x mn. For i = -0 this is
/// M_0(X)^{-1} = M_0(X^{-1}) and for i = +m it is M_{-m}(X)^{-1}, so those
/// two require X invertible (SingularAssignmentError otherwise).
BlockMatrix elementary(SignedIndex i, const Eigen::MatrixXcd& x, const Tag& xtag, int m);

/// Fiedler matrix M_i^P: the elementary matrix with the trivial assignment.
BlockMatrix fiedler(SignedIndex i, const MatrixPolynomial& p);

/// Ordered product M_{t_1}(X_1) ... M_{t_r}(X_r); the identity for an empty
/// tuple.
BlockMatrix assignment_product(const MatrixAssignment& a, int m, int n);

/// Product of Fiedler matrices M^P_t.
BlockMatrix fiedler_product(const IndexTuple& t, const MatrixPolynomial& p);

/// One block row or column in symbolic form: (block index, tag) pairs with
/// 0-based indices, sorted by index.
using SparseBlockLine = std::vector<std::pair<int, Tag>>;

/// (e^T_{m-s} (x) I_n) * M_alpha(X) computed purely by index arithmetic on
/// the elementary-factor action tables; never by dense multiplication.
/// 0 <= s <= m-1; factors may mix sign classes.
SparseBlockLine symbolic_row_action(int s, const MatrixAssignment& a, int m);

/// M_alpha(X) * (e_{m-s} (x) I_n), the transposed-contract mirror.
SparseBlockLine symbolic_col_action(int s, const MatrixAssignment& a, int m);

/// Row/column of several stacked assignments (applied left to right as a
/// single product).
SparseBlockLine symbolic_row_action(int s, const std::vector<const MatrixAssignment*>& factors,
                                    int m);
SparseBlockLine symbolic_col_action(int s, const std::vector<const MatrixAssignment*>& factors,
                                    int m);

} // namespace egfp
