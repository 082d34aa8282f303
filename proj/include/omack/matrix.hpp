#pragma once

#include "omack/rational.hpp"

#include <optional>
#include <vector>

namespace omack {

// Dense rational matrix with exact Gauss-Jordan elimination. Pivots are
// chosen in leading order (first nonzero entry scanning rows top-down),
// never by magnitude, so every derived basis is deterministic.
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static QMatrix identity(int n);
    static QMatrix zero(int rows, int cols) { return QMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const QMatrix& o) const { return !(*this == o); }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix scaled(const Rat& c) const;
    QMatrix transpose() const;

    bool is_zero() const;
    bool is_identity() const;

    // Reduced row echelon form; records pivot column per pivot row.
    QMatrix rref(std::vector<int>* pivot_cols = nullptr) const;
    int rank() const;

    // Columns form a basis of the column space, in leading-pivot order:
    // the columns of the original matrix at the pivot positions of rref.
    QMatrix column_space_basis() const;
    // Columns form a basis of the null space (one per free column).
    QMatrix kernel_basis() const;

    // Solves A x = b for each column of b; nullopt if inconsistent.
    std::optional<QMatrix> solve(const QMatrix& b) const;
    std::optional<QMatrix> inverse() const;

    // Stacks this on top of o (same cols) / side by side (same rows).
    QMatrix vstack(const QMatrix& o) const;
    QMatrix hstack(const QMatrix& o) const;

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

// Quotient of Q^dim by the column space of `relations` (dim x k).
// project: (dim-r) x dim, section: dim x (dim-r), project*section = id.
// The quotient basis is the set of non-pivot coordinates of the relation
// space, in increasing order.
struct QuotientSpace {
    int dim = 0;      // ambient dimension
    int qdim = 0;     // quotient dimension
    QMatrix project;  // qdim x dim
    QMatrix section;  // dim x qdim
};
QuotientSpace quotient_by_columns(int dim, const QMatrix& relations);

} // namespace omack
