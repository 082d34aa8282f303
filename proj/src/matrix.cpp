#include "omack/matrix.hpp"

#include <sstream>

namespace omack {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw Error(Error::Kind::DimensionMismatch, "matrix product shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j) == 0) continue;
                r.at(i, j) += x * o.at(k, j);
            }
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Error::Kind::DimensionMismatch, "matrix sum shape mismatch");
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Error::Kind::DimensionMismatch, "matrix difference shape mismatch");
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

QMatrix QMatrix::scaled(const Rat& c) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool QMatrix::is_zero() const {
    for (const Rat& x : a_)
        if (x != 0) return false;
    return true;
}

bool QMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

QMatrix QMatrix::rref(std::vector<int>* pivot_cols) const {
    QMatrix m = *this;
    if (pivot_cols) pivot_cols->clear();
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int pr = -1;
        for (int i = row; i < rows_; ++i)
            if (m.at(i, col) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < cols_; ++j) std::swap(m.at(pr, j), m.at(row, j));
        Rat inv = 1 / m.at(row, col);
        for (int j = col; j < cols_; ++j) m.at(row, j) *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++row;
    }
    return m;
}

int QMatrix::rank() const {
    std::vector<int> p;
    rref(&p);
    return int(p.size());
}

QMatrix QMatrix::column_space_basis() const {
    std::vector<int> p;
    rref(&p);
    QMatrix b(rows_, int(p.size()));
    for (int j = 0; j < int(p.size()); ++j)
        for (int i = 0; i < rows_; ++i) b.at(i, j) = at(i, p[j]);
    return b;
}

QMatrix QMatrix::kernel_basis() const {
    std::vector<int> p;
    QMatrix r = rref(&p);
    std::vector<bool> is_pivot(cols_, false);
    for (int c : p) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    QMatrix k(cols_, int(free_cols.size()));
    for (int j = 0; j < int(free_cols.size()); ++j) {
        int fc = free_cols[j];
        k.at(fc, j) = 1;
        for (int i = 0; i < int(p.size()); ++i) k.at(p[i], j) = -r.at(i, fc);
    }
    return k;
}

std::optional<QMatrix> QMatrix::solve(const QMatrix& b) const {
    if (b.rows_ != rows_) throw Error(Error::Kind::DimensionMismatch, "solve: rhs rows mismatch");
    QMatrix aug(rows_, cols_ + b.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        for (int j = 0; j < b.cols_; ++j) aug.at(i, cols_ + j) = b.at(i, j);
    }
    std::vector<int> p;
    QMatrix r = aug.rref(&p);
    // Inconsistent iff a pivot lands in the augmented block.
    for (int c : p)
        if (c >= cols_) return std::nullopt;
    QMatrix x(cols_, b.cols_);
    for (int i = 0; i < int(p.size()); ++i)
        for (int j = 0; j < b.cols_; ++j) x.at(p[i], j) = r.at(i, cols_ + j);
    return x;
}

std::optional<QMatrix> QMatrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    auto x = solve(identity(rows_));
    if (!x) return std::nullopt;
    if (((*this) * *x).is_identity() && (*x * *this).is_identity()) return x;
    return std::nullopt;
}

QMatrix QMatrix::vstack(const QMatrix& o) const {
    if (cols_ != o.cols_) throw Error(Error::Kind::DimensionMismatch, "vstack cols mismatch");
    QMatrix r(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
}

QMatrix QMatrix::hstack(const QMatrix& o) const {
    if (rows_ != o.rows_) throw Error(Error::Kind::DimensionMismatch, "hstack rows mismatch");
    QMatrix r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

std::string QMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << rat_str(at(i, j));
    }
    os << "]";
    return os.str();
}

QuotientSpace quotient_by_columns(int dim, const QMatrix& relations) {
    // Row-reduce the relation space (as rows) to find pivot coordinates.
    std::vector<int> p;
    QMatrix e = relations.transpose().rref(&p);
    std::vector<bool> is_pivot(dim, false);
    for (int c : p) is_pivot[c] = true;
    std::vector<int> free_coords;
    for (int c = 0; c < dim; ++c)
        if (!is_pivot[c]) free_coords.push_back(c);

    QuotientSpace q;
    q.dim = dim;
    q.qdim = int(free_coords.size());
    // project(v): subtract relation rows to kill pivot coords, then read the
    // free coordinates. On basis vectors: e_p reduces to -sum over free
    // coords of its rref row; e_f maps to the f-th quotient basis vector.
    q.project = QMatrix(q.qdim, dim);
    for (int j = 0; j < q.qdim; ++j) q.project.at(j, free_coords[j]) = 1;
    for (int i = 0; i < int(p.size()); ++i)
        for (int j = 0; j < q.qdim; ++j) q.project.at(j, p[i]) = -e.at(i, free_coords[j]);
    q.section = QMatrix(dim, q.qdim);
    for (int j = 0; j < q.qdim; ++j) q.section.at(free_coords[j], j) = 1;
    return q;
}

} // namespace omack
