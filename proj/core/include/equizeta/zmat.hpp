#ifndef EQUIZETA_ZMAT_HPP
#define EQUIZETA_ZMAT_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace equizeta {

// Dense matrix over Z with exact GMP entries.  Row-major storage.
class ZMat {
public:
    ZMat() : rows_(0), cols_(0) {}
    ZMat(long rows, long cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {}

    static ZMat identity(long n);

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    mpz_class& at(long i, long j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
    const mpz_class& at(long i, long j) const {
        return a_[static_cast<size_t>(i * cols_ + j)];
    }

    std::vector<mpz_class> row(long i) const;
    void swap_rows(long i, long j);
    void swap_cols(long i, long j);

    bool operator==(const ZMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const ZMat& o) const { return !(*this == o); }
    // Lexicographic order on (rows, cols, entries); used for canonical keys.
    bool operator<(const ZMat& o) const;

    std::string to_string() const;

private:
    long rows_, cols_;
    std::vector<mpz_class> a_;
};

ZMat zmat_mul(const ZMat& a, const ZMat& b);

// Determinant by fraction-free (Bareiss) elimination.
mpz_class zmat_det(const ZMat& m);

// Exact inverse of a matrix with det = +-1.  Throws InternalError otherwise.
ZMat zmat_inverse_unimodular(const ZMat& m);

// Row-style Hermite normal form, upper-triangular convention: pivots move
// left to right, pivot entries positive, entries above each pivot reduced
// into [0, pivot).  Zero rows dropped.
ZMat hnf_upper(const ZMat& m);

// Row-style HNF, lower-triangular convention: row i has zeros in columns
// > pivot(i), pivots positive, entries below each pivot reduced into
// [0, pivot).  Obtained from hnf_upper by reversing coordinate order.
ZMat hnf_lower(const ZMat& m);

struct SnfResult {
    ZMat u;   // rows x rows, unimodular
    ZMat d;   // rows x cols, diagonal with d1 | d2 | ...
    ZMat v;   // cols x cols, unimodular
    long rank = 0;
};

// Smith normal form: u * m * v = d with the divisibility chain and
// non-negative diagonal.
SnfResult smith_normal_form(const ZMat& m);

// Basis (as rows) of the left kernel { v : v * m = 0 }.
ZMat left_kernel(const ZMat& m);

// Basis (as rows) of the intersection of the row lattices of a and b.
// Both must have the same number of columns.
ZMat lattice_intersect_rows(const ZMat& a, const ZMat& b);

// ---- exact rational linear algebra (small systems) ----

using QVec = std::vector<mpq_class>;
using QMatDense = std::vector<QVec>;

long q_rank(QMatDense m);

// Basis of the right kernel { x : m * x = 0 } over Q.
std::vector<QVec> q_right_kernel(const QMatDense& m);

// Scale a nonzero rational vector to a primitive integer vector (gcd 1).
// Sign: the last nonzero entry is made positive when make_last_positive,
// otherwise the first nonzero entry.
std::vector<mpz_class> primitive_integer_vector(const QVec& v, bool make_last_positive = false);

mpz_class vec_gcd(const std::vector<mpz_class>& v);
mpz_class lcm_positive(const mpz_class& a, const mpz_class& b);

} // namespace equizeta

#endif
