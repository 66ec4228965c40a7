#include "equizeta/zmat.hpp"

#include <algorithm>
#include <sstream>

#include "equizeta/errors.hpp"

namespace equizeta {

ZMat ZMat::identity(long n) {
    ZMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<mpz_class> ZMat::row(long i) const {
    std::vector<mpz_class> r(static_cast<size_t>(cols_));
    for (long j = 0; j < cols_; ++j) r[static_cast<size_t>(j)] = at(i, j);
    return r;
}

void ZMat::swap_rows(long i, long j) {
    if (i == j) return;
    for (long k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void ZMat::swap_cols(long i, long j) {
    if (i == j) return;
    for (long k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

bool ZMat::operator<(const ZMat& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    for (size_t k = 0; k < a_.size(); ++k) {
        int c = cmp(a_[k], o.a_[k]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string ZMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (long i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (long j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
    if (a.cols() != b.rows()) throw InternalError("zmat_mul shape");
    ZMat c(a.rows(), b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (long j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

mpz_class zmat_det(const ZMat& m) {
    if (m.rows() != m.cols()) throw InternalError("det of non-square matrix");
    long n = m.rows();
    if (n == 0) return 1;
    ZMat a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            long p = -1;
            for (long i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                mpz_class num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                // Bareiss: division by the previous pivot is exact.
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

ZMat zmat_inverse_unimodular(const ZMat& m) {
    if (m.rows() != m.cols()) throw InternalError("inverse of non-square matrix");
    long n = m.rows();
    // Gauss-Jordan over Q; entries stay small for the unimodular matrices
    // produced by SNF at our sizes.
    QMatDense a(static_cast<size_t>(n), QVec(static_cast<size_t>(2 * n)));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) a[i][j] = mpq_class(m.at(i, j));
        a[i][static_cast<size_t>(n + i)] = 1;
    }
    for (long c = 0; c < n; ++c) {
        long p = -1;
        for (long i = c; i < n; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) throw InternalError("singular matrix in unimodular inverse");
        std::swap(a[static_cast<size_t>(c)], a[static_cast<size_t>(p)]);
        mpq_class piv = a[c][c];
        for (long j = 0; j < 2 * n; ++j) a[c][j] /= piv;
        for (long i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (long j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    ZMat inv(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            mpq_class q = a[i][static_cast<size_t>(n + j)];
            q.canonicalize();
            if (q.get_den() != 1)
                throw InternalError("matrix is not unimodular");
            inv.at(i, j) = q.get_num();
        }
    return inv;
}

ZMat hnf_upper(const ZMat& m) {
    long rows = m.rows(), cols = m.cols();
    ZMat a = m;
    long r = 0; // next pivot row
    for (long c = 0; c < cols && r < rows; ++c) {
        // Euclidean elimination in column c, rows r..end.
        while (true) {
            long p = -1;
            for (long i = r; i < rows; ++i) {
                if (a.at(i, c) == 0) continue;
                if (p < 0 || cmp(abs(a.at(i, c)), abs(a.at(p, c))) < 0) p = i;
            }
            if (p < 0) break;
            a.swap_rows(r, p);
            bool clean = true;
            for (long i = r + 1; i < rows; ++i) {
                if (a.at(i, c) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, c).get_mpz_t(), a.at(r, c).get_mpz_t());
                for (long j = 0; j < cols; ++j) a.at(i, j) -= q * a.at(r, j);
                if (a.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a.at(r, c) == 0) continue;
        if (a.at(r, c) < 0)
            for (long j = 0; j < cols; ++j) a.at(r, j) = -a.at(r, j);
        // Reduce entries above the pivot into [0, pivot).
        for (long i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a.at(i, c).get_mpz_t(), a.at(r, c).get_mpz_t());
            if (q == 0) continue;
            for (long j = 0; j < cols; ++j) a.at(i, j) -= q * a.at(r, j);
        }
        ++r;
    }
    ZMat h(r, cols);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < cols; ++j) h.at(i, j) = a.at(i, j);
    return h;
}

ZMat hnf_lower(const ZMat& m) {
    long rows = m.rows(), cols = m.cols();
    ZMat rev(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) rev.at(i, j) = m.at(i, cols - 1 - j);
    ZMat h = hnf_upper(rev);
    ZMat out(h.rows(), cols);
    for (long i = 0; i < h.rows(); ++i)
        for (long j = 0; j < cols; ++j)
            out.at(i, j) = h.at(h.rows() - 1 - i, cols - 1 - j);
    return out;
}

SnfResult smith_normal_form(const ZMat& m) {
    long rows = m.rows(), cols = m.cols();
    SnfResult res;
    res.u = ZMat::identity(rows);
    res.v = ZMat::identity(cols);
    ZMat a = m;

    long t = 0;
    long lim = std::min(rows, cols);
    while (t < lim) {
        // Find a pivot of minimal absolute value in the remaining block.
        long pi = -1, pj = -1;
        for (long i = t; i < rows; ++i)
            for (long j = t; j < cols; ++j) {
                if (a.at(i, j) == 0) continue;
                if (pi < 0 || cmp(abs(a.at(i, j)), abs(a.at(pi, pj))) < 0) { pi = i; pj = j; }
            }
        if (pi < 0) break;
        a.swap_rows(t, pi);
        res.u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        res.v.swap_cols(t, pj);

        bool again = true;
        while (again) {
            again = false;
            for (long i = t + 1; i < rows; ++i) {
                if (a.at(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, t).get_mpz_t(), a.at(t, t).get_mpz_t());
                for (long j = 0; j < cols; ++j) a.at(i, j) -= q * a.at(t, j);
                for (long j = 0; j < rows; ++j) res.u.at(i, j) -= q * res.u.at(t, j);
                if (a.at(i, t) != 0) {
                    a.swap_rows(t, i);
                    res.u.swap_rows(t, i);
                    again = true;
                }
            }
            for (long j = t + 1; j < cols; ++j) {
                if (a.at(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(t, j).get_mpz_t(), a.at(t, t).get_mpz_t());
                for (long i = 0; i < rows; ++i) a.at(i, j) -= q * a.at(i, t);
                for (long i = 0; i < cols; ++i) res.v.at(i, j) -= q * res.v.at(i, t);
                if (a.at(t, j) != 0) {
                    a.swap_cols(t, j);
                    res.v.swap_cols(t, j);
                    again = true;
                }
            }
        }

        // Enforce divisibility of the remaining block by the pivot.
        bool fixed = true;
        for (long i = t + 1; i < rows && fixed; ++i)
            for (long j = t + 1; j < cols && fixed; ++j)
                if (a.at(i, j) % a.at(t, t) != 0) {
                    for (long jj = 0; jj < cols; ++jj) a.at(t, jj) += a.at(i, jj);
                    for (long jj = 0; jj < rows; ++jj) res.u.at(t, jj) += res.u.at(i, jj);
                    fixed = false;
                }
        if (!fixed) continue; // redo elimination at the same t
        if (a.at(t, t) < 0) {
            for (long j = 0; j < cols; ++j) a.at(t, j) = -a.at(t, j);
            for (long j = 0; j < rows; ++j) res.u.at(t, j) = -res.u.at(t, j);
        }
        ++t;
    }
    res.rank = t;
    res.d = a;
    return res;
}

ZMat left_kernel(const ZMat& m) {
    SnfResult s = smith_normal_form(m);
    long rows = m.rows();
    long k = rows - s.rank;
    ZMat ker(k, rows);
    // v * m = 0  iff  (v * u^-1) * d = 0; rows of u beyond the rank span it.
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < rows; ++j) ker.at(i, j) = s.u.at(s.rank + i, j);
    return ker;
}

ZMat lattice_intersect_rows(const ZMat& a, const ZMat& b) {
    if (a.cols() != b.cols()) throw InternalError("lattice intersect shape");
    long n = a.cols();
    ZMat stack(a.rows() + b.rows(), n);
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < n; ++j) stack.at(i, j) = a.at(i, j);
    for (long i = 0; i < b.rows(); ++i)
        for (long j = 0; j < n; ++j) stack.at(a.rows() + i, j) = -b.at(i, j);
    ZMat ker = left_kernel(stack);
    ZMat gens(ker.rows(), n);
    for (long i = 0; i < ker.rows(); ++i)
        for (long j = 0; j < n; ++j) {
            mpz_class s = 0;
            for (long k = 0; k < a.rows(); ++k) s += ker.at(i, k) * a.at(k, j);
            gens.at(i, j) = s;
        }
    return hnf_lower(gens);
}

long q_rank(QMatDense m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    long rank = 0;
    for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
        size_t p = static_cast<size_t>(rank);
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[static_cast<size_t>(rank)], m[p]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == static_cast<size_t>(rank) || m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[static_cast<size_t>(rank)][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[static_cast<size_t>(rank)][j];
        }
        ++rank;
    }
    return rank;
}

std::vector<QVec> q_right_kernel(const QMatDense& m) {
    if (m.empty()) return {};
    size_t rows = m.size(), cols = m[0].size();
    QMatDense a = m;
    std::vector<long> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        mpq_class piv = a[r][c];
        for (size_t j = 0; j < cols; ++j) a[r][j] /= piv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(static_cast<long>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (long c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<QVec> basis;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        QVec x(cols, mpq_class(0));
        x[c] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i)
            x[static_cast<size_t>(pivot_col[i])] = -a[i][c];
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<mpz_class> primitive_integer_vector(const QVec& v, bool make_last_positive) {
    mpz_class den = 1;
    for (const auto& q : v) den = lcm_positive(den, q.get_den());
    std::vector<mpz_class> z(v.size());
    mpz_class g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        z[i] = v[i].get_num() * (den / v[i].get_den());
        g = gcd(g, z[i]);
    }
    if (g == 0) throw InternalError("primitive vector of zero vector");
    for (auto& x : z) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    long anchor = -1;
    if (make_last_positive) {
        for (long i = static_cast<long>(z.size()) - 1; i >= 0; --i)
            if (z[static_cast<size_t>(i)] != 0) { anchor = i; break; }
    } else {
        for (size_t i = 0; i < z.size(); ++i)
            if (z[i] != 0) { anchor = static_cast<long>(i); break; }
    }
    if (anchor >= 0 && z[static_cast<size_t>(anchor)] < 0)
        for (auto& x : z) x = -x;
    return z;
}

mpz_class vec_gcd(const std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

mpz_class lcm_positive(const mpz_class& a, const mpz_class& b) {
    mpz_class l = lcm(a, b);
    return l < 0 ? mpz_class(-l) : l;
}

} // namespace equizeta
