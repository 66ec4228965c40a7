#include "equizeta/torsion.hpp"

#include <algorithm>
#include <sstream>

#include "equizeta/errors.hpp"

namespace equizeta {

mpq_class mod1(const mpq_class& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    mpq_class r = q - mpq_class(fl);
    r.canonicalize();
    return r;
}

TorsionVector::TorsionVector(std::vector<mpq_class> coords) : c_(std::move(coords)) {
    for (auto& q : c_) q = mod1(q);
}

TorsionVector TorsionVector::zero(long n) {
    return TorsionVector(std::vector<mpq_class>(static_cast<size_t>(n), mpq_class(0)));
}

bool TorsionVector::is_zero() const {
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

mpz_class TorsionVector::order() const {
    mpz_class l = 1;
    for (const auto& q : c_) l = lcm_positive(l, q.get_den());
    return l;
}

TorsionVector TorsionVector::operator+(const TorsionVector& o) const {
    if (dim() != o.dim()) throw DimensionMismatch("torsion vector addition");
    std::vector<mpq_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
    return TorsionVector(std::move(r));
}

TorsionVector TorsionVector::operator-() const {
    std::vector<mpq_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return TorsionVector(std::move(r));
}

TorsionVector TorsionVector::scaled(const mpq_class& t) const {
    std::vector<mpq_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * t;
    return TorsionVector(std::move(r));
}

bool TorsionVector::operator<(const TorsionVector& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    for (size_t i = 0; i < c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string TorsionVector::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].get_str();
    os << ")";
    return os.str();
}

// ---- FiniteDiagonalGroup ----

FiniteDiagonalGroup FiniteDiagonalGroup::trivial(long n) {
    return canonicalize(n, {});
}

FiniteDiagonalGroup FiniteDiagonalGroup::from_integer_rows(long n, const mpz_class& den,
                                                           const ZMat& rows) {
    // Stack den * e_i to make the lattice full rank, then reduce.
    ZMat stack(rows.rows() + n, n);
    for (long i = 0; i < rows.rows(); ++i)
        for (long j = 0; j < n; ++j) stack.at(i, j) = rows.at(i, j);
    for (long i = 0; i < n; ++i) stack.at(rows.rows() + i, i) = den;
    ZMat basis = hnf_lower(stack);
    if (basis.rows() != n) throw InternalError("HNF of full-rank lattice lost rank");

    // Minimize the denominator to the exponent of the group: the lcm of the
    // orders of the basis rows viewed in (Q/Z)^n.
    mpz_class expo = 1;
    for (long i = 0; i < n; ++i) {
        mpz_class g = den;
        for (long j = 0; j < n; ++j) g = gcd(g, basis.at(i, j));
        expo = lcm_positive(expo, den / g);
    }
    if (expo != den) {
        ZMat rescaled(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                mpz_class v = basis.at(i, j) * expo;
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), den.get_mpz_t());
                rescaled.at(i, j) = v;
            }
        return from_integer_rows(n, expo, rescaled);
    }

    FiniteDiagonalGroup g;
    g.n_ = n;
    g.N_ = den;
    g.basis_ = basis;
    mpz_class det = 1;
    for (long i = 0; i < n; ++i) det *= basis.at(i, i);
    mpz_class order;
    mpz_class nn;
    mpz_pow_ui(nn.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_divexact(order.get_mpz_t(), nn.get_mpz_t(), det.get_mpz_t());
    g.order_ = order;
    g.compute_structure();
    return g;
}

FiniteDiagonalGroup FiniteDiagonalGroup::canonicalize(long n,
                                                      const std::vector<TorsionVector>& gens) {
    mpz_class den = 1;
    for (const auto& g : gens) {
        if (g.dim() != n) throw DimensionMismatch("subgroup generator dimension");
        den = lcm_positive(den, g.order());
    }
    ZMat rows(static_cast<long>(gens.size()), n);
    for (size_t i = 0; i < gens.size(); ++i)
        for (long j = 0; j < n; ++j) {
            mpq_class v = gens[i].coord(j) * mpq_class(den);
            v.canonicalize();
            rows.at(static_cast<long>(i), j) = v.get_num();
        }
    return from_integer_rows(n, den, rows);
}

FiniteDiagonalGroup FiniteDiagonalGroup::kernel_mod_1(const ZMat& e) {
    long n = e.cols();
    SnfResult s = smith_normal_form(e);
    if (s.rank < n)
        throw InfiniteKernel("exponent rows do not span Q^n");
    // E r = 0 mod 1  <=>  D (V^-1 r) = 0 mod 1; solutions are generated by
    // the columns of V scaled by 1/d_j.
    std::vector<TorsionVector> gens;
    for (long j = 0; j < n; ++j) {
        const mpz_class& dj = s.d.at(j, j);
        if (dj == 1) continue;
        std::vector<mpq_class> col(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i) col[static_cast<size_t>(i)] = mpq_class(s.v.at(i, j), dj);
        gens.emplace_back(std::move(col));
    }
    return canonicalize(n, gens);
}

void FiniteDiagonalGroup::compute_structure() {
    // G = Z^n B / N Z^n ~ Z^n / Z^n Z with Z = N B^-1 (integral because
    // N Z^n <= L).  SNF of Z gives invariant factors and generators.
    ZMat binv_n(n_, n_);
    {
        // Solve X * B = N * I by forward substitution (B lower triangular).
        for (long r = 0; r < n_; ++r) {
            std::vector<mpq_class> x(static_cast<size_t>(n_));
            for (long j = n_ - 1; j >= 0; --j) {
                mpq_class rhs = (j == r) ? mpq_class(N_) : mpq_class(0);
                for (long k = j + 1; k < n_; ++k) rhs -= x[static_cast<size_t>(k)] * mpq_class(basis_.at(k, j));
                mpq_class v = rhs / mpq_class(basis_.at(j, j));
                v.canonicalize();
                x[static_cast<size_t>(j)] = v;
            }
            for (long j = 0; j < n_; ++j) {
                if (x[static_cast<size_t>(j)].get_den() != 1)
                    throw InternalError("N * B^-1 not integral");
                binv_n.at(r, j) = x[static_cast<size_t>(j)].get_num();
            }
        }
    }
    SnfResult s = smith_normal_form(binv_n);
    ZMat vinv = zmat_inverse_unimodular(s.v);
    ZMat gen_rows = zmat_mul(vinv, basis_);
    gens_.clear();
    factors_.clear();
    factor_rows_.clear();
    snf_v_ = s.v;
    for (long i = 0; i < n_; ++i) {
        const mpz_class& di = s.d.at(i, i);
        if (di == 1) continue;
        std::vector<mpq_class> row(static_cast<size_t>(n_));
        for (long j = 0; j < n_; ++j) row[static_cast<size_t>(j)] = mpq_class(gen_rows.at(i, j), N_);
        gens_.emplace_back(std::move(row));
        factors_.push_back(di);
        factor_rows_.push_back(i);
    }
}

std::vector<mpz_class> FiniteDiagonalGroup::lattice_coords(const TorsionVector& x) const {
    // v = N x must lie in the row lattice of B; solve w B = v by forward
    // substitution on the lower-triangular basis.
    std::vector<mpz_class> v(static_cast<size_t>(n_));
    for (long i = 0; i < n_; ++i) {
        mpq_class q = x.coord(i) * mpq_class(N_);
        q.canonicalize();
        if (q.get_den() != 1) throw InternalError("lattice_coords: denominator");
        v[static_cast<size_t>(i)] = q.get_num();
    }
    std::vector<mpz_class> w(static_cast<size_t>(n_));
    for (long j = n_ - 1; j >= 0; --j) {
        mpz_class rhs = v[static_cast<size_t>(j)];
        for (long k = j + 1; k < n_; ++k) rhs -= w[static_cast<size_t>(k)] * basis_.at(k, j);
        if (rhs % basis_.at(j, j) != 0) throw InternalError("lattice_coords: not in lattice");
        w[static_cast<size_t>(j)] = rhs / basis_.at(j, j);
    }
    return w;
}

bool FiniteDiagonalGroup::member(const TorsionVector& x) const {
    if (x.dim() != n_) throw DimensionMismatch("membership test");
    // The order of x must divide the exponent.
    for (long i = 0; i < n_; ++i)
        if (N_ % x.coord(i).get_den() != 0) return false;
    std::vector<mpz_class> v(static_cast<size_t>(n_));
    for (long i = 0; i < n_; ++i) {
        mpq_class q = x.coord(i) * mpq_class(N_);
        q.canonicalize();
        v[static_cast<size_t>(i)] = q.get_num();
    }
    // Reduce against the lower-triangular basis from the last coordinate.
    for (long i = n_ - 1; i >= 0; --i) {
        if (v[static_cast<size_t>(i)] % basis_.at(i, i) != 0) return false;
        mpz_class c = v[static_cast<size_t>(i)] / basis_.at(i, i);
        if (c == 0) continue;
        for (long j = 0; j <= i; ++j) v[static_cast<size_t>(j)] -= c * basis_.at(i, j);
    }
    return true;
}

bool FiniteDiagonalGroup::contains(const FiniteDiagonalGroup& sub) const {
    if (sub.n_ != n_) throw DimensionMismatch("contains");
    for (const auto& g : sub.lattice_generators())
        if (!member(g)) return false;
    return true;
}

std::vector<TorsionVector> FiniteDiagonalGroup::lattice_generators() const {
    std::vector<TorsionVector> out;
    out.reserve(static_cast<size_t>(n_));
    for (long i = 0; i < n_; ++i) {
        std::vector<mpq_class> row(static_cast<size_t>(n_));
        for (long j = 0; j < n_; ++j) row[static_cast<size_t>(j)] = mpq_class(basis_.at(i, j), N_);
        out.emplace_back(std::move(row));
    }
    return out;
}

FiniteDiagonalGroup FiniteDiagonalGroup::intersect(const FiniteDiagonalGroup& o) const {
    if (o.n_ != n_) throw DimensionMismatch("intersect");
    mpz_class den = lcm_positive(N_, o.N_);
    auto lift = [&](const FiniteDiagonalGroup& g) {
        ZMat rows(g.n_ + g.n_, g.n_);
        mpz_class f = den / g.N_;
        for (long i = 0; i < g.n_; ++i) {
            for (long j = 0; j < g.n_; ++j) rows.at(i, j) = g.basis_.at(i, j) * f;
            rows.at(g.n_ + i, i) = den;
        }
        return hnf_lower(rows);
    };
    ZMat inter = lattice_intersect_rows(lift(*this), lift(o));
    return from_integer_rows(n_, den, inter);
}

FiniteDiagonalGroup FiniteDiagonalGroup::join(const FiniteDiagonalGroup& o) const {
    if (o.n_ != n_) throw DimensionMismatch("join");
    std::vector<TorsionVector> gens = lattice_generators();
    auto og = o.lattice_generators();
    gens.insert(gens.end(), og.begin(), og.end());
    return canonicalize(n_, gens);
}

FiniteDiagonalGroup FiniteDiagonalGroup::coordinate_kernel(const std::vector<long>& zero_at) const {
    std::vector<bool> z(static_cast<size_t>(n_), false);
    for (long i : zero_at) {
        if (i < 0 || i >= n_) throw DimensionMismatch("coordinate index out of range");
        z[static_cast<size_t>(i)] = true;
    }
    // Intersect with the full axis subgroup { r : r_i = 0 for i in zero_at }.
    ZMat rows(n_, n_);
    for (long i = 0; i < n_; ++i) rows.at(i, i) = z[static_cast<size_t>(i)] ? N_ : mpz_class(1);
    FiniteDiagonalGroup axis = from_integer_rows(n_, N_, rows);
    return intersect(axis);
}

std::vector<mpz_class> FiniteDiagonalGroup::element_coords(const TorsionVector& x) const {
    if (!member(x)) throw InternalError("element_coords of non-member");
    // v = N x = w B; coords are (w V) mod d_i at the nontrivial factor rows.
    std::vector<mpz_class> w = lattice_coords(x);
    std::vector<mpz_class> coords;
    coords.reserve(factor_rows_.size());
    for (size_t fi = 0; fi < factor_rows_.size(); ++fi) {
        long i = factor_rows_[fi];
        mpz_class y = 0;
        for (long k = 0; k < n_; ++k) y += w[static_cast<size_t>(k)] * snf_v_.at(k, i);
        mpz_class m;
        mpz_fdiv_r(m.get_mpz_t(), y.get_mpz_t(), factors_[fi].get_mpz_t());
        coords.push_back(m);
    }
    return coords;
}

std::vector<TorsionVector> FiniteDiagonalGroup::elements(unsigned long limit) const {
    if (order_ > limit) throw ResourceLimit("group too large to enumerate");
    std::vector<TorsionVector> out{TorsionVector::zero(n_)};
    for (size_t gi = 0; gi < gens_.size(); ++gi) {
        std::vector<TorsionVector> next;
        unsigned long d = factors_[gi].get_ui();
        TorsionVector step = gens_[gi];
        for (const auto& base : out) {
            TorsionVector cur = base;
            for (unsigned long k = 0; k < d; ++k) {
                next.push_back(cur);
                cur = cur + step;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool FiniteDiagonalGroup::operator<(const FiniteDiagonalGroup& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    int c = cmp(N_, o.N_);
    if (c != 0) return c < 0;
    return basis_ < o.basis_;
}

std::string FiniteDiagonalGroup::to_string() const {
    std::ostringstream os;
    os << "{N=" << N_.get_str() << ", basis=" << basis_.to_string()
       << ", order=" << order_.get_str() << "}";
    return os.str();
}

} // namespace equizeta
