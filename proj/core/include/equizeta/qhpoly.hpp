#ifndef EQUIZETA_QHPOLY_HPP
#define EQUIZETA_QHPOLY_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "equizeta/torsion.hpp"
#include "equizeta/zmat.hpp"

namespace equizeta {

// Weight system (q_1, ..., q_n; d).  Inferred systems are primitive
// (gcd over the q_i is 1); systems induced on coordinate restrictions keep
// the weights of the parent polynomial and need not be primitive.
struct WeightSystem {
    std::vector<mpz_class> q;
    mpz_class d;

    long n() const { return static_cast<long>(q.size()); }
    mpz_class quasidegree(const std::vector<long>& exps) const;
    bool operator==(const WeightSystem& o) const { return q == o.q && d == o.d; }
    bool operator!=(const WeightSystem& o) const { return !(*this == o); }
    std::string to_string() const;
};

struct Term {
    std::vector<long> exps;
    mpq_class coeff;
};

// A polynomial with rational coefficients and distinct exponent vectors,
// optionally carrying a weight system under which it is quasihomogeneous.
class QuasiPolynomial {
public:
    QuasiPolynomial(long n, std::vector<Term> terms);

    long var_count() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool has_weights() const { return w_.has_value(); }
    const WeightSystem& weights() const;
    QuasiPolynomial with_weights(WeightSystem w) const;

    // The unique primitive positive weight system, when the support affinely
    // generates a hyperplane off the origin.  Throws NotQuasihomogeneous,
    // WeightsNotUnique or NonPositiveWeight.
    QuasiPolynomial with_inferred_weights() const;

    // Rows are the exponent vectors of the support.
    ZMat exponent_matrix() const;

    // G_f: the diagonal transformations preserving every monomial of f.
    FiniteDiagonalGroup symmetry_group() const;

    // h = (q_1/d, ..., q_n/d) mod 1; always a member of symmetry_group().
    TorsionVector monodromy_element() const;

    // f with x_i := 0 for i outside keep (0-based, strictly increasing),
    // reindexed to |keep| variables.  Carries the induced weights.  The zero
    // restriction is returned as a polynomial without terms.
    QuasiPolynomial restrict(const std::vector<long>& keep) const;

    std::string to_string(const std::vector<std::string>& var_names = {}) const;

private:
    long n_;
    std::vector<Term> terms_;
    std::optional<WeightSystem> w_;
};

// A subgroup of the extended symmetry group containing the C*-orbit of the
// weights, stored as its finite part G (a subgroup of G_f containing the
// monodromy element) together with the weight system: the full group is
// C* . G and is never materialized.
class ExtendedGroup {
public:
    ExtendedGroup(WeightSystem w, FiniteDiagonalGroup finite_part);

    const WeightSystem& weights() const { return w_; }
    const FiniteDiagonalGroup& group() const { return g_; }
    const TorsionVector& monodromy() const { return h_; }
    long dim() const { return g_.dim(); }

    // Membership of a torsion vector in C* . G.
    bool ext_member(const TorsionVector& a) const;

    // Pointwise stabilizer of the coordinate torus { x_i != 0 iff i in keep }
    // inside the extended group; finite for nonempty keep.
    FiniteDiagonalGroup coordinate_kernel(const std::vector<long>& keep) const;

    // Coordinates of h in the invariant-factor basis of G.
    const std::vector<mpz_class>& monodromy_coords() const { return h_coords_; }

    bool operator==(const ExtendedGroup& o) const { return w_ == o.w_ && g_ == o.g_; }
    bool operator!=(const ExtendedGroup& o) const { return !(*this == o); }

private:
    WeightSystem w_;
    FiniteDiagonalGroup g_;
    TorsionVector h_;
    std::vector<mpz_class> h_coords_;
};

// The point of the C*-line at parameter t: (t q_1, ..., t q_n) mod 1.
TorsionVector cstar_point(const WeightSystem& w, const mpq_class& t);

} // namespace equizeta

#endif
