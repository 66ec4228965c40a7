#ifndef EQUIZETA_TORSION_HPP
#define EQUIZETA_TORSION_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "equizeta/zmat.hpp"

namespace equizeta {

// An element of (Q/Z)^n: the additive avatar of a diagonal transformation
// (e^{2 pi i r_1}, ..., e^{2 pi i r_n}).  Coordinates are kept reduced and
// normalized into [0, 1).
class TorsionVector {
public:
    explicit TorsionVector(std::vector<mpq_class> coords);
    static TorsionVector zero(long n);

    long dim() const { return static_cast<long>(c_.size()); }
    const mpq_class& coord(long i) const { return c_[static_cast<size_t>(i)]; }
    const std::vector<mpq_class>& coords() const { return c_; }

    bool is_zero() const;
    // lcm of the coordinate denominators = order in (Q/Z)^n.
    mpz_class order() const;

    TorsionVector operator+(const TorsionVector& o) const;
    TorsionVector operator-() const;
    TorsionVector scaled(const mpq_class& t) const;

    bool operator==(const TorsionVector& o) const { return c_ == o.c_; }
    bool operator!=(const TorsionVector& o) const { return !(*this == o); }
    bool operator<(const TorsionVector& o) const;

    std::string to_string() const;

private:
    std::vector<mpq_class> c_;
};

// Reduce a rational into [0, 1) modulo 1.
mpq_class mod1(const mpq_class& q);

// A finite subgroup of (Q/Z)^n in canonical form: the common denominator N
// equals the exponent of the group, and the group is L / (N Z^n) for an
// integer lattice L with N Z^n <= L <= Z^n given by its lower-triangular
// HNF basis.  Two generator sets of the same subgroup produce identical
// (N, basis) pairs, so values of this class serve as keys.
class FiniteDiagonalGroup {
public:
    static FiniteDiagonalGroup trivial(long n);
    static FiniteDiagonalGroup canonicalize(long n, const std::vector<TorsionVector>& gens);
    // Solutions of E * r = 0 mod 1 in (Q/Z)^n for an integer matrix E.
    // Throws InfiniteKernel unless the rows of E span Q^n.
    static FiniteDiagonalGroup kernel_mod_1(const ZMat& e);

    long dim() const { return n_; }
    const mpz_class& exponent() const { return N_; }
    const ZMat& basis() const { return basis_; }
    const mpz_class& order() const { return order_; }

    bool member(const TorsionVector& x) const;
    bool contains(const FiniteDiagonalGroup& sub) const;
    FiniteDiagonalGroup intersect(const FiniteDiagonalGroup& o) const;
    FiniteDiagonalGroup join(const FiniteDiagonalGroup& o) const;
    // Subgroup of elements whose coordinates at the (0-based) indices in
    // zero_at vanish.
    FiniteDiagonalGroup coordinate_kernel(const std::vector<long>& zero_at) const;

    // Generators of the basis lattice viewed in (Q/Z)^n (rows / N).
    std::vector<TorsionVector> lattice_generators() const;

    // Invariant-factor decomposition: generators g_i of orders d_i with
    // d_1 | d_2 | ... and G = <g_1> + ... + <g_s> (direct).
    const std::vector<TorsionVector>& snf_generators() const { return gens_; }
    const std::vector<mpz_class>& invariant_factors() const { return factors_; }
    bool is_cyclic() const { return factors_.size() <= 1; }

    // Coordinates of x in the snf generator basis, reduced mod d_i.
    // Precondition: member(x).
    std::vector<mpz_class> element_coords(const TorsionVector& x) const;

    // Full element list; guarded against large groups.
    std::vector<TorsionVector> elements(unsigned long limit = 1000000) const;

    bool operator==(const FiniteDiagonalGroup& o) const {
        return n_ == o.n_ && N_ == o.N_ && basis_ == o.basis_;
    }
    bool operator!=(const FiniteDiagonalGroup& o) const { return !(*this == o); }
    bool operator<(const FiniteDiagonalGroup& o) const;

    std::string to_string() const;

private:
    FiniteDiagonalGroup() : n_(0) {}
    static FiniteDiagonalGroup from_integer_rows(long n, const mpz_class& den,
                                                 const ZMat& rows);
    void compute_structure();
    std::vector<mpz_class> lattice_coords(const TorsionVector& x) const;

    long n_;
    mpz_class N_;      // exponent of the group
    ZMat basis_;       // n x n lower-triangular HNF, rows generate L
    mpz_class order_;
    std::vector<TorsionVector> gens_;
    std::vector<mpz_class> factors_;
    ZMat snf_v_;                     // column transform of SNF(N B^-1)
    std::vector<long> factor_rows_;  // indices of nontrivial invariant factors
};

} // namespace equizeta

#endif
