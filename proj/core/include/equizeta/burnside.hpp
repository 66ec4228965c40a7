#ifndef EQUIZETA_BURNSIDE_HPP
#define EQUIZETA_BURNSIDE_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "equizeta/qhpoly.hpp"
#include "equizeta/strata.hpp"
#include "equizeta/torsion.hpp"

namespace equizeta {

// Element of the Burnside ring of a finite abelian group: an integer
// combination of classes [G/H] keyed by canonical subgroups.
class BurnsideElement {
public:
    explicit BurnsideElement(FiniteDiagonalGroup ambient);
    static BurnsideElement basis(const FiniteDiagonalGroup& ambient,
                                 const FiniteDiagonalGroup& subgroup, long coeff = 1);
    static BurnsideElement one(const FiniteDiagonalGroup& ambient);

    const FiniteDiagonalGroup& ambient() const { return ambient_; }
    const std::map<FiniteDiagonalGroup, long>& coeffs() const { return c_; }
    long coeff(const FiniteDiagonalGroup& subgroup) const;
    bool is_zero() const { return c_.empty(); }

    void add_term(const FiniteDiagonalGroup& subgroup, long coeff);

    BurnsideElement operator+(const BurnsideElement& o) const;
    BurnsideElement operator-(const BurnsideElement& o) const;
    BurnsideElement operator-() const;
    BurnsideElement scaled(long s) const;
    BurnsideElement operator*(const BurnsideElement& o) const;

    bool operator==(const BurnsideElement& o) const {
        return ambient_ == o.ambient_ && c_ == o.c_;
    }
    bool operator!=(const BurnsideElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    FiniteDiagonalGroup ambient_;
    std::map<FiniteDiagonalGroup, long> c_;
};

// Restriction of G-sets to a subgroup: [G/K] decomposes into
// |G| |H ^ K| / (|K| |H|) copies of [H/(H ^ K)].
BurnsideElement res(const BurnsideElement& a, const FiniteDiagonalGroup& subgroup);

// Induction from a subgroup: [H/H'] goes to [G/H'].
BurnsideElement ind(const BurnsideElement& a, const FiniteDiagonalGroup& group);

// Image in the representation ring: [G/H] becomes the multiset of
// characters of G trivial on H.  Characters are value tuples on the
// invariant-factor generators of G; the result is sorted.
std::vector<std::pair<std::vector<mpq_class>, long>> to_repr_ring(const BurnsideElement& a);

// Element of the Grothendieck group of extended-group sets with finitely
// many orbits and finite isotropy.  Keys are finite subgroups certified to
// lie in the extended group.  There is no multiplication.
class ExtBurnsideElement {
public:
    explicit ExtBurnsideElement(ExtendedGroup ambient);
    static ExtBurnsideElement basis(const ExtendedGroup& ambient,
                                    const FiniteDiagonalGroup& subgroup, long coeff = 1);

    const ExtendedGroup& ambient() const { return ambient_; }
    const std::map<FiniteDiagonalGroup, long>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void add_term(const FiniteDiagonalGroup& subgroup, long coeff);

    ExtBurnsideElement operator+(const ExtBurnsideElement& o) const;
    ExtBurnsideElement operator-(const ExtBurnsideElement& o) const;
    ExtBurnsideElement operator-() const;
    ExtBurnsideElement scaled(long s) const;

    bool operator==(const ExtBurnsideElement& o) const {
        return ambient_ == o.ambient_ && c_ == o.c_;
    }
    bool operator!=(const ExtBurnsideElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    ExtendedGroup ambient_;
    std::map<FiniteDiagonalGroup, long> c_;
};

// [G/H] to [Gbar/H] for the finite part G of the extended group.
ExtBurnsideElement ind_ext(const BurnsideElement& a, const ExtendedGroup& ext);

// Left inverse of ind_ext: [Gbar/H] to [G/(H ^ G)].
BurnsideElement red(const ExtBurnsideElement& a);

// The equivariant zeta function as an element of the Burnside ring of the
// finite part: strata grouped by their stabilizer H contribute
// chi(stratum) |H| / |G| to the coefficient of [G/H].
BurnsideElement zeta_equivariant(const StrataChi& strata, const ExtendedGroup& ext);

// zeta - 1.
BurnsideElement zeta_reduced(const StrataChi& strata, const ExtendedGroup& ext);

// The orbit invariant: hypersurface strata grouped by their extended-group
// stabilizer, with orbit-space Euler characteristics as coefficients.
ExtBurnsideElement orbit_invariant(const StrataChi& strata, const ExtendedGroup& ext);

// Formal product prod_m (1 - t^m)^{s_m}.  The bijection with the Burnside
// ring of a cyclic group keeps every index a divisor of the modulus; the
// classical encodings (Poincare series, orbit polynomial) may use other
// indices.
class CyclotomicFunction {
public:
    explicit CyclotomicFunction(mpz_class modulus) : d_(std::move(modulus)) {}

    const mpz_class& modulus() const { return d_; }
    const std::map<mpz_class, long>& exponents() const { return s_; }
    void add_factor(const mpz_class& m, long e);
    bool indices_divide_modulus() const;

    CyclotomicFunction operator*(const CyclotomicFunction& o) const;

    // Coefficients 0..depth of the expansion as a power series in t.
    // The negative-exponent factors expand by geometric series; all
    // arithmetic is integral.
    std::vector<mpz_class> expand(long depth) const;

    std::string to_string() const;

    bool operator==(const CyclotomicFunction& o) const { return d_ == o.d_ && s_ == o.s_; }

private:
    mpz_class d_;
    std::map<mpz_class, long> s_;
};

// Bijection with the Burnside ring of a cyclic ambient group:
// [Z_d / Z_{d/m}] maps to the exponent slot m.
CyclotomicFunction to_cyclotomic(const BurnsideElement& a);
BurnsideElement from_cyclotomic(const CyclotomicFunction& f, const FiniteDiagonalGroup& ambient);

// The involution exchanging the slots m and d/m with negated exponents.
// Requires every index to divide the modulus.
CyclotomicFunction saito_dual(const CyclotomicFunction& f);

} // namespace equizeta

#endif
