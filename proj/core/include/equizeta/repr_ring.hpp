#ifndef EQUIZETA_REPR_RING_HPP
#define EQUIZETA_REPR_RING_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "equizeta/burnside.hpp"
#include "equizeta/qhpoly.hpp"

namespace equizeta {

// A one-dimensional character of the extended group: degree k on the
// C*-part (lambda acts as lambda^k) and values on the invariant-factor
// generators of the finite part.  The value at the monodromy element always
// equals k/d mod 1; characters are only created through the functions below,
// which guarantee it.
struct ExtCharacter {
    long k = 0;
    std::vector<mpq_class> chi; // values on snf generators, in [0,1)

    bool operator==(const ExtCharacter& o) const { return k == o.k && chi == o.chi; }
    bool operator!=(const ExtCharacter& o) const { return !(*this == o); }
    bool operator<(const ExtCharacter& o) const;
    std::string to_string() const;
};

ExtCharacter trivial_character(const ExtendedGroup& ext);
ExtCharacter monomial_character(const ExtendedGroup& ext, const std::vector<long>& exps);
ExtCharacter char_mul(const ExtCharacter& a, const ExtCharacter& b);
ExtCharacter char_inverse(const ExtCharacter& a);
bool char_compatible(const ExtendedGroup& ext, const ExtCharacter& c);

// Kernel of a nonzero-degree character inside the extended group, as a
// finite subgroup; its order is |k| |G| / d.
FiniteDiagonalGroup char_kernel(const ExtendedGroup& ext, const ExtCharacter& c);

// Integer combination of characters with finite support.
class FiniteRepElement {
public:
    explicit FiniteRepElement(ExtendedGroup ambient);

    const ExtendedGroup& ambient() const { return ambient_; }
    const std::map<ExtCharacter, long>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    void add_term(const ExtCharacter& ch, long coeff);

    FiniteRepElement operator+(const FiniteRepElement& o) const;
    FiniteRepElement operator-(const FiniteRepElement& o) const;
    bool operator==(const FiniteRepElement& o) const {
        return ambient_ == o.ambient_ && c_ == o.c_;
    }
    std::string to_string() const;

private:
    ExtendedGroup ambient_;
    std::map<ExtCharacter, long> c_;
};

// Truncated element of the completed non-positive representation ring:
// integer coefficients on characters of degree 0 >= k >= -depth.
class NegSeries {
public:
    NegSeries(ExtendedGroup ambient, long depth);

    const ExtendedGroup& ambient() const { return ambient_; }
    long depth() const { return depth_; }
    const std::map<ExtCharacter, long>& coeffs() const { return c_; }
    long coeff(const ExtCharacter& ch) const;
    bool is_zero() const { return c_.empty(); }
    void add_term(const ExtCharacter& ch, long coeff);

    NegSeries operator+(const NegSeries& o) const;
    NegSeries operator-(const NegSeries& o) const;
    NegSeries operator*(const NegSeries& o) const;

    static NegSeries one(const ExtendedGroup& ambient, long depth);

    // Multiply by (1 - [ch])^e for a strictly negative character; e may be
    // negative (geometric series).
    NegSeries times_one_minus_power(const ExtCharacter& ch, long e) const;

    bool operator==(const NegSeries& o) const {
        return ambient_ == o.ambient_ && depth_ == o.depth_ && c_ == o.c_;
    }
    bool operator!=(const NegSeries& o) const { return !(*this == o); }

    // Forget the finite part: coefficients of the classical series by
    // C*-degree, index s = -k from 0 to depth.
    std::vector<long> classical_coefficients() const;

    std::string to_string() const;

private:
    ExtendedGroup ambient_;
    long depth_;
    std::map<ExtCharacter, long> c_;
};

NegSeries to_series(const FiniteRepElement& a, long depth);

// Exp(sum s_a [a]) = prod (1 - [a])^{-s_a}, from sums of strictly negative
// characters to series with constant term 1.
NegSeries exp_map(const NegSeries& a);
NegSeries exp_map(const FiniteRepElement& a, long depth);

// Inverse of exp_map, degree by degree.  The input must have constant
// term exactly 1 (coefficient 1 on the trivial character, nothing else in
// degree 0).
NegSeries log_map(const NegSeries& a);

enum class PoincareKind { AmbientSpace, Hypersurface };

// Equivariant Poincare series by direct monomial counting up to quasidegree
// depth.  For the hypersurface the graded dimensions are counted via the
// multiplication-by-f exact sequence.
NegSeries poincare_counted(PoincareKind kind, const QuasiPolynomial& p,
                           const ExtendedGroup& ext, long depth,
                           unsigned long resource_limit);

// Closed form: a product representation with one-minus-character factors.
struct ClosedPoincare {
    ExtendedGroup ambient;
    std::vector<ExtCharacter> numerator_factors;   // product of (1 - [a])
    std::vector<ExtCharacter> denominator_factors; // divided by (1 - [a])
    std::string to_string() const;
};

ClosedPoincare poincare_closed(PoincareKind kind, const QuasiPolynomial& p,
                               const ExtendedGroup& ext);
NegSeries expand(const ClosedPoincare& c, long depth);

// Log of the hypersurface Poincare series in closed form:
// sum over variables of [a_{x_i}] minus [a_f].
FiniteRepElement log_poincare(const QuasiPolynomial& p, const ExtendedGroup& ext);

// Tautological map: a strictly negative character goes to the class of the
// punctured representation line, [Gbar / ker a].
ExtBurnsideElement tau(const FiniteRepElement& a);

} // namespace equizeta

#endif
