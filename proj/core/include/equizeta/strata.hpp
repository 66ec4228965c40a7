#ifndef EQUIZETA_STRATA_HPP
#define EQUIZETA_STRATA_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equizeta/qhpoly.hpp"
#include "equizeta/torsion.hpp"

namespace equizeta {

enum class ChiProvenance { MilnorOrlik, Polytope, Override };

std::string provenance_name(ChiProvenance p);

// Integer chi overrides keyed by 0-based strictly increasing index sets.
struct ChiOverrides {
    std::map<std::vector<long>, long> chi_v;
    std::map<std::vector<long>, long> chi_y;
    bool empty() const { return chi_v.empty() && chi_y.empty(); }
};

struct StrataEntry {
    std::vector<long> index_set;           // 0-based, strictly increasing, nonempty
    long chi_v = 0;                   // chi of the Milnor-fibre stratum
    ChiProvenance prov_v = ChiProvenance::MilnorOrlik;
    std::optional<long> chi_v_alt;    // the other route's value, when available
    std::optional<bool> routes_agree;
    long chi_y = 0;                   // chi of the hypersurface stratum / extended group
    ChiProvenance prov_y = ChiProvenance::Polytope;
    FiniteDiagonalGroup iso_in_g;          // stabilizer within the finite group
    FiniteDiagonalGroup iso_in_ext;        // stabilizer within the extended group

    StrataEntry(FiniteDiagonalGroup g, FiniteDiagonalGroup e)
        : iso_in_g(std::move(g)), iso_in_ext(std::move(e)) {}
};

// Per-stratum Euler characteristics over all nonempty coordinate index sets,
// ordered lexicographically.  chi_v over the empty set is 0 by convention
// and not stored.
struct StrataChi {
    long n = 0;
    std::vector<StrataEntry> entries;

    const StrataEntry& lookup(const std::vector<long>& index_set) const;
    long chi_v_total() const;
    bool any_override() const;
};

// Product of (d - q_i)/q_i: the Milnor number of an isolated
// quasihomogeneous germ as an exact rational.  A non-integral value proves
// the singularity is not isolated; an integral value alone proves nothing.
mpq_class milnor_number(const QuasiPolynomial& p);

// Graded dimension count of C[x]/(jacobian ideal): the total dimension when
// the algebra is finite-dimensional (detected by a window of vanishing
// graded pieces past the socle degree), nullopt otherwise.
std::optional<mpz_class> milnor_algebra_oracle(const QuasiPolynomial& p,
                                               unsigned long resource_limit);

// chi of { f restricted to the axes in keep } = 1 inside the affine
// coordinate subspace.  Throws UnsupportedRestriction for nonzero
// restrictions that are not isolated.
long chi_affine_fibre(const QuasiPolynomial& p, const std::vector<long>& keep,
                           unsigned long resource_limit);

// chi of the Milnor fibre intersected with every coordinate torus, by
// inclusion-exclusion over the affine values.  Keys are nonempty index sets.
std::map<std::vector<long>, long> chi_torus_strata(const QuasiPolynomial& p,
                                                        unsigned long resource_limit);

// Newton-polytope route for the same stratum chi.
long chi_polytope_oracle(const QuasiPolynomial& p, const std::vector<long>& keep);

// chi of (X intersect torus(keep)) / extended group, via the invariant
// Laurent function on the quotient torus.
long chi_orbit_space(const QuasiPolynomial& p, const ExtendedGroup& ext,
                          const std::vector<long>& keep);

// Assemble the full table for one polynomial and group choice.
StrataChi compute_strata(const QuasiPolynomial& p, const ExtendedGroup& ext,
                         const ChiOverrides& overrides, unsigned long resource_limit);

unsigned long default_resource_limit();

} // namespace equizeta

#endif
