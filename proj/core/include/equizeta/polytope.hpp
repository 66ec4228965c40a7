#ifndef EQUIZETA_POLYTOPE_HPP
#define EQUIZETA_POLYTOPE_HPP

#include <gmpxx.h>

#include <vector>

namespace equizeta {

using LatticePoint = std::vector<mpz_class>;

// Normalized lattice volume k! * vol(conv(points)) of a polytope in Z^k,
// computed exactly by decomposing the hull into pyramids over its facets
// from a fixed apex and recursing into the facet lattices.  Returns 0 for
// lower-dimensional point sets.
mpz_class normalized_volume(std::vector<LatticePoint> points, long dim);

// Euler characteristic of a nondegenerate hypersurface { g = 0 } in the
// k-torus with Newton polytope conv(support): (-1)^(k-1) * k! * vol.
mpz_class torus_hypersurface_chi(const std::vector<LatticePoint>& support, long dim);

} // namespace equizeta

#endif
