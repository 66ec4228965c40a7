#include "equizeta/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "equizeta/errors.hpp"
#include "equizeta/zmat.hpp"

namespace equizeta {

namespace {

mpz_class dot(const LatticePoint& a, const LatticePoint& b) {
    mpz_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Primitive normal of the affine hyperplane through the given affinely
// independent points (k points in Z^k); empty when they are dependent.
LatticePoint hyperplane_normal(const std::vector<LatticePoint>& pts) {
    size_t k = pts[0].size();
    QMatDense diffs(pts.size() - 1, QVec(k));
    for (size_t i = 1; i < pts.size(); ++i)
        for (size_t j = 0; j < k; ++j) diffs[i - 1][j] = mpq_class(pts[i][j] - pts[0][j]);
    auto kernel = q_right_kernel(diffs);
    if (kernel.size() != 1) return {};
    auto z = primitive_integer_vector(kernel[0]);
    return z;
}

// Unimodular transform whose columns 1..k-1 span the lattice orthogonal to
// the primitive vector u; gives coordinates on a facet hyperplane.
ZMat hyperplane_basis_inverse(const LatticePoint& u) {
    long k = static_cast<long>(u.size());
    ZMat row(1, k);
    for (long j = 0; j < k; ++j) row.at(0, j) = u[static_cast<size_t>(j)];
    SnfResult s = smith_normal_form(row);
    // u * V = (+-1, 0, ..., 0) since u is primitive.
    return zmat_inverse_unimodular(s.v);
}

} // namespace

mpz_class normalized_volume(std::vector<LatticePoint> points, long dim) {
    for (const auto& p : points)
        if (static_cast<long>(p.size()) != dim)
            throw DimensionMismatch("polytope point dimension");
    std::sort(points.begin(), points.end(),
              [](const LatticePoint& a, const LatticePoint& b) {
                  for (size_t i = 0; i < a.size(); ++i) {
                      int c = cmp(a[i], b[i]);
                      if (c != 0) return c < 0;
                  }
                  return false;
              });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.empty()) return 0;
    if (dim == 0) return 1;
    if (points.size() <= static_cast<size_t>(dim)) return 0; // too few vertices
    if (dim == 1) {
        return points.back()[0] - points.front()[0];
    }

    // Affine rank check.
    {
        QMatDense diffs(points.size() - 1, QVec(static_cast<size_t>(dim)));
        for (size_t i = 1; i < points.size(); ++i)
            for (long j = 0; j < dim; ++j)
                diffs[i - 1][static_cast<size_t>(j)] = mpq_class(points[i][static_cast<size_t>(j)] - points[0][static_cast<size_t>(j)]);
        if (q_rank(diffs) < dim) return 0;
    }

    // Enumerate candidate facet hyperplanes from dim-subsets of the points.
    std::set<std::pair<LatticePoint, mpz_class>> facets;
    size_t npts = points.size();
    std::vector<size_t> comb(static_cast<size_t>(dim));
    for (size_t i = 0; i < comb.size(); ++i) comb[i] = i;
    while (true) {
        std::vector<LatticePoint> sub;
        sub.reserve(comb.size());
        for (size_t i : comb) sub.push_back(points[i]);
        LatticePoint u = hyperplane_normal(sub);
        if (!u.empty()) {
            mpz_class c = dot(u, sub[0]);
            bool above = false, below = false;
            for (const auto& p : points) {
                int s = cmp(dot(u, p), c);
                if (s > 0) above = true;
                if (s < 0) below = true;
                if (above && below) break;
            }
            if (!(above && below)) {
                // Orient so that the polytope lies on the <= side.
                LatticePoint un = u;
                mpz_class cn = c;
                if (above)
                    for (auto& x : un) x = -x;
                if (above) cn = -cn;
                facets.insert({un, cn});
            }
        }
        // next combination
        long pos = dim - 1;
        while (pos >= 0 && comb[static_cast<size_t>(pos)] == npts - static_cast<size_t>(dim - pos)) --pos;
        if (pos < 0) break;
        ++comb[static_cast<size_t>(pos)];
        for (long j = pos + 1; j < dim; ++j) comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
    }

    const LatticePoint& apex = points.front(); // lexicographic minimum is a vertex
    mpz_class total = 0;
    for (const auto& [u, c] : facets) {
        mpz_class height = c - dot(u, apex); // >= 0 by orientation
        if (height == 0) continue;
        std::vector<LatticePoint> on_plane;
        for (const auto& p : points)
            if (dot(u, p) == c) on_plane.push_back(p);
        ZMat vinv = hyperplane_basis_inverse(u);
        // Coordinates of (p - p0) in the hyperplane lattice: components
        // 1..dim-1 of vinv * (p - p0); component 0 vanishes.
        std::vector<LatticePoint> proj;
        proj.reserve(on_plane.size());
        for (const auto& p : on_plane) {
            LatticePoint y(static_cast<size_t>(dim - 1));
            for (long i = 1; i < dim; ++i) {
                mpz_class s = 0;
                for (long j = 0; j < dim; ++j)
                    s += vinv.at(i, j) * (p[static_cast<size_t>(j)] - on_plane[0][static_cast<size_t>(j)]);
                y[static_cast<size_t>(i - 1)] = s;
            }
            proj.push_back(std::move(y));
        }
        total += height * normalized_volume(std::move(proj), dim - 1);
    }
    return total;
}

mpz_class torus_hypersurface_chi(const std::vector<LatticePoint>& support, long dim) {
    if (dim < 1) throw InvalidInput("torus hypersurface needs dimension >= 1");
    mpz_class nv = normalized_volume(support, dim);
    return (dim % 2 == 1) ? nv : mpz_class(-nv);
}

} // namespace equizeta
