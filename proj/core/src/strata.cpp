#include "equizeta/strata.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "equizeta/errors.hpp"
#include "equizeta/polytope.hpp"
#include "equizeta/zmat.hpp"

namespace equizeta {

std::string provenance_name(ChiProvenance p) {
    switch (p) {
        case ChiProvenance::MilnorOrlik: return "milnor-orlik";
        case ChiProvenance::Polytope: return "polytope";
        case ChiProvenance::Override: return "override";
    }
    return "?";
}

unsigned long default_resource_limit() {
    if (const char* env = std::getenv("EQUIZETA_RESOURCE_LIMIT")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 200000;
}

const StrataEntry& StrataChi::lookup(const std::vector<long>& index_set) const {
    for (const auto& e : entries)
        if (e.index_set == index_set) return e;
    throw InternalError("stratum lookup failed");
}

long StrataChi::chi_v_total() const {
    long s = 0;
    for (const auto& e : entries) s += e.chi_v;
    return s;
}

bool StrataChi::any_override() const {
    for (const auto& e : entries)
        if (e.prov_v == ChiProvenance::Override || e.prov_y == ChiProvenance::Override)
            return true;
    return false;
}

mpq_class milnor_number(const QuasiPolynomial& p) {
    const WeightSystem& w = p.weights();
    if (p.is_zero()) throw InvalidInput("Milnor number of the zero polynomial");
    mpq_class mu = 1;
    for (const auto& qi : w.q) mu *= mpq_class(w.d - qi, qi);
    mu.canonicalize();
    return mu;
}

namespace {

// Monomial exponent vectors of a fixed quasidegree.
void enumerate_degree(const std::vector<mpz_class>& q, long var, const mpz_class& remaining,
                      std::vector<long>& cur, std::vector<std::vector<long>>& out,
                      unsigned long limit) {
    if (var == static_cast<long>(q.size())) {
        if (remaining == 0) {
            out.push_back(cur);
            if (out.size() > limit)
                throw ResourceLimit("monomial count per degree exceeds the configured bound");
        }
        return;
    }
    // Last variable: exponent forced if divisible.
    mpz_class e = 0;
    for (; e * q[static_cast<size_t>(var)] <= remaining; ++e) {
        cur.push_back(e.get_si());
        enumerate_degree(q, var + 1, remaining - e * q[static_cast<size_t>(var)], cur, out, limit);
        cur.pop_back();
    }
}

std::vector<std::vector<long>> monomials_of_degree(const std::vector<mpz_class>& q,
                                                   const mpz_class& deg, unsigned long limit) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    enumerate_degree(q, 0, deg, cur, out, limit);
    return out;
}

} // namespace

std::optional<mpz_class> milnor_algebra_oracle(const QuasiPolynomial& p,
                                               unsigned long resource_limit) {
    const WeightSystem& w = p.weights();
    long n = p.var_count();
    if (p.is_zero()) throw InvalidInput("Milnor algebra of the zero polynomial");

    // Partial derivatives as (exponent vector, coefficient) lists.
    struct Gen {
        std::vector<Term> terms;
        mpz_class degree; // quasidegree d - q_i
    };
    std::vector<Gen> gens;
    for (long i = 0; i < n; ++i) {
        Gen g;
        g.degree = w.d - w.q[static_cast<size_t>(i)];
        for (const auto& t : p.terms()) {
            long e = t.exps[static_cast<size_t>(i)];
            if (e == 0) continue;
            Term dt = t;
            dt.coeff *= e;
            --dt.exps[static_cast<size_t>(i)];
            g.terms.push_back(std::move(dt));
        }
        gens.push_back(std::move(g));
    }

    // Socle degree of an isolated quasihomogeneous germ plus a guard window
    // long enough that vanishing throughout it forces vanishing forever.
    mpz_class socle = 0;
    mpz_class guard = 0;
    for (const auto& qi : w.q) {
        socle += w.d - 2 * qi;
        if (qi > guard) guard = qi;
    }
    long socle_l = socle.get_si();
    long guard_l = guard.get_si();
    long top = std::max(socle_l, -1L) + guard_l;

    mpz_class total = 0;
    for (long s = 0; s <= top; ++s) {
        auto mons = monomials_of_degree(w.q, s, resource_limit);
        if (mons.empty()) continue;
        std::map<std::vector<long>, size_t> index;
        for (size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;

        // Rows: x^m * g_i with |m| = s - deg(g_i).
        QMatDense rows;
        for (const auto& g : gens) {
            mpz_class mdeg = s - g.degree;
            if (mdeg < 0) continue;
            auto shifts = monomials_of_degree(w.q, mdeg, resource_limit);
            for (const auto& m : shifts) {
                QVec row(mons.size(), mpq_class(0));
                for (const auto& t : g.terms) {
                    std::vector<long> e = t.exps;
                    for (long j = 0; j < n; ++j) e[static_cast<size_t>(j)] += m[static_cast<size_t>(j)];
                    row[index.at(e)] += t.coeff;
                }
                rows.push_back(std::move(row));
            }
        }
        long rank = rows.empty() ? 0 : q_rank(rows);
        long dim_s = static_cast<long>(mons.size()) - rank;
        if (s <= socle_l) {
            total += dim_s;
        } else if (dim_s != 0) {
            return std::nullopt; // infinite-dimensional: not isolated
        }
    }
    return total;
}

long chi_affine_fibre(const QuasiPolynomial& p, const std::vector<long>& keep,
                           unsigned long resource_limit) {
    if (keep.empty()) return 0; // the empty torus convention
    QuasiPolynomial r = p.restrict(keep);
    if (r.is_zero()) return 0; // the fibre over 1 is empty
    auto mu = milnor_algebra_oracle(r, resource_limit);
    if (!mu) {
        std::ostringstream os;
        os << "restriction to {";
        for (size_t i = 0; i < keep.size(); ++i) os << (i ? "," : "") << keep[i] + 1;
        os << "} is not an isolated singularity";
        throw UnsupportedRestriction(os.str());
    }
    mpq_class formula = milnor_number(r);
    if (formula.get_den() != 1 || formula.get_num() != *mu)
        throw InternalError("weight formula disagrees with the Milnor algebra dimension");
    long m = mu->get_si();
    return 1 + ((keep.size() % 2 == 1) ? m : -m);
}

namespace {

std::vector<std::vector<long>> nonempty_subsets(long n) {
    std::vector<std::vector<long>> out;
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        std::vector<long> s;
        for (long i = 0; i < n; ++i)
            if (mask & (1ul << i)) s.push_back(i);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::map<std::vector<long>, long> chi_torus_strata(const QuasiPolynomial& p,
                                                        unsigned long resource_limit) {
    long n = p.var_count();
    if (n > 20) throw ResourceLimit("too many variables for subset tables");
    std::map<std::vector<long>, long> affine;
    affine[{}] = 0;
    for (const auto& s : nonempty_subsets(n))
        affine[s] = chi_affine_fibre(p, s, resource_limit);
    // Moebius inversion over the subset lattice.
    std::map<std::vector<long>, long> chi;
    for (const auto& [jset, _] : affine) {
        if (jset.empty()) continue;
        long acc = 0;
        unsigned long bits = jset.size();
        for (unsigned long sub = 0; sub < (1ul << bits); ++sub) {
            std::vector<long> k;
            for (unsigned long b = 0; b < bits; ++b)
                if (sub & (1ul << b)) k.push_back(jset[b]);
            long sign = ((bits - k.size()) % 2 == 0) ? 1 : -1;
            acc += sign * affine.at(k);
        }
        chi[jset] = acc;
    }
    return chi;
}

long chi_polytope_oracle(const QuasiPolynomial& p, const std::vector<long>& keep) {
    if (keep.empty()) throw InvalidInput("polytope oracle needs a nonempty index set");
    QuasiPolynomial r = p.restrict(keep);
    if (r.is_zero()) return 0;
    long k = static_cast<long>(keep.size());
    // Newton polytope of f_J - 1: the support together with the origin.
    std::vector<LatticePoint> pts;
    pts.push_back(LatticePoint(static_cast<size_t>(k), mpz_class(0)));
    for (const auto& t : r.terms()) {
        LatticePoint q(static_cast<size_t>(k));
        for (long j = 0; j < k; ++j) q[static_cast<size_t>(j)] = t.exps[static_cast<size_t>(j)];
        pts.push_back(std::move(q));
    }
    return torus_hypersurface_chi(pts, k).get_si();
}

long chi_orbit_space(const QuasiPolynomial& p, const ExtendedGroup& ext,
                          const std::vector<long>& keep) {
    if (keep.empty()) throw InvalidInput("orbit space chi needs a nonempty index set");
    QuasiPolynomial r = p.restrict(keep);
    long k = static_cast<long>(keep.size());
    if (r.is_zero()) {
        // The whole torus lies in X; its quotient by the extended group is a
        // torus of dimension |J| - 1.
        return k == 1 ? 1 : 0;
    }
    if (r.terms().size() == 1) return 0; // monomials never vanish on the torus

    // Character lattice of torus(J) / extended group: integer vectors m with
    // <q_J, m> = 0 and <g_J, m> = 0 mod 1 for the generators g of G.
    const WeightSystem& w = p.weights();
    std::vector<mpz_class> qj;
    for (long j : keep) qj.push_back(w.q[static_cast<size_t>(j)]);

    // Saturated kernel of q_J inside Z^k via SNF of the single row.
    ZMat qrow(1, k);
    for (long j = 0; j < k; ++j) qrow.at(0, j) = qj[static_cast<size_t>(j)];
    SnfResult s = smith_normal_form(qrow);
    // Columns 1..k-1 of V scaled? u*V = (g, 0, ..., 0); kernel basis columns.
    std::vector<std::vector<mpz_class>> ker; // k-1 vectors in Z^k
    for (long c = 1; c < k; ++c) {
        std::vector<mpz_class> v(static_cast<size_t>(k));
        for (long i = 0; i < k; ++i) v[static_cast<size_t>(i)] = s.v.at(i, c);
        ker.push_back(std::move(v));
    }

    // Congruence conditions from the finite group generators.
    const FiniteDiagonalGroup& g = ext.group();
    const mpz_class& ng = g.exponent();
    std::vector<std::vector<mpz_class>> cong; // rows: N * g restricted to J
    for (const auto& gen : g.snf_generators()) {
        std::vector<mpz_class> row;
        for (long j : keep) {
            mpq_class v = gen.coord(j) * mpq_class(ng);
            v.canonicalize();
            row.push_back(v.get_num());
        }
        cong.push_back(std::move(row));
    }

    // Solve C y = 0 mod N on the kernel coordinates y (in Z^{k-1}).
    ZMat lattice_basis(0, 0);
    if (k - 1 > 0) {
        ZMat c(static_cast<long>(cong.size()), k - 1);
        for (size_t i = 0; i < cong.size(); ++i)
            for (long jc = 0; jc < k - 1; ++jc) {
                mpz_class acc = 0;
                for (long t = 0; t < k; ++t)
                    acc += cong[i][static_cast<size_t>(t)] * ker[static_cast<size_t>(jc)][static_cast<size_t>(t)];
                c.at(static_cast<long>(i), jc) = acc;
            }
        SnfResult cs = smith_normal_form(c);
        // y = V z with z_i a multiple of N / gcd(d_i, N).
        ZMat gens_y(k - 1, k - 1);
        for (long i = 0; i < k - 1; ++i) {
            mpz_class di = (i < cs.d.rows() && i < cs.d.cols()) ? cs.d.at(i, i) : mpz_class(0);
            mpz_class step = ng / gcd(di, ng);
            for (long rr = 0; rr < k - 1; ++rr) gens_y.at(i, rr) = cs.v.at(rr, i) * step;
        }
        lattice_basis = hnf_lower(gens_y);
        if (lattice_basis.rows() != k - 1)
            throw InternalError("quotient character lattice lost rank");
    }

    // Exponents of the invariant Laurent function f_J / x^{m0} in the basis
    // of the quotient lattice.
    const std::vector<long>& m0 = r.terms().front().exps;
    ZMat vinv = zmat_inverse_unimodular(s.v);
    std::vector<LatticePoint> newton;
    for (const auto& t : r.terms()) {
        // diff in Z^k, then its y-coordinates in ker, then basis coordinates.
        std::vector<mpz_class> diff(static_cast<size_t>(k));
        for (long j = 0; j < k; ++j)
            diff[static_cast<size_t>(j)] = t.exps[static_cast<size_t>(j)] - m0[static_cast<size_t>(j)];
        // diff = sum y_c * ker_c; the coordinate of diff under V^{-1} at
        // position 0 must vanish.
        LatticePoint y(static_cast<size_t>(k - 1));
        mpz_class y0 = 0;
        for (long j = 0; j < k; ++j) y0 += vinv.at(0, j) * diff[static_cast<size_t>(j)];
        if (y0 != 0) throw InternalError("support difference not orthogonal to the weights");
        for (long i = 1; i < k; ++i) {
            mpz_class acc = 0;
            for (long j = 0; j < k; ++j) acc += vinv.at(i, j) * diff[static_cast<size_t>(j)];
            y[static_cast<size_t>(i - 1)] = acc;
        }
        // Express y in the sublattice basis (lower-triangular solve).
        LatticePoint coords(static_cast<size_t>(k - 1));
        for (long j = k - 2; j >= 0; --j) {
            mpz_class rhs = y[static_cast<size_t>(j)];
            for (long t2 = j + 1; t2 < k - 1; ++t2)
                rhs -= coords[static_cast<size_t>(t2)] * lattice_basis.at(t2, j);
            if (rhs % lattice_basis.at(j, j) != 0)
                throw InternalError("invariant exponent outside the quotient lattice");
            coords[static_cast<size_t>(j)] = rhs / lattice_basis.at(j, j);
        }
        newton.push_back(std::move(coords));
    }
    return torus_hypersurface_chi(newton, k - 1).get_si();
}

StrataChi compute_strata(const QuasiPolynomial& p, const ExtendedGroup& ext,
                         const ChiOverrides& overrides, unsigned long resource_limit) {
    long n = p.var_count();
    if (n > 16) throw ResourceLimit("too many variables for strata tables");
    StrataChi table;
    table.n = n;

    // Route A needs the affine chi of every sub-restriction; compute what is
    // available and remember failures per subset.
    std::map<std::vector<long>, std::optional<long>> affine;
    affine[{}] = 0;
    for (const auto& s : nonempty_subsets(n)) {
        try {
            affine[s] = chi_affine_fibre(p, s, resource_limit);
        } catch (const UnsupportedRestriction&) {
            affine[s] = std::nullopt;
        }
    }

    for (const auto& jset : nonempty_subsets(n)) {
        StrataEntry entry(ext.group().coordinate_kernel(jset), ext.coordinate_kernel(jset));
        entry.index_set = jset;

        // Route A: Moebius inversion when every subset is supported.
        std::optional<long> route_a;
        {
            bool ok = true;
            long acc = 0;
            unsigned long bits = jset.size();
            for (unsigned long sub = 0; sub < (1ul << bits) && ok; ++sub) {
                std::vector<long> kset;
                for (unsigned long b = 0; b < bits; ++b)
                    if (sub & (1ul << b)) kset.push_back(jset[b]);
                const auto& val = affine.at(kset);
                if (!val) { ok = false; break; }
                long sign = ((bits - kset.size()) % 2 == 0) ? 1 : -1;
                acc += sign * *val;
            }
            if (ok) route_a = acc;
        }
        long route_b = chi_polytope_oracle(p, jset);

        auto ov = overrides.chi_v.find(jset);
        if (ov != overrides.chi_v.end()) {
            entry.chi_v = ov->second;
            entry.prov_v = ChiProvenance::Override;
        } else if (route_a) {
            entry.chi_v = *route_a;
            entry.prov_v = ChiProvenance::MilnorOrlik;
        } else {
            entry.chi_v = route_b;
            entry.prov_v = ChiProvenance::Polytope;
        }
        if (route_a) {
            entry.chi_v_alt = route_b;
            entry.routes_agree = (*route_a == route_b);
        }

        auto oy = overrides.chi_y.find(jset);
        if (oy != overrides.chi_y.end()) {
            entry.chi_y = oy->second;
            entry.prov_y = ChiProvenance::Override;
        } else {
            entry.chi_y = chi_orbit_space(p, ext, jset);
            entry.prov_y = ChiProvenance::Polytope;
        }
        table.entries.push_back(std::move(entry));
    }
    return table;
}

} // namespace equizeta
