#include "equizeta/qhpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "equizeta/errors.hpp"

namespace equizeta {

mpz_class WeightSystem::quasidegree(const std::vector<long>& exps) const {
    if (exps.size() != q.size()) throw DimensionMismatch("quasidegree");
    mpz_class s = 0;
    for (size_t i = 0; i < q.size(); ++i) s += q[i] * exps[i];
    return s;
}

std::string WeightSystem::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < q.size(); ++i) os << (i ? "," : "") << q[i].get_str();
    os << "; " << d.get_str() << ")";
    return os.str();
}

QuasiPolynomial::QuasiPolynomial(long n, std::vector<Term> terms) : n_(n) {
    std::map<std::vector<long>, mpq_class> merged;
    for (auto& t : terms) {
        if (static_cast<long>(t.exps.size()) != n)
            throw DimensionMismatch("term exponent vector length");
        for (long e : t.exps)
            if (e < 0) throw InvalidInput("negative exponent");
        merged[t.exps] += t.coeff;
    }
    for (auto& [e, c] : merged) {
        if (c == 0) continue;
        terms_.push_back(Term{e, c});
    }
}

const WeightSystem& QuasiPolynomial::weights() const {
    if (!w_) throw InternalError("weights not attached");
    return *w_;
}

QuasiPolynomial QuasiPolynomial::with_weights(WeightSystem w) const {
    if (w.n() != n_) throw DimensionMismatch("weight system length");
    if (w.d < 1) throw NonPositiveWeight("degree must be positive");
    for (const auto& qi : w.q)
        if (qi < 1) throw NonPositiveWeight("weights must be positive");
    QuasiPolynomial p = *this;
    for (const auto& t : terms_)
        if (w.quasidegree(t.exps) != w.d)
            throw NotQuasihomogeneous("term of wrong quasidegree under given weights");
    p.w_ = std::move(w);
    return p;
}

QuasiPolynomial QuasiPolynomial::with_inferred_weights() const {
    if (terms_.empty()) throw InvalidInput("cannot infer weights of the zero polynomial");
    for (long j = 0; j < n_; ++j) {
        bool used = false;
        for (const auto& t : terms_)
            if (t.exps[static_cast<size_t>(j)] > 0) { used = true; break; }
        if (!used)
            throw WeightsNotUnique("variable " + std::to_string(j + 1) +
                                   " is absent from every monomial");
    }
    // Solve <q, k> = d for all support points: the right kernel of the
    // m x (n+1) matrix [k | -1] must be one-dimensional.
    QMatDense m(terms_.size(), QVec(static_cast<size_t>(n_ + 1)));
    for (size_t i = 0; i < terms_.size(); ++i) {
        for (long j = 0; j < n_; ++j) m[i][static_cast<size_t>(j)] = terms_[i].exps[static_cast<size_t>(j)];
        m[i][static_cast<size_t>(n_)] = -1;
    }
    auto kernel = q_right_kernel(m);
    if (kernel.empty())
        throw NotQuasihomogeneous("support admits no common weight system");
    if (kernel.size() > 1)
        throw WeightsNotUnique("support does not affinely generate a hyperplane");
    auto z = primitive_integer_vector(kernel[0], /*make_last_positive=*/true);
    WeightSystem w;
    w.d = z[static_cast<size_t>(n_)];
    w.q.assign(z.begin(), z.end() - 1);
    if (w.d <= 0) throw NotQuasihomogeneous("degree is not positive");
    for (const auto& qi : w.q)
        if (qi <= 0) throw NonPositiveWeight("weight <= 0 in the unique solution");
    return with_weights(std::move(w));
}

ZMat QuasiPolynomial::exponent_matrix() const {
    ZMat e(static_cast<long>(terms_.size()), n_);
    for (size_t i = 0; i < terms_.size(); ++i)
        for (long j = 0; j < n_; ++j)
            e.at(static_cast<long>(i), j) = terms_[i].exps[static_cast<size_t>(j)];
    return e;
}

FiniteDiagonalGroup QuasiPolynomial::symmetry_group() const {
    if (!has_weights()) throw InternalError("symmetry_group requires weights");
    return FiniteDiagonalGroup::kernel_mod_1(exponent_matrix());
}

TorsionVector QuasiPolynomial::monodromy_element() const {
    const WeightSystem& w = weights();
    std::vector<mpq_class> c(static_cast<size_t>(n_));
    for (long i = 0; i < n_; ++i) c[static_cast<size_t>(i)] = mpq_class(w.q[static_cast<size_t>(i)], w.d);
    return TorsionVector(std::move(c));
}

QuasiPolynomial QuasiPolynomial::restrict(const std::vector<long>& keep) const {
    std::vector<bool> keep_mask(static_cast<size_t>(n_), false);
    for (long i : keep) {
        if (i < 0 || i >= n_) throw DimensionMismatch("restriction index out of range");
        keep_mask[static_cast<size_t>(i)] = true;
    }
    std::vector<Term> out;
    for (const auto& t : terms_) {
        bool survives = true;
        for (long j = 0; j < n_; ++j)
            if (!keep_mask[static_cast<size_t>(j)] && t.exps[static_cast<size_t>(j)] > 0) {
                survives = false;
                break;
            }
        if (!survives) continue;
        std::vector<long> e;
        e.reserve(keep.size());
        for (long j : keep) e.push_back(t.exps[static_cast<size_t>(j)]);
        out.push_back(Term{std::move(e), t.coeff});
    }
    QuasiPolynomial r(static_cast<long>(keep.size()), std::move(out));
    if (w_) {
        WeightSystem w;
        for (long j : keep) w.q.push_back(w_->q[static_cast<size_t>(j)]);
        w.d = w_->d;
        r.w_ = std::move(w);
    }
    return r;
}

std::string QuasiPolynomial::to_string(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    auto name = [&](long j) {
        if (static_cast<size_t>(j) < var_names.size()) return var_names[static_cast<size_t>(j)];
        return "x" + std::to_string(j + 1);
    };
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        if (t.coeff != 1) os << t.coeff.get_str() << "*";
        bool any = false;
        for (long j = 0; j < n_; ++j) {
            long e = t.exps[static_cast<size_t>(j)];
            if (e == 0) continue;
            if (any) os << "*";
            any = true;
            os << name(j);
            if (e > 1) os << "^" << e;
        }
        if (!any) os << "1";
    }
    return os.str();
}

TorsionVector cstar_point(const WeightSystem& w, const mpq_class& t) {
    std::vector<mpq_class> c(w.q.size());
    for (size_t i = 0; i < w.q.size(); ++i) c[i] = t * mpq_class(w.q[i]);
    return TorsionVector(std::move(c));
}

ExtendedGroup::ExtendedGroup(WeightSystem w, FiniteDiagonalGroup finite_part)
    : w_(std::move(w)), g_(std::move(finite_part)), h_(TorsionVector::zero(g_.dim())) {
    if (w_.n() != g_.dim()) throw DimensionMismatch("extended group dimensions");
    std::vector<mpq_class> hc(w_.q.size());
    for (size_t i = 0; i < w_.q.size(); ++i) hc[i] = mpq_class(w_.q[i], w_.d);
    h_ = TorsionVector(std::move(hc));
    if (!g_.member(h_))
        throw MonodromyNotInGroup("finite part must contain the monodromy element");
    // The additive C*-line meets the finite part exactly in <h>: any torsion
    // point t q in G has den(t) dividing exponent(G) because gcd(q) = 1, so
    // scanning t = j / (d * exponent(G)) is exhaustive with margin.
    mpz_class m = w_.d * g_.exponent();
    if (m <= 10000) {
        std::vector<TorsionVector> met;
        unsigned long mu = m.get_ui();
        for (unsigned long j = 0; j < mu; ++j) {
            TorsionVector p = cstar_point(w_, mpq_class(mpz_class(j), m));
            if (g_.member(p)) met.push_back(p);
        }
        FiniteDiagonalGroup line = FiniteDiagonalGroup::canonicalize(g_.dim(), met);
        FiniteDiagonalGroup hgrp = FiniteDiagonalGroup::canonicalize(g_.dim(), {h_});
        if (line != hgrp)
            throw InternalError("C* meets the finite part in more than <h>");
    }
    h_coords_ = g_.element_coords(h_);
}

bool ExtendedGroup::ext_member(const TorsionVector& a) const {
    if (a.dim() != g_.dim()) throw DimensionMismatch("ext_member");
    // a = t q + g forces den(t) | lcm(den(a), exponent(G)) since gcd(q) = 1.
    mpz_class m = lcm_positive(a.order(), g_.exponent());
    TorsionVector step = cstar_point(w_, mpq_class(mpz_class(1), m));
    FiniteDiagonalGroup big = g_.join(FiniteDiagonalGroup::canonicalize(g_.dim(), {step}));
    return big.member(a);
}

FiniteDiagonalGroup ExtendedGroup::coordinate_kernel(const std::vector<long>& keep) const {
    if (keep.empty()) throw InvalidInput("extended coordinate kernel needs a nonempty index set");
    // Any element of the stabilizer is t q + g with t q_{i0} + g_{i0} = 0 for
    // a fixed i0 in keep, so den(t) divides q_{i0} * exponent(G); the whole
    // stabilizer therefore lives in the finite group <q/M> + G.
    mpz_class m = w_.q[static_cast<size_t>(keep.front())] * g_.exponent();
    TorsionVector step = cstar_point(w_, mpq_class(mpz_class(1), m));
    FiniteDiagonalGroup big = g_.join(FiniteDiagonalGroup::canonicalize(g_.dim(), {step}));
    return big.coordinate_kernel(keep);
}

} // namespace equizeta
