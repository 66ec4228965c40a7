#include "equizeta/burnside.hpp"

#include <algorithm>
#include <sstream>

#include "equizeta/errors.hpp"

namespace equizeta {

BurnsideElement::BurnsideElement(FiniteDiagonalGroup ambient) : ambient_(std::move(ambient)) {}

BurnsideElement BurnsideElement::basis(const FiniteDiagonalGroup& ambient,
                                       const FiniteDiagonalGroup& subgroup, long coeff) {
    BurnsideElement e(ambient);
    e.add_term(subgroup, coeff);
    return e;
}

BurnsideElement BurnsideElement::one(const FiniteDiagonalGroup& ambient) {
    return basis(ambient, ambient, 1);
}

long BurnsideElement::coeff(const FiniteDiagonalGroup& subgroup) const {
    auto it = c_.find(subgroup);
    return it == c_.end() ? 0 : it->second;
}

void BurnsideElement::add_term(const FiniteDiagonalGroup& subgroup, long coeff) {
    if (coeff == 0) return;
    if (!ambient_.contains(subgroup))
        throw NotASubgroup("Burnside key is not a subgroup of the ambient group");
    auto [it, inserted] = c_.try_emplace(subgroup, 0);
    it->second += coeff;
    if (it->second == 0) c_.erase(it);
}

BurnsideElement BurnsideElement::operator+(const BurnsideElement& o) const {
    if (ambient_ != o.ambient_) throw AmbientMismatch("Burnside addition");
    BurnsideElement r = *this;
    for (const auto& [k, v] : o.c_) r.add_term(k, v);
    return r;
}

BurnsideElement BurnsideElement::operator-(const BurnsideElement& o) const {
    return *this + (-o);
}

BurnsideElement BurnsideElement::operator-() const { return scaled(-1); }

BurnsideElement BurnsideElement::scaled(long s) const {
    BurnsideElement r(ambient_);
    if (s == 0) return r;
    for (const auto& [k, v] : c_) r.c_[k] = v * s;
    return r;
}

BurnsideElement BurnsideElement::operator*(const BurnsideElement& o) const {
    if (ambient_ != o.ambient_) throw AmbientMismatch("Burnside multiplication");
    BurnsideElement r(ambient_);
    const mpz_class& g = ambient_.order();
    for (const auto& [h, a] : c_)
        for (const auto& [k, b] : o.c_) {
            FiniteDiagonalGroup meet = h.intersect(k);
            // [G/H][G/K] = |G||H^K| / (|H||K|) [G/(H^K)], an orbit count.
            mpz_class num = g * meet.order();
            mpz_class den = h.order() * k.order();
            if (num % den != 0) throw InternalError("non-integral orbit count");
            mpz_class scalar = num / den;
            r.add_term(meet, a * b * scalar.get_si());
        }
    return r;
}

std::string BurnsideElement::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c_) {
        if (!first) os << " + ";
        first = false;
        os << v << "*[G/" << k.to_string() << "]";
    }
    return os.str();
}

BurnsideElement res(const BurnsideElement& a, const FiniteDiagonalGroup& subgroup) {
    if (!a.ambient().contains(subgroup))
        throw NotASubgroup("restriction target is not a subgroup");
    BurnsideElement r(subgroup);
    const mpz_class& g = a.ambient().order();
    for (const auto& [k, v] : a.coeffs()) {
        FiniteDiagonalGroup meet = subgroup.intersect(k);
        mpz_class num = g * meet.order();
        mpz_class den = subgroup.order() * k.order();
        if (num % den != 0) throw InternalError("non-integral orbit count in res");
        mpz_class copies = num / den;
        r.add_term(meet, v * copies.get_si());
    }
    return r;
}

BurnsideElement ind(const BurnsideElement& a, const FiniteDiagonalGroup& group) {
    if (!group.contains(a.ambient()))
        throw NotASubgroup("induction source is not a subgroup of the target");
    BurnsideElement r(group);
    for (const auto& [k, v] : a.coeffs()) r.add_term(k, v);
    return r;
}

std::vector<std::pair<std::vector<mpq_class>, long>> to_repr_ring(const BurnsideElement& a) {
    const FiniteDiagonalGroup& g = a.ambient();
    const auto& orders = g.invariant_factors();
    // Enumerate all characters of G as value tuples on the generators.
    std::vector<std::vector<mpq_class>> chars{{}};
    for (size_t i = 0; i < orders.size(); ++i) {
        std::vector<std::vector<mpq_class>> next;
        unsigned long d = orders[i].get_ui();
        for (const auto& base : chars)
            for (unsigned long c = 0; c < d; ++c) {
                auto t = base;
                t.push_back(mpq_class(mpz_class(c), orders[i]));
                t.back().canonicalize();
                next.push_back(std::move(t));
            }
        chars = std::move(next);
    }
    std::map<std::vector<mpq_class>, long> acc;
    for (const auto& [h, v] : a.coeffs()) {
        // Characters trivial on H: test on the generators of H.
        auto hgens = h.snf_generators();
        std::vector<std::vector<mpz_class>> hcoords;
        for (const auto& x : hgens) hcoords.push_back(g.element_coords(x));
        for (const auto& chi : chars) {
            bool trivial = true;
            for (const auto& coords : hcoords) {
                mpq_class val = 0;
                for (size_t i = 0; i < chi.size(); ++i) val += mpq_class(coords[i]) * chi[i];
                if (mod1(val) != 0) { trivial = false; break; }
            }
            if (trivial) acc[chi] += v;
        }
    }
    std::vector<std::pair<std::vector<mpq_class>, long>> out;
    for (auto& [k, v] : acc)
        if (v != 0) out.emplace_back(k, v);
    return out;
}

ExtBurnsideElement::ExtBurnsideElement(ExtendedGroup ambient) : ambient_(std::move(ambient)) {}

ExtBurnsideElement ExtBurnsideElement::basis(const ExtendedGroup& ambient,
                                             const FiniteDiagonalGroup& subgroup,
                                             long coeff) {
    ExtBurnsideElement e(ambient);
    e.add_term(subgroup, coeff);
    return e;
}

void ExtBurnsideElement::add_term(const FiniteDiagonalGroup& subgroup, long coeff) {
    if (coeff == 0) return;
    // Certify the key: every generator must lie in the extended group.
    for (const auto& gen : subgroup.snf_generators())
        if (!ambient_.ext_member(gen))
            throw NotASubgroup("key subgroup does not lie in the extended group");
    auto [it, inserted] = c_.try_emplace(subgroup, 0);
    it->second += coeff;
    if (it->second == 0) c_.erase(it);
}

ExtBurnsideElement ExtBurnsideElement::operator+(const ExtBurnsideElement& o) const {
    if (ambient_ != o.ambient_) throw AmbientMismatch("extended Burnside addition");
    ExtBurnsideElement r = *this;
    for (const auto& [k, v] : o.c_) r.add_term(k, v);
    return r;
}

ExtBurnsideElement ExtBurnsideElement::operator-(const ExtBurnsideElement& o) const {
    return *this + (-o);
}

ExtBurnsideElement ExtBurnsideElement::operator-() const { return scaled(-1); }

ExtBurnsideElement ExtBurnsideElement::scaled(long s) const {
    ExtBurnsideElement r(ambient_);
    if (s == 0) return r;
    for (const auto& [k, v] : c_) r.c_[k] = v * s;
    return r;
}

std::string ExtBurnsideElement::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c_) {
        if (!first) os << " + ";
        first = false;
        os << v << "*[Gbar/" << k.to_string() << "]";
    }
    return os.str();
}

ExtBurnsideElement ind_ext(const BurnsideElement& a, const ExtendedGroup& ext) {
    if (a.ambient() != ext.group())
        throw AmbientMismatch("ind_ext requires the finite part as source ambient");
    ExtBurnsideElement r(ext);
    for (const auto& [k, v] : a.coeffs()) r.add_term(k, v);
    return r;
}

BurnsideElement red(const ExtBurnsideElement& a) {
    BurnsideElement r(a.ambient().group());
    for (const auto& [k, v] : a.coeffs()) r.add_term(k.intersect(a.ambient().group()), v);
    return r;
}

BurnsideElement zeta_equivariant(const StrataChi& strata, const ExtendedGroup& ext) {
    const FiniteDiagonalGroup& g = ext.group();
    if (!g.member(ext.monodromy()))
        throw MonodromyNotInGroup("zeta needs the monodromy element in the group");
    BurnsideElement z(g);
    for (const auto& e : strata.entries) {
        if (e.chi_v == 0) continue;
        const FiniteDiagonalGroup& iso = e.iso_in_g;
        mpz_class num = e.chi_v * iso.order();
        if (num % g.order() != 0)
            throw NonIntegralCoefficient("stratum chi " + std::to_string(e.chi_v) +
                                         " times stabilizer order is not divisible by |G|");
        mpz_class coeff = num / g.order();
        z.add_term(iso, coeff.get_si());
    }
    return z;
}

BurnsideElement zeta_reduced(const StrataChi& strata, const ExtendedGroup& ext) {
    return zeta_equivariant(strata, ext) - BurnsideElement::one(ext.group());
}

ExtBurnsideElement orbit_invariant(const StrataChi& strata, const ExtendedGroup& ext) {
    ExtBurnsideElement orbit(ext);
    for (const auto& e : strata.entries) {
        if (e.chi_y == 0) continue;
        orbit.add_term(e.iso_in_ext, e.chi_y);
    }
    return orbit;
}

void CyclotomicFunction::add_factor(const mpz_class& m, long e) {
    if (m <= 0) throw InvalidInput("cyclotomic index must be positive");
    if (e == 0) return;
    auto [it, inserted] = s_.try_emplace(m, 0);
    it->second += e;
    if (it->second == 0) s_.erase(it);
}

bool CyclotomicFunction::indices_divide_modulus() const {
    for (const auto& [m, e] : s_)
        if (d_ % m != 0) return false;
    return true;
}

CyclotomicFunction CyclotomicFunction::operator*(const CyclotomicFunction& o) const {
    CyclotomicFunction r(d_);
    r.s_ = s_;
    for (const auto& [m, e] : o.s_) r.add_factor(m, e);
    return r;
}

std::vector<mpz_class> CyclotomicFunction::expand(long depth) const {
    std::vector<mpz_class> series(static_cast<size_t>(depth) + 1, mpz_class(0));
    series[0] = 1;
    auto mul_one_minus = [&](unsigned long m) {
        // multiply by (1 - t^m)
        for (long i = depth; i >= static_cast<long>(m); --i)
            series[static_cast<size_t>(i)] -= series[static_cast<size_t>(i - m)];
    };
    auto div_one_minus = [&](unsigned long m) {
        // multiply by 1 / (1 - t^m) = sum_j t^{jm}
        for (long i = static_cast<long>(m); i <= depth; ++i)
            series[static_cast<size_t>(i)] += series[static_cast<size_t>(i - m)];
    };
    for (const auto& [mz, e] : s_) {
        unsigned long m = mz.get_ui();
        if (m == 0) throw InternalError("zero cyclotomic index");
        for (long r = 0; r < std::abs(e); ++r) {
            if (e > 0) mul_one_minus(m);
            else div_one_minus(m);
        }
    }
    return series;
}

std::string CyclotomicFunction::to_string() const {
    if (s_.empty()) return "1";
    std::ostringstream os;
    for (const auto& [m, e] : s_) {
        os << "(1-t";
        if (m != 1) os << "^" << m.get_str();
        os << ")";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

CyclotomicFunction to_cyclotomic(const BurnsideElement& a) {
    const FiniteDiagonalGroup& g = a.ambient();
    if (!g.is_cyclic()) throw NonCyclicAmbient("the cyclotomic correspondence needs a cyclic group");
    CyclotomicFunction f(g.order());
    for (const auto& [h, v] : a.coeffs()) {
        mpz_class m = g.order() / h.order(); // index of the subgroup
        f.add_factor(m, v);
    }
    return f;
}

BurnsideElement from_cyclotomic(const CyclotomicFunction& f, const FiniteDiagonalGroup& ambient) {
    if (!ambient.is_cyclic()) throw NonCyclicAmbient("the cyclotomic correspondence needs a cyclic group");
    if (ambient.order() != f.modulus())
        throw AmbientMismatch("cyclotomic modulus differs from the group order");
    if (!f.indices_divide_modulus())
        throw InvalidInput("cyclotomic index does not divide the modulus");
    BurnsideElement a(ambient);
    if (ambient.order() == 1) {
        for (const auto& [m, e] : f.exponents()) a.add_term(ambient, e);
        return a;
    }
    const TorsionVector& gen = ambient.snf_generators().front();
    for (const auto& [m, e] : f.exponents()) {
        // The unique subgroup of index m is generated by m * gen.
        FiniteDiagonalGroup h = FiniteDiagonalGroup::canonicalize(
            ambient.dim(), {gen.scaled(mpq_class(m))});
        a.add_term(h, e);
    }
    return a;
}

CyclotomicFunction saito_dual(const CyclotomicFunction& f) {
    if (!f.indices_divide_modulus())
        throw InvalidInput("Saito dual needs divisor indices");
    CyclotomicFunction r(f.modulus());
    for (const auto& [m, e] : f.exponents()) r.add_factor(f.modulus() / m, -e);
    return r;
}

} // namespace equizeta
