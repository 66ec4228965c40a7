#include "equizeta/repr_ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "equizeta/errors.hpp"

namespace equizeta {

bool ExtCharacter::operator<(const ExtCharacter& o) const {
    if (k != o.k) return k < o.k;
    if (chi.size() != o.chi.size()) return chi.size() < o.chi.size();
    for (size_t i = 0; i < chi.size(); ++i) {
        int c = cmp(chi[i], o.chi[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string ExtCharacter::to_string() const {
    std::ostringstream os;
    os << "(k=" << k << "; ";
    for (size_t i = 0; i < chi.size(); ++i) os << (i ? "," : "") << chi[i].get_str();
    os << ")";
    return os.str();
}

ExtCharacter trivial_character(const ExtendedGroup& ext) {
    ExtCharacter c;
    c.k = 0;
    c.chi.assign(ext.group().snf_generators().size(), mpq_class(0));
    return c;
}

ExtCharacter monomial_character(const ExtendedGroup& ext, const std::vector<long>& exps) {
    const WeightSystem& w = ext.weights();
    if (static_cast<long>(exps.size()) != w.n())
        throw DimensionMismatch("monomial character exponents");
    ExtCharacter c;
    mpz_class deg = w.quasidegree(exps);
    c.k = -deg.get_si();
    const auto& gens = ext.group().snf_generators();
    c.chi.reserve(gens.size());
    for (const auto& g : gens) {
        mpq_class v = 0;
        for (long j = 0; j < w.n(); ++j) v -= g.coord(j) * exps[static_cast<size_t>(j)];
        c.chi.push_back(mod1(v));
    }
    if (!char_compatible(ext, c))
        throw InternalError("monomial character violates compatibility");
    return c;
}

ExtCharacter char_mul(const ExtCharacter& a, const ExtCharacter& b) {
    if (a.chi.size() != b.chi.size()) throw AmbientMismatch("character product");
    ExtCharacter c;
    c.k = a.k + b.k;
    c.chi.reserve(a.chi.size());
    for (size_t i = 0; i < a.chi.size(); ++i) c.chi.push_back(mod1(a.chi[i] + b.chi[i]));
    return c;
}

ExtCharacter char_inverse(const ExtCharacter& a) {
    ExtCharacter c;
    c.k = -a.k;
    c.chi.reserve(a.chi.size());
    for (const auto& v : a.chi) c.chi.push_back(mod1(-v));
    return c;
}

bool char_compatible(const ExtendedGroup& ext, const ExtCharacter& c) {
    // Value at the monodromy element must be k/d mod 1.
    const auto& hc = ext.monodromy_coords();
    if (c.chi.size() != hc.size()) return false;
    mpq_class at_h = 0;
    for (size_t i = 0; i < hc.size(); ++i) at_h += mpq_class(hc[i]) * c.chi[i];
    mpq_class expected(c.k, ext.weights().d);
    expected.canonicalize();
    return mod1(at_h) == mod1(expected);
}

FiniteDiagonalGroup char_kernel(const ExtendedGroup& ext, const ExtCharacter& c) {
    if (c.k == 0) throw NonNegativeCharacter("kernel of a degree-zero character is infinite");
    const WeightSystem& w = ext.weights();
    const FiniteDiagonalGroup& g = ext.group();
    // Elements t q + x with t k + chi(x) = 0 mod 1: generated by q/|k| and,
    // per generator x of G, x - (chi(x)/k) q.
    std::vector<TorsionVector> gens;
    gens.push_back(cstar_point(w, mpq_class(1, std::abs(c.k))));
    const auto& ggens = g.snf_generators();
    for (size_t i = 0; i < ggens.size(); ++i) {
        mpq_class t = -c.chi[i] / c.k;
        t.canonicalize();
        gens.push_back(ggens[i] + cstar_point(w, t));
    }
    FiniteDiagonalGroup kernel = FiniteDiagonalGroup::canonicalize(g.dim(), gens);
    // |ker| d = |k| |G| because C* meets G exactly in the order-d cyclic
    // subgroup generated by the monodromy element.
    mpz_class expected = mpz_class(std::abs(c.k)) * g.order();
    if (kernel.order() * w.d != expected)
        throw InternalError("character kernel has unexpected order");
    return kernel;
}

FiniteRepElement::FiniteRepElement(ExtendedGroup ambient) : ambient_(std::move(ambient)) {}

void FiniteRepElement::add_term(const ExtCharacter& ch, long coeff) {
    if (coeff == 0) return;
    if (!char_compatible(ambient_, ch))
        throw InternalError("incompatible character in representation element");
    auto [it, inserted] = c_.try_emplace(ch, 0);
    it->second += coeff;
    if (it->second == 0) c_.erase(it);
}

FiniteRepElement FiniteRepElement::operator+(const FiniteRepElement& o) const {
    if (ambient_ != o.ambient_) throw AmbientMismatch("representation element addition");
    FiniteRepElement r = *this;
    for (const auto& [k, v] : o.c_) r.add_term(k, v);
    return r;
}

FiniteRepElement FiniteRepElement::operator-(const FiniteRepElement& o) const {
    if (ambient_ != o.ambient_) throw AmbientMismatch("representation element subtraction");
    FiniteRepElement r = *this;
    for (const auto& [k, v] : o.c_) r.add_term(k, -v);
    return r;
}

std::string FiniteRepElement::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c_) {
        if (!first) os << " + ";
        first = false;
        os << v << "*[" << k.to_string() << "]";
    }
    return os.str();
}

NegSeries::NegSeries(ExtendedGroup ambient, long depth)
    : ambient_(std::move(ambient)), depth_(depth) {
    if (depth < 0) throw InvalidInput("negative truncation depth");
}

long NegSeries::coeff(const ExtCharacter& ch) const {
    auto it = c_.find(ch);
    return it == c_.end() ? 0 : it->second;
}

void NegSeries::add_term(const ExtCharacter& ch, long coeff) {
    if (coeff == 0) return;
    if (ch.k > 0) throw NonNegativeCharacter("positive degree in a non-positive series");
    if (-ch.k > depth_) return; // beyond truncation
    if (!char_compatible(ambient_, ch))
        throw InternalError("incompatible character in series");
    auto [it, inserted] = c_.try_emplace(ch, 0);
    it->second += coeff;
    if (it->second == 0) c_.erase(it);
}

NegSeries NegSeries::operator+(const NegSeries& o) const {
    if (ambient_ != o.ambient_ || depth_ != o.depth_)
        throw AmbientMismatch("series addition");
    NegSeries r = *this;
    for (const auto& [k, v] : o.c_) r.add_term(k, v);
    return r;
}

NegSeries NegSeries::operator-(const NegSeries& o) const {
    if (ambient_ != o.ambient_ || depth_ != o.depth_)
        throw AmbientMismatch("series subtraction");
    NegSeries r = *this;
    for (const auto& [k, v] : o.c_) r.add_term(k, -v);
    return r;
}

NegSeries NegSeries::operator*(const NegSeries& o) const {
    if (ambient_ != o.ambient_ || depth_ != o.depth_)
        throw AmbientMismatch("series multiplication");
    NegSeries r(ambient_, depth_);
    for (const auto& [ka, va] : c_)
        for (const auto& [kb, vb] : o.c_) {
            if (-(ka.k + kb.k) > depth_) continue;
            r.add_term(char_mul(ka, kb), va * vb);
        }
    return r;
}

NegSeries NegSeries::one(const ExtendedGroup& ambient, long depth) {
    NegSeries s(ambient, depth);
    s.add_term(trivial_character(ambient), 1);
    return s;
}

NegSeries NegSeries::times_one_minus_power(const ExtCharacter& ch, long e) const {
    if (ch.k >= 0) throw NonNegativeCharacter("series factor must have negative degree");
    if (e == 0) return *this;
    // Expansion of (1 - [ch])^e truncated at the depth.
    NegSeries factor(ambient_, depth_);
    long step = -ch.k;
    long max_j = depth_ / step;
    ExtCharacter power = trivial_character(ambient_);
    for (long j = 0; j <= max_j; ++j) {
        long binom;
        if (e > 0) {
            if (j > e) break;
            // C(e, j) with alternating sign
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(e),
                         static_cast<unsigned long>(j));
            binom = (j % 2 == 0 ? 1 : -1) * b.get_si();
        } else {
            // C(-e + j - 1, j)
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(-e + j - 1),
                         static_cast<unsigned long>(j));
            binom = b.get_si();
        }
        factor.add_term(power, binom);
        power = char_mul(power, ch);
    }
    return *this * factor;
}

std::vector<long> NegSeries::classical_coefficients() const {
    std::vector<long> out(static_cast<size_t>(depth_) + 1, 0);
    for (const auto& [ch, v] : c_) out[static_cast<size_t>(-ch.k)] += v;
    return out;
}

std::string NegSeries::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c_) {
        if (!first) os << " + ";
        first = false;
        os << v << "*[" << k.to_string() << "]";
    }
    return os.str();
}

NegSeries to_series(const FiniteRepElement& a, long depth) {
    NegSeries s(a.ambient(), depth);
    for (const auto& [k, v] : a.coeffs()) {
        if (k.k > 0) throw NonNegativeCharacter("positive character in series conversion");
        s.add_term(k, v);
    }
    return s;
}

NegSeries exp_map(const NegSeries& a) {
    NegSeries r = NegSeries::one(a.ambient(), a.depth());
    for (const auto& [ch, s] : a.coeffs()) {
        if (ch.k >= 0)
            throw NonNegativeCharacter("exp_map input must have strictly negative support");
        r = r.times_one_minus_power(ch, -s);
    }
    return r;
}

NegSeries exp_map(const FiniteRepElement& a, long depth) {
    return exp_map(to_series(a, depth));
}

NegSeries log_map(const NegSeries& a) {
    // Constant term must be exactly 1.
    ExtCharacter triv = trivial_character(a.ambient());
    for (const auto& [ch, v] : a.coeffs())
        if (ch.k == 0 && !(ch == triv && v == 1))
            throw MalformedConstantTerm("log_map input must have constant term 1");
    if (a.coeff(triv) != 1)
        throw MalformedConstantTerm("log_map input must have constant term 1");

    NegSeries log_acc(a.ambient(), a.depth());
    NegSeries exp_acc = NegSeries::one(a.ambient(), a.depth());
    for (long deg = 1; deg <= a.depth(); ++deg) {
        // At degree -deg the coefficients of Exp(log_acc) and of the target
        // differ exactly by the sought s_ch.
        std::map<ExtCharacter, long> wanted;
        for (const auto& [ch, v] : a.coeffs())
            if (-ch.k == deg) wanted[ch] += v;
        for (const auto& [ch, v] : exp_acc.coeffs())
            if (-ch.k == deg) wanted[ch] -= v;
        for (const auto& [ch, s] : wanted) {
            if (s == 0) continue;
            log_acc.add_term(ch, s);
            exp_acc = exp_acc.times_one_minus_power(ch, -s);
        }
    }
    return log_acc;
}

namespace {

void enumerate_monomials_up_to(const std::vector<mpz_class>& q, long var, mpz_class budget,
                               std::vector<long>& cur,
                               const std::function<void(const std::vector<long>&)>& emit,
                               unsigned long limit, unsigned long& count) {
    if (var == static_cast<long>(q.size())) {
        if (++count > limit)
            throw ResourceLimit("monomial enumeration exceeds the configured bound");
        emit(cur);
        return;
    }
    for (mpz_class e = 0; e * q[static_cast<size_t>(var)] <= budget; ++e) {
        cur.push_back(e.get_si());
        enumerate_monomials_up_to(q, var + 1, budget - e * q[static_cast<size_t>(var)], cur,
                                  emit, limit, count);
        cur.pop_back();
    }
}

} // namespace

NegSeries poincare_counted(PoincareKind kind, const QuasiPolynomial& p,
                           const ExtendedGroup& ext, long depth,
                           unsigned long resource_limit) {
    const WeightSystem& w = ext.weights();
    std::map<ExtCharacter, long> ambient_count;
    std::vector<long> cur;
    unsigned long count = 0;
    enumerate_monomials_up_to(
        w.q, 0, depth, cur,
        [&](const std::vector<long>& m) { ambient_count[monomial_character(ext, m)] += 1; },
        resource_limit, count);

    NegSeries s(ext, depth);
    if (kind == PoincareKind::AmbientSpace) {
        for (const auto& [ch, v] : ambient_count) s.add_term(ch, v);
        return s;
    }
    // Hypersurface: dim A_X^a = dim A^a - dim A^{a / a_f}, and a_f has
    // trivial finite-part values, so the shift only moves the degree by d.
    ExtCharacter af = monomial_character(ext, p.terms().front().exps);
    for (const auto& v : af.chi)
        if (v != 0) throw InternalError("character of f is nontrivial on the finite part");
    long d = w.d.get_si();
    for (const auto& [ch, v] : ambient_count) {
        ExtCharacter shifted = ch;
        shifted.k += d;
        long sub = 0;
        if (shifted.k <= 0) {
            auto it = ambient_count.find(shifted);
            if (it != ambient_count.end()) sub = it->second;
        }
        s.add_term(ch, v - sub);
    }
    return s;
}

std::string ClosedPoincare::to_string() const {
    std::ostringstream os;
    if (numerator_factors.empty()) os << "1";
    for (const auto& c : numerator_factors) os << "(1-[" << c.to_string() << "])";
    os << " / ";
    for (const auto& c : denominator_factors) os << "(1-[" << c.to_string() << "])";
    return os.str();
}

ClosedPoincare poincare_closed(PoincareKind kind, const QuasiPolynomial& p,
                               const ExtendedGroup& ext) {
    ClosedPoincare c{ext, {}, {}};
    if (kind == PoincareKind::Hypersurface) {
        if (p.is_zero()) throw InvalidInput("closed Poincare form of the zero polynomial");
        c.numerator_factors.push_back(monomial_character(ext, p.terms().front().exps));
    }
    long n = ext.weights().n();
    for (long i = 0; i < n; ++i) {
        std::vector<long> e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(i)] = 1;
        c.denominator_factors.push_back(monomial_character(ext, e));
    }
    return c;
}

NegSeries expand(const ClosedPoincare& c, long depth) {
    NegSeries s = NegSeries::one(c.ambient, depth);
    for (const auto& ch : c.numerator_factors) s = s.times_one_minus_power(ch, 1);
    for (const auto& ch : c.denominator_factors) s = s.times_one_minus_power(ch, -1);
    return s;
}

FiniteRepElement log_poincare(const QuasiPolynomial& p, const ExtendedGroup& ext) {
    FiniteRepElement r(ext);
    long n = ext.weights().n();
    for (long i = 0; i < n; ++i) {
        std::vector<long> e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(i)] = 1;
        r.add_term(monomial_character(ext, e), 1);
    }
    if (p.is_zero()) throw InvalidInput("log of the Poincare series of the zero polynomial");
    r.add_term(monomial_character(ext, p.terms().front().exps), -1);
    return r;
}

ExtBurnsideElement tau(const FiniteRepElement& a) {
    ExtBurnsideElement r(a.ambient());
    for (const auto& [ch, v] : a.coeffs()) {
        if (ch.k >= 0)
            throw NonNegativeCharacter("tau is defined on strictly negative characters");
        r.add_term(char_kernel(a.ambient(), ch), v);
    }
    return r;
}

} // namespace equizeta
