#include "semikit/numberfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "semikit/errors.hpp"

namespace semikit {

namespace {

struct Interval {
    Rat lo, hi;
};

Interval mul(const Interval& a, const Interval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

/* Polynomials over Q, little-endian, for the extended Euclid used by
 * inversion. Local helper only. */
using RatPoly = std::vector<Rat>;

void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

RatPoly rp_sub(RatPoly a, const RatPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    rp_trim(a);
    return a;
}

/* a = q*b + r, returns (q, r). */
std::pair<RatPoly, RatPoly> rp_divmod(RatPoly a, const RatPoly& b) {
    RatPoly q;
    rp_trim(a);
    if (b.empty()) throw invalid_input_error("division by zero polynomial");
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
        rp_trim(a);
    }
    rp_trim(q);
    return {q, a};
}

}  // namespace

FieldElement::FieldElement(std::shared_ptr<const NumberField> f, std::vector<Rat> c)
    : field_(std::move(f)), c_(std::move(c)) {}

bool FieldElement::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat FieldElement::rational_value() const {
    if (!is_rational()) throw invalid_input_error("element is not rational");
    return c_.empty() ? Rat(0) : c_[0];
}

static void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field().get() != b.field().get())
        throw invalid_input_error("field elements from different ambient fields");
}

FieldElement FieldElement::operator-() const {
    std::vector<Rat> v(c_);
    for (auto& x : v) x = -x;
    return FieldElement(field_, std::move(v));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    std::vector<Rat> v(a.c_);
    for (size_t i = 0; i < v.size(); ++i) v[i] += b.c_[i];
    return FieldElement(a.field_, std::move(v));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    std::vector<Rat> v(a.c_);
    for (size_t i = 0; i < v.size(); ++i) v[i] -= b.c_[i];
    return FieldElement(a.field_, std::move(v));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    const size_t d = a.c_.size();
    std::vector<Rat> raw(2 * d - 1, Rat(0));
    for (size_t i = 0; i < d; ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j) {
            if (b.c_[j] == 0) continue;
            raw[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return FieldElement(a.field_, a.field_->reduce(std::move(raw)));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::scaled(const Rat& r) const {
    std::vector<Rat> v(c_);
    for (auto& x : v) x *= r;
    return FieldElement(field_, std::move(v));
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_.get() == o.field_.get() && c_ == o.c_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw invalid_input_error("field inverse of zero");
    /* Extended Euclid on (element, minpoly): s*elem + t*minpoly = gcd = const. */
    RatPoly r0(c_.begin(), c_.end());
    rp_trim(r0);
    RatPoly r1;
    for (const auto& c : field_->minimal_polynomial().coeffs()) r1.emplace_back(c);
    RatPoly s0{Rat(1)}, s1{};
    while (!r1.empty()) {
        auto [q, r] = rp_divmod(r0, r1);
        RatPoly s2 = rp_sub(s0, rp_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1)
        throw consistency_error("inverse: gcd with minimal polynomial is not constant "
                                "(reducible minimal polynomial?)");
    Rat g = r0[0];
    std::vector<Rat> v(static_cast<size_t>(field_->degree()), Rat(0));
    for (size_t i = 0; i < s0.size() && i < v.size(); ++i) v[i] = s0[i] / g;
    if (s0.size() > v.size()) throw consistency_error("inverse: cofactor degree too large");
    return FieldElement(field_, std::move(v));
}

int FieldElement::sign() const {
    if (is_zero()) return 0;
    return field_->sign_of(c_);
}

std::pair<Rat, Rat> FieldElement::enclosure(const Rat& width) const {
    return field_->enclosure_of(c_, width);
}

void NumberField::rebuild_cache(EnclosureCache& cache, const Rat& lo, const Rat& hi) const {
    cache.lo = lo;
    cache.hi = hi;
    cache.powers.assign(static_cast<size_t>(degree_), {Rat(1), Rat(1)});
    Interval th{lo, hi};
    Interval pw{Rat(1), Rat(1)};
    for (int i = 1; i < degree_; ++i) {
        pw = mul(pw, th);
        cache.powers[static_cast<size_t>(i)] = {pw.lo, pw.hi};
    }
}

std::pair<Rat, Rat> NumberField::cached_eval_interval(const EnclosureCache& cache,
                                                      const std::vector<Rat>& coords) const {
    Rat L = coords.empty() ? Rat(0) : coords[0], H = L;
    for (size_t i = 1; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        const auto& [plo, phi] = cache.powers[i];
        if (coords[i] > 0) {
            L += coords[i] * plo;
            H += coords[i] * phi;
        } else {
            L += coords[i] * phi;
            H += coords[i] * plo;
        }
    }
    return {L, H};
}

int NumberField::cached_eval_sign(const EnclosureCache& cache,
                                  const std::vector<Rat>& coords) const {
    auto [L, H] = cached_eval_interval(cache, coords);
    if (L > 0) return 1;
    if (H < 0) return -1;
    return 0;
}

int NumberField::sign_of(const std::vector<Rat>& coords) const {
    if (root_.is_exact()) {
        Rat th = root_.exact_value();
        Rat acc(0);
        for (auto it = coords.rbegin(); it != coords.rend(); ++it) acc = acc * th + *it;
        return acc.sign();
    }
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (coarse_.lo > coarse_.hi) {
        static const Rat kCoarseWidth = Rat(1, boost::multiprecision::pow(Int(2), 96));
        auto [lo, hi] = root_.interval_refined(kCoarseWidth);
        rebuild_cache(coarse_, lo, hi);
    }
    if (int s = cached_eval_sign(coarse_, coords)) return s;
    /* Nonzero coordinates on an irreducible minimal polynomial mean a
     * nonzero real value, so refining the isolating interval terminates. */
    while (true) {
        auto [lo, hi] = root_.interval();
        if (fine_.lo != lo || fine_.hi != hi) rebuild_cache(fine_, lo, hi);
        if (int s = cached_eval_sign(fine_, coords)) return s;
        root_.refine_steps(32);
    }
}

std::pair<Rat, Rat> NumberField::enclosure_of(const std::vector<Rat>& coords,
                                              const Rat& width) const {
    if (root_.is_exact()) {
        Rat th = root_.exact_value();
        Rat acc(0);
        for (auto it = coords.rbegin(); it != coords.rend(); ++it) acc = acc * th + *it;
        return {acc, acc};
    }
    std::lock_guard<std::mutex> lock(cache_mu_);
    while (true) {
        auto [lo, hi] = root_.interval();
        if (fine_.lo != lo || fine_.hi != hi) rebuild_cache(fine_, lo, hi);
        auto [L, H] = cached_eval_interval(fine_, coords);
        if (H - L < width) return {L, H};
        root_.refine_steps(8);
    }
}

Int FieldElement::floor() const {
    if (is_rational()) return floor_rat(rational_value());
    Rat width(1, 4);
    while (true) {
        auto [L, H] = enclosure(width);
        Int fl = floor_rat(L), fh = floor_rat(H);
        if (fl == fh) return fl;
        if (H - L < 1) {
            /* Exactly one integer k in (L, H]; decide against it exactly. */
            Int k = fh;
            FieldElement diff = *this - field_->from_rational(Rat(k));
            return diff.sign() >= 0 ? k : k - 1;
        }
        width /= 16;
    }
}

std::string FieldElement::str(const std::string& var) const {
    bool all_zero = true;
    std::ostringstream out;
    bool first = true;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
        const Rat& c = c_[static_cast<size_t>(i)];
        if (c == 0) continue;
        all_zero = false;
        Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? "-" : "+");
        }
        if (i == 0 || a != 1) {
            out << numerator(a).str();
            if (denominator(a) != 1) out << "/" << denominator(a).str();
        }
        if (i > 0) {
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    if (all_zero) return "0";
    return out.str();
}

NumberField::NumberField(IntPolynomial poly, RealRoot root, int root_index)
    : minpoly_(std::move(poly)), root_(std::move(root)), root_index_(root_index) {
    degree_ = minpoly_.degree();
    const int d = degree_;
    /* theta^d = -(c_0 + c_1 theta + ...); higher powers by iteration. */
    std::vector<Int> cur(static_cast<size_t>(d), Int(0));
    for (int i = 0; i < d; ++i) cur[static_cast<size_t>(i)] = -minpoly_.coeff(i);
    for (int k = d; k <= 2 * d - 2; ++k) {
        high_power_rows_.push_back(cur);
        std::vector<Int> next(static_cast<size_t>(d), Int(0));
        for (int i = 0; i + 1 < d; ++i) next[static_cast<size_t>(i + 1)] = cur[static_cast<size_t>(i)];
        const Int top = cur[static_cast<size_t>(d - 1)];
        if (top != 0)
            for (int i = 0; i < d; ++i) next[static_cast<size_t>(i)] -= top * minpoly_.coeff(i);
        cur = std::move(next);
    }
}

std::vector<Rat> NumberField::reduce(std::vector<Rat> raw) const {
    const size_t d = static_cast<size_t>(degree_);
    for (size_t k = raw.size(); k-- > d;) {
        if (raw[k] == 0) continue;
        const auto& row = high_power_rows_[k - d];
        for (size_t i = 0; i < d; ++i)
            if (row[i] != 0) raw[i] += raw[k] * Rat(row[i]);
        raw[k] = 0;
    }
    raw.resize(d);
    return raw;
}

std::shared_ptr<const NumberField> NumberField::create(const IntPolynomial& poly, int root_index) {
    if (poly.degree() < 1) throw invalid_input_error("minimal polynomial must have degree >= 1");
    if (!poly.is_monic()) throw invalid_input_error("minimal polynomial must be monic");
    if (IntPolynomial::gcd(poly, poly.derivative()).degree() > 0)
        throw invalid_input_error("minimal polynomial is not squarefree, hence reducible");
    if (poly.degree() >= 2 && !poly.rational_roots().empty())
        throw invalid_input_error("minimal polynomial has a rational root, hence reducible");
    auto roots = isolate_real_roots(poly);
    if (root_index < 0 || root_index >= static_cast<int>(roots.size()))
        throw invalid_input_error("polynomial has " + std::to_string(roots.size()) +
                                  " real roots; index " + std::to_string(root_index) +
                                  " out of range");
    return std::shared_ptr<const NumberField>(
        new NumberField(poly, roots[static_cast<size_t>(root_index)], root_index));
}

std::shared_ptr<const NumberField> NumberField::parse(const std::string& spec) {
    auto at = spec.find('@');
    std::string poly_part = at == std::string::npos ? spec : spec.substr(0, at);
    int index = 0;
    if (at != std::string::npos) {
        try {
            index = std::stoi(spec.substr(at + 1));
        } catch (const std::exception&) {
            throw invalid_input_error("bad root index in field spec '" + spec + "'");
        }
    }
    return create(IntPolynomial::parse(poly_part), index);
}

std::string NumberField::spec_string() const {
    return minpoly_.str() + "@" + std::to_string(root_index_);
}

FieldElement NumberField::zero() const { return from_rational(Rat(0)); }
FieldElement NumberField::one() const { return from_rational(Rat(1)); }

FieldElement NumberField::theta() const {
    std::vector<Rat> v(static_cast<size_t>(degree_), Rat(0));
    if (degree_ >= 2)
        v[1] = 1;
    else
        v[0] = root_.exact_value();  // degree-1 field: theta is rational
    return FieldElement(shared_from_this(), std::move(v));
}

FieldElement NumberField::from_rational(const Rat& r) const {
    std::vector<Rat> v(static_cast<size_t>(degree_), Rat(0));
    v[0] = r;
    return FieldElement(shared_from_this(), std::move(v));
}

FieldElement NumberField::from_coords(std::vector<Rat> coords) const {
    if (static_cast<int>(coords.size()) != degree_)
        throw invalid_input_error("coordinate vector has wrong length");
    return FieldElement(shared_from_this(), std::move(coords));
}

FieldElement NumberField::from_int_coords(const std::vector<Int>& coords) const {
    if (static_cast<int>(coords.size()) != degree_)
        throw invalid_input_error("coordinate vector has wrong length");
    std::vector<Rat> v;
    v.reserve(coords.size());
    for (const auto& c : coords) v.emplace_back(c);
    return FieldElement(shared_from_this(), std::move(v));
}

FieldElement NumberField::parse_element(const std::string& text) const {
    /* sum of terms: [sign] [rational] ['*'] [letter ['^' exponent]] */
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto fail = [&](const std::string& why) {
        throw invalid_input_error("cannot parse element '" + text + "': " + why);
    };
    std::vector<Rat> raw;
    skip_ws();
    if (i == text.size()) fail("empty input");
    bool first = true;
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        Int num(0), den(1);
        bool have_num = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            num = num * 10 + (text[i] - '0');
            have_num = true;
            ++i;
        }
        if (have_num && i < text.size() && text[i] == '/') {
            ++i;
            den = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                den = den * 10 + (text[i] - '0');
                ++i;
            }
            if (den == 0) fail("bad denominator");
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
        int exp = 0;
        if (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
            ++i;
            exp = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                long e = 0;
                if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    fail("expected exponent");
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    e = e * 10 + (text[i] - '0');
                    if (e > 4096) fail("exponent too large");
                    ++i;
                }
                exp = static_cast<int>(e);
            }
        } else if (!have_num) {
            fail("expected coefficient or variable");
        }
        Rat c = have_num ? Rat(num, den) : Rat(1);
        if (static_cast<size_t>(exp) >= raw.size()) raw.resize(static_cast<size_t>(exp) + 1, Rat(0));
        raw[static_cast<size_t>(exp)] += sign * c;
    }
    raw.resize(std::max(raw.size(), static_cast<size_t>(degree_)), Rat(0));
    return FieldElement(shared_from_this(), reduce(std::move(raw)));
}

Int NumberField::floor_ratio(const FieldElement& a, const FieldElement& b) const {
    if (b.sign() <= 0) throw invalid_input_error("floor_ratio requires b > 0");
    return (a / b).floor();
}

int NumberField::compare(const FieldElement& a, const FieldElement& b) const {
    return (a - b).sign();
}

}  // namespace semikit
