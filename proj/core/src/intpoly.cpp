#include "semikit/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "semikit/errors.hpp"

namespace semikit {

namespace {
const Int kZero(0);
}

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::constant(Int c) {
    return IntPolynomial(std::vector<Int>{std::move(c)});
}

IntPolynomial IntPolynomial::monomial(int degree, Int c) {
    std::vector<Int> v(static_cast<size_t>(degree) + 1, Int(0));
    v.back() = std::move(c);
    return IntPolynomial(std::move(v));
}

const Int& IntPolynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<size_t>(i)];
}

const Int& IntPolynomial::leading() const { return coeffs_.back(); }

IntPolynomial IntPolynomial::operator-() const {
    std::vector<Int> v(coeffs_);
    for (auto& c : v) c = -c;
    return IntPolynomial(std::move(v));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<Int> v(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::scaled(const Int& c) const {
    std::vector<Int> v(coeffs_);
    for (auto& x : v) x *= c;
    return IntPolynomial(std::move(v));
}

Int IntPolynomial::eval(const Int& x) const {
    Int acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat IntPolynomial::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

int IntPolynomial::sign_at(const Rat& x) const { return eval(x).sign(); }

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return IntPolynomial();
    std::vector<Int> v(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Int(i);
    return IntPolynomial(std::move(v));
}

Int IntPolynomial::content() const {
    Int g(0);
    for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
    return g < 0 ? Int(-g) : g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return IntPolynomial();
    Int c = content();
    std::vector<Int> v(coeffs_);
    for (auto& x : v) x /= c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& d) const {
    if (d.is_zero()) throw invalid_input_error("polynomial division by zero");
    std::vector<Int> rem(coeffs_);
    int dn = d.degree();
    int qn = degree() - dn;
    if (qn < 0) {
        if (is_zero()) return IntPolynomial();
        throw consistency_error("divide_exact: divisor degree exceeds dividend");
    }
    std::vector<Int> q(static_cast<size_t>(qn) + 1, Int(0));
    for (int i = qn; i >= 0; --i) {
        Int top = rem[static_cast<size_t>(i + dn)];
        if (top == 0) continue;
        if (top % d.leading() != 0) throw consistency_error("divide_exact: not divisible");
        Int f = top / d.leading();
        q[static_cast<size_t>(i)] = f;
        for (int j = 0; j <= dn; ++j) rem[static_cast<size_t>(i + j)] -= f * d.coeff(j);
    }
    for (const auto& c : rem)
        if (c != 0) throw consistency_error("divide_exact: nonzero remainder");
    return IntPolynomial(std::move(q));
}

IntPolynomial pseudo_rem(const IntPolynomial& n, const IntPolynomial& d) {
    if (d.is_zero()) throw invalid_input_error("pseudo_rem by zero");
    std::vector<Int> r(n.coeffs());
    int dn = d.degree();
    const Int& lc = d.leading();
    while (static_cast<int>(r.size()) - 1 >= dn) {
        int rn = static_cast<int>(r.size()) - 1;
        Int top = r.back();
        for (auto& c : r) c *= lc;
        for (int j = 0; j <= dn; ++j)
            r[static_cast<size_t>(rn - dn + j)] -= top * d.coeff(j);
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) break;
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::gcd(IntPolynomial a, IntPolynomial b) {
    if (a.is_zero() && b.is_zero()) return IntPolynomial();
    if (a.is_zero()) std::swap(a, b);
    if (b.is_zero()) {
        IntPolynomial p = a.primitive_part();
        if (p.leading() < 0) p = -p;
        return p;
    }
    a = a.primitive_part();
    b = b.primitive_part();
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_rem(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    if (a.leading() < 0) a = -a;
    return a;
}

IntPolynomial IntPolynomial::squarefree_part() const {
    if (is_zero()) throw invalid_input_error("squarefree part of the zero polynomial");
    IntPolynomial p = primitive_part();
    if (p.leading() < 0) p = -p;
    if (p.degree() == 0) return p;
    IntPolynomial g = gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    return p.divide_exact(g).primitive_part();
}

std::vector<Rat> IntPolynomial::rational_roots() const {
    std::vector<Rat> roots;
    if (is_zero() || degree() == 0) return roots;
    // strip powers of x
    IntPolynomial p = *this;
    if (p.coeff(0) == 0) {
        roots.emplace_back(0);
        std::vector<Int> v(p.coeffs().begin(), p.coeffs().end());
        size_t k = 0;
        while (k < v.size() && v[k] == 0) ++k;
        p = IntPolynomial(std::vector<Int>(v.begin() + static_cast<long>(k), v.end()));
        if (p.degree() < 1) return roots;
    }
    auto divisors = [](Int n) {
        n = abs_int(n);
        std::vector<Int> ds;
        for (Int i = 1; i * i <= n; ++i) {
            if (n % i == 0) {
                ds.push_back(i);
                if (i * i != n) ds.push_back(n / i);
            }
        }
        return ds;
    };
    for (const Int& p0 : divisors(p.coeff(0)))
        for (const Int& q0 : divisors(p.leading()))
            for (int s : {1, -1}) {
                Rat cand(s * p0, q0);
                if (p.sign_at(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

IntPolynomial IntPolynomial::parse(const std::string& text) {
    // sum of terms: [sign] [integer] ['*'] [letter ['^' exponent]]
    std::vector<Int> coeffs;
    char var = 0;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto fail = [&](const std::string& why) {
        throw invalid_input_error("cannot parse polynomial '" + text + "': " + why);
    };
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
        Int mag(0);
        bool have_num = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            mag = mag * 10 + (text[i] - '0');
            have_num = true;
            ++i;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
        int exp = 0;
        if (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
            char v = text[i];
            if (var == 0) var = v;
            else if (var != v) fail("mixed variable names");
            ++i;
            exp = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    fail("expected exponent");
                long e = 0;
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
        Int c = have_num ? mag : Int(1);
        if (static_cast<size_t>(exp) >= coeffs.size()) coeffs.resize(static_cast<size_t>(exp) + 1, Int(0));
        coeffs[static_cast<size_t>(exp)] += sign * c;
    }
    return IntPolynomial(std::move(coeffs));
}

std::string IntPolynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& c = coeff(i);
        if (c == 0) continue;
        Int a = abs_int(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? "-" : "+");
        }
        if (i == 0 || a != 1) out << a.str();
        if (i > 0) {
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

}  // namespace semikit
