#include "semikit/semiring.hpp"

#include <algorithm>
#include <sstream>

#include "semikit/congruence.hpp"
#include "semikit/errors.hpp"

namespace semikit {

FiniteSemiring FiniteSemiring::from_tables(uint32_t size, std::vector<uint32_t> add,
                                           std::vector<uint32_t> mul, uint32_t zero, uint32_t one,
                                           std::vector<std::string> labels) {
    if (size == 0) throw invalid_input_error("semiring carrier must be nonempty");
    if (add.size() != static_cast<size_t>(size) * size || mul.size() != static_cast<size_t>(size) * size)
        throw invalid_input_error("operation tables must be size x size");
    for (uint32_t v : add)
        if (v >= size) throw invalid_input_error("add table entry out of range");
    for (uint32_t v : mul)
        if (v >= size) throw invalid_input_error("mul table entry out of range");
    if (zero >= size || one >= size) throw invalid_input_error("zero/one out of range");
    FiniteSemiring s;
    s.size_ = size;
    s.add_ = std::move(add);
    s.mul_ = std::move(mul);
    s.zero_ = zero;
    s.one_ = one;
    if (labels.empty()) {
        for (uint32_t i = 0; i < size; ++i) labels.push_back(std::to_string(i));
    } else if (labels.size() != size) {
        throw invalid_input_error("label list has wrong length");
    }
    s.labels_ = std::move(labels);
    return s;
}

FiniteSemiring FiniteSemiring::with_name(std::string n) const {
    FiniteSemiring s = *this;
    s.name_ = std::move(n);
    return s;
}

std::vector<AxiomViolation> validate_axioms(const FiniteSemiring& s) {
    std::vector<AxiomViolation> out;
    const uint32_t n = s.size();
    auto report = [&](const char* axiom, uint32_t a, uint32_t b, uint32_t c, std::string detail) {
        out.push_back({axiom, {a, b, c}, std::move(detail)});
    };
    for (uint32_t a = 0; a < n; ++a) {
        if (s.add(s.zero(), a) != a) report("zero-additive-identity", a, 0, 0, "0+a != a");
        if (s.add(a, s.zero()) != a) report("zero-additive-identity", a, 0, 0, "a+0 != a");
        if (s.mul(s.zero(), a) != s.zero()) report("zero-absorbing", a, 0, 0, "0*a != 0");
        if (s.mul(a, s.zero()) != s.zero()) report("zero-absorbing", a, 0, 0, "a*0 != 0");
        if (s.mul(s.one(), a) != a) report("one-multiplicative-identity", a, 0, 0, "1*a != a");
        if (s.mul(a, s.one()) != a) report("one-multiplicative-identity", a, 0, 0, "a*1 != a");
    }
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b) {
            if (s.add(a, b) != s.add(b, a)) report("addition-commutativity", a, b, 0, "a+b != b+a");
        }
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b)
            for (uint32_t c = 0; c < n; ++c) {
                if (s.add(s.add(a, b), c) != s.add(a, s.add(b, c)))
                    report("addition-associativity", a, b, c, "(a+b)+c != a+(b+c)");
                if (s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)))
                    report("multiplication-associativity", a, b, c, "(ab)c != a(bc)");
                if (s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c)))
                    report("left-distributivity", a, b, c, "a(b+c) != ab+ac");
                if (s.mul(s.add(a, b), c) != s.add(s.mul(a, c), s.mul(b, c)))
                    report("right-distributivity", a, b, c, "(a+b)c != ac+bc");
            }
    return out;
}

void require_valid(const FiniteSemiring& s) {
    auto v = validate_axioms(s);
    if (!v.empty()) {
        std::ostringstream msg;
        msg << "not a semiring: " << v.front().axiom << " fails at (" << v.front().witness[0]
            << "," << v.front().witness[1] << "," << v.front().witness[2] << ")";
        throw invalid_input_error(msg.str());
    }
}

bool is_valid(const FiniteSemiring& s) { return validate_axioms(s).empty(); }

bool is_ring(const FiniteSemiring& s) {
    for (uint32_t a = 0; a < s.size(); ++a) {
        bool inv = false;
        for (uint32_t b = 0; b < s.size(); ++b)
            if (s.add(a, b) == s.zero()) { inv = true; break; }
        if (!inv) return false;
    }
    return true;
}

FiniteSemiring make_boolean() { return make_truncated_nat(1, 1).with_name("boolean"); }

FiniteSemiring make_truncated_nat(uint32_t n, uint32_t k) {
    if (k < 1) throw invalid_input_error("truncated naturals need k >= 1");
    const uint32_t size = n + k;
    auto reduce = [&](uint64_t x) -> uint32_t {
        if (x < size) return static_cast<uint32_t>(x);
        return n + static_cast<uint32_t>((x - n) % k);
    };
    std::vector<uint32_t> add(static_cast<size_t>(size) * size), mul(static_cast<size_t>(size) * size);
    for (uint64_t a = 0; a < size; ++a)
        for (uint64_t b = 0; b < size; ++b) {
            add[a * size + b] = reduce(a + b);
            mul[a * size + b] = reduce(a * b);
        }
    if (1 >= size) {
        // n + k = 1 forces n = 0, k = 1: the zero ring, where one == zero.
        return FiniteSemiring::from_tables(size, std::move(add), std::move(mul), 0, 0)
            .with_name("truncnat:0:1");
    }
    return FiniteSemiring::from_tables(size, std::move(add), std::move(mul), 0, 1)
        .with_name("truncnat:" + std::to_string(n) + ":" + std::to_string(k));
}

FiniteSemiring make_zmod(uint32_t m) {
    if (m < 1) throw invalid_input_error("zmod needs m >= 1");
    return make_truncated_nat(0, m).with_name("zmod:" + std::to_string(m));
}

FiniteSemiring make_minmax(uint32_t b) {
    if (b < 2) throw invalid_input_error("minmax chain needs b >= 2");
    std::vector<uint32_t> add(static_cast<size_t>(b) * b), mul(static_cast<size_t>(b) * b);
    for (uint32_t x = 0; x < b; ++x)
        for (uint32_t y = 0; y < b; ++y) {
            add[x * b + y] = std::max(x, y);
            mul[x * b + y] = std::min(x, y);
        }
    return FiniteSemiring::from_tables(b, std::move(add), std::move(mul), 0, b - 1)
        .with_name("minmax:" + std::to_string(b));
}

FiniteSemiring make_product(const FiniteSemiring& s, const FiniteSemiring& t) {
    const uint32_t n = s.size() * t.size();
    auto idx = [&](uint32_t a, uint32_t b) { return a * t.size() + b; };
    std::vector<uint32_t> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (uint32_t a = 0; a < s.size(); ++a)
        for (uint32_t b = 0; b < t.size(); ++b) {
            labels[idx(a, b)] = "(" + s.label(a) + "," + t.label(b) + ")";
            for (uint32_t c = 0; c < s.size(); ++c)
                for (uint32_t d = 0; d < t.size(); ++d) {
                    add[static_cast<size_t>(idx(a, b)) * n + idx(c, d)] = idx(s.add(a, c), t.add(b, d));
                    mul[static_cast<size_t>(idx(a, b)) * n + idx(c, d)] = idx(s.mul(a, c), t.mul(b, d));
                }
        }
    return FiniteSemiring::from_tables(n, std::move(add), std::move(mul),
                                       idx(s.zero(), t.zero()), idx(s.one(), t.one()),
                                       std::move(labels));
}

FiniteSemiring make_star(const FiniteSemiring& s) {
    const uint32_t n = s.size() + 1;
    const uint32_t omega = s.size();
    std::vector<uint32_t> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    std::vector<std::string> labels;
    for (uint32_t i = 0; i < s.size(); ++i) labels.push_back(s.label(i));
    labels.push_back("omega");
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b) {
            if (a == omega) {
                add[a * n + b] = b;
                mul[a * n + b] = omega;
            } else if (b == omega) {
                add[a * n + b] = a;
                mul[a * n + b] = omega;
            } else {
                add[a * n + b] = s.add(a, b);
                mul[a * n + b] = s.mul(a, b);
            }
        }
    return FiniteSemiring::from_tables(n, std::move(add), std::move(mul), omega, s.one(),
                                       std::move(labels));
}

FiniteSemiring make_quotient(const FiniteSemiring& s, const CongruencePartition& p) {
    if (p.carrier_size() != s.size())
        throw invalid_input_error("partition carrier does not match semiring");
    if (auto w = congruence_witness(s, p)) {
        std::ostringstream msg;
        msg << "partition is not a congruence: classes of (" << w->a << "," << w->b
            << ") diverge under " << w->op << " with r=" << w->r;
        throw invalid_input_error(msg.str());
    }
    const uint32_t n = p.class_count();
    std::vector<uint32_t> rep(n, 0);
    std::vector<bool> seen(n, false);
    for (uint32_t e = 0; e < s.size(); ++e) {
        uint32_t c = p.class_of(e);
        if (!seen[c]) { seen[c] = true; rep[c] = e; }
    }
    std::vector<uint32_t> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (uint32_t a = 0; a < n; ++a) {
        labels[a] = "[" + s.label(rep[a]) + "]";
        for (uint32_t b = 0; b < n; ++b) {
            add[a * n + b] = p.class_of(s.add(rep[a], rep[b]));
            mul[a * n + b] = p.class_of(s.mul(rep[a], rep[b]));
        }
    }
    return FiniteSemiring::from_tables(n, std::move(add), std::move(mul), p.class_of(s.zero()),
                                       p.class_of(s.one()), std::move(labels));
}

FiniteSemiring catalog_get(const std::string& spec) {
    auto bad = [&]() -> FiniteSemiring {
        throw invalid_input_error("unknown semiring spec '" + spec + "'");
    };
    if (spec == "boolean") return make_boolean();
    auto colon = spec.find(':');
    if (colon == std::string::npos) return bad();
    std::string head = spec.substr(0, colon), rest = spec.substr(colon + 1);
    auto parse_u32 = [&](const std::string& t) -> uint32_t {
        try {
            long v = std::stol(t);
            if (v < 0) throw std::out_of_range("negative");
            return static_cast<uint32_t>(v);
        } catch (const std::exception&) {
            throw invalid_input_error("bad number '" + t + "' in semiring spec");
        }
    };
    if (head == "minmax") return make_minmax(parse_u32(rest));
    if (head == "zmod") return make_zmod(parse_u32(rest));
    if (head == "truncnat") {
        auto c2 = rest.find(':');
        if (c2 == std::string::npos) return bad();
        return make_truncated_nat(parse_u32(rest.substr(0, c2)), parse_u32(rest.substr(c2 + 1)));
    }
    if (head == "star") return make_star(catalog_get(rest)).with_name("star:" + rest);
    if (head == "product") {
        auto star_pos = rest.find('*');
        if (star_pos == std::string::npos) return bad();
        return make_product(catalog_get(rest.substr(0, star_pos)), catalog_get(rest.substr(star_pos + 1)))
            .with_name("product:" + rest);
    }
    return bad();
}

std::vector<FiniteSemiring> default_catalog() {
    std::vector<std::string> names = {
        "boolean",      "minmax:2",        "minmax:3",
        "minmax:4",     "minmax:5",        "zmod:2",
        "zmod:3",       "zmod:4",          "zmod:6",
        "truncnat:1:2", "truncnat:2:3",    "truncnat:3:2",
        "star:boolean", "star:zmod:2",     "star:minmax:3",
        "product:boolean*boolean", "product:boolean*zmod:2",
    };
    std::vector<FiniteSemiring> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(catalog_get(n));
    return out;
}

BoolPolynomial operator+(const BoolPolynomial& a, const BoolPolynomial& b) {
    std::set<uint32_t> s = a.support_;
    s.insert(b.support_.begin(), b.support_.end());
    return BoolPolynomial(std::move(s));
}

BoolPolynomial operator*(const BoolPolynomial& a, const BoolPolynomial& b) {
    std::set<uint32_t> s;
    for (uint32_t i : a.support_)
        for (uint32_t j : b.support_) s.insert(i + j);
    return BoolPolynomial(std::move(s));
}

uint64_t BoolPolynomial::mask() const {
    uint64_t m = 0;
    for (uint32_t i : support_) {
        if (i >= 64) throw invalid_input_error("BoolPolynomial degree too large for mask");
        m |= (1ULL << i);
    }
    return m;
}

BoolPolynomial BoolPolynomial::from_mask(uint64_t mask) {
    std::set<uint32_t> s;
    for (uint32_t i = 0; i < 64; ++i)
        if (mask & (1ULL << i)) s.insert(i);
    return BoolPolynomial(std::move(s));
}

std::string BoolPolynomial::str() const {
    if (support_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = support_.rbegin(); it != support_.rend(); ++it) {
        if (!first) out << "+";
        first = false;
        if (*it == 0) out << "1";
        else if (*it == 1) out << "X";
        else out << "X^" << *it;
    }
    return out.str();
}

std::vector<PositivityViolation> validate_positivity(const FiniteSemiring& ring,
                                                     const PositivityMap& p) {
    std::vector<PositivityViolation> out;
    const uint32_t n = ring.size();
    if (p.values.size() != n) throw invalid_input_error("positivity map has wrong length");
    for (int8_t v : p.values)
        if (v < -1 || v > 1) throw invalid_input_error("positivity values must be in {-1,0,1}");
    if (p.values[ring.zero()] != 0) out.push_back({"p(0)=0", {ring.zero(), 0}});
    if (p.values[ring.one()] != 1) out.push_back({"p(1)=1", {ring.one(), 0}});
    for (uint32_t x = 0; x < n; ++x)
        for (uint32_t y = 0; y < n; ++y) {
            if (p.values[ring.mul(x, y)] != p.values[x] * p.values[y])
                out.push_back({"p(xy)=p(x)p(y)", {x, y}});
            if (p.values[ring.add(x, y)] == -1 && p.values[x] != -1 && p.values[y] != -1)
                out.push_back({"p(x+y)=-1 => p(x)=-1 or p(y)=-1", {x, y}});
        }
    return out;
}

std::pair<FiniteSemiring, std::vector<uint32_t>> positive_subsemiring(const FiniteSemiring& ring,
                                                                      const PositivityMap& p) {
    require_valid(ring);
    if (!is_ring(ring)) throw invalid_input_error("positive_subsemiring requires a ring");
    auto viol = validate_positivity(ring, p);
    if (!viol.empty()) {
        std::ostringstream msg;
        msg << "not a positivity function: " << viol.front().axiom << " fails at ("
            << viol.front().witness[0] << "," << viol.front().witness[1] << ")";
        throw invalid_input_error(msg.str());
    }
    std::vector<uint32_t> members;
    std::vector<int32_t> pos(ring.size(), -1);
    for (uint32_t x = 0; x < ring.size(); ++x)
        if (p.values[x] >= 0) {
            pos[x] = static_cast<int32_t>(members.size());
            members.push_back(x);
        }
    const uint32_t n = static_cast<uint32_t>(members.size());
    std::vector<uint32_t> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    std::vector<std::string> labels(n);
    for (uint32_t a = 0; a < n; ++a) {
        labels[a] = ring.label(members[a]);
        for (uint32_t b = 0; b < n; ++b) {
            int32_t s = pos[ring.add(members[a], members[b])];
            int32_t m = pos[ring.mul(members[a], members[b])];
            // closure is forced by the positivity axioms
            add[a * n + b] = static_cast<uint32_t>(s);
            mul[a * n + b] = static_cast<uint32_t>(m);
        }
    }
    FiniteSemiring sub = FiniteSemiring::from_tables(
        n, std::move(add), std::move(mul), static_cast<uint32_t>(pos[ring.zero()]),
        static_cast<uint32_t>(pos[ring.one()]), std::move(labels));
    return {std::move(sub), std::move(members)};
}

}  // namespace semikit
