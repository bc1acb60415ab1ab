#include "semikit/congruence.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "semikit/errors.hpp"

namespace semikit {

namespace {

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(uint32_t n) : parent(n) {
        for (uint32_t i = 0; i < n; ++i) parent[i] = i;
    }
    uint32_t find(uint32_t x) {
        uint32_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            uint32_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }
    /* Returns false if already merged. Smaller root index wins, which keeps
     * the result independent of processing order. */
    bool merge(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

CongruencePartition partition_from_uf(UnionFind& uf) {
    std::vector<uint32_t> ids(uf.parent.size());
    for (uint32_t i = 0; i < uf.parent.size(); ++i) ids[i] = uf.find(i);
    return CongruencePartition::from_class_ids(std::move(ids));
}

size_t hash_ids(const std::vector<uint32_t>& ids) {
    size_t h = 1469598103934665603ULL;
    for (uint32_t v : ids) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace

CongruencePartition CongruencePartition::discrete(uint32_t n) {
    std::vector<uint32_t> ids(n);
    for (uint32_t i = 0; i < n; ++i) ids[i] = i;
    return from_class_ids(std::move(ids));
}

CongruencePartition CongruencePartition::full(uint32_t n) {
    return from_class_ids(std::vector<uint32_t>(n, 0));
}

CongruencePartition CongruencePartition::from_class_ids(std::vector<uint32_t> raw) {
    CongruencePartition p;
    p.class_of_.assign(raw.size(), 0);
    std::unordered_map<uint32_t, uint32_t> renumber;
    uint32_t next = 0;
    for (size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = renumber.try_emplace(raw[i], next);
        if (inserted) ++next;
        p.class_of_[i] = it->second;
    }
    p.classes_ = next;
    return p;
}

CongruencePartition CongruencePartition::from_classes(
    uint32_t n, const std::vector<std::vector<uint32_t>>& classes) {
    std::vector<uint32_t> ids(n);
    for (uint32_t i = 0; i < n; ++i) ids[i] = n + i;  // provisional singleton ids
    uint32_t next = 0;
    for (const auto& cls : classes) {
        for (uint32_t e : cls) {
            if (e >= n) throw invalid_input_error("partition element out of range");
            ids[e] = next;
        }
        ++next;
    }
    return from_class_ids(std::move(ids));
}

std::vector<std::vector<uint32_t>> CongruencePartition::classes() const {
    std::vector<std::vector<uint32_t>> out(classes_);
    for (uint32_t e = 0; e < class_of_.size(); ++e) out[class_of_[e]].push_back(e);
    return out;
}

bool CongruencePartition::refines(const CongruencePartition& coarser) const {
    if (carrier_size() != coarser.carrier_size()) return false;
    std::vector<int64_t> image(classes_, -1);
    for (uint32_t e = 0; e < class_of_.size(); ++e) {
        uint32_t mine = class_of_[e], theirs = coarser.class_of_[e];
        if (image[mine] < 0) image[mine] = theirs;
        else if (image[mine] != theirs) return false;
    }
    return true;
}

std::optional<CongruenceWitness> congruence_witness(const FiniteSemiring& s,
                                                    const CongruencePartition& p) {
    if (p.carrier_size() != s.size())
        throw invalid_input_error("partition carrier does not match semiring");
    auto classes = p.classes();
    for (const auto& cls : classes) {
        uint32_t a = cls.front();
        for (size_t i = 1; i < cls.size(); ++i) {
            uint32_t b = cls[i];
            for (uint32_t r = 0; r < s.size(); ++r) {
                if (!p.same(s.add(a, r), s.add(b, r))) return CongruenceWitness{a, b, r, "add"};
                if (!p.same(s.mul(a, r), s.mul(b, r))) return CongruenceWitness{a, b, r, "mul-right"};
                if (!p.same(s.mul(r, a), s.mul(r, b))) return CongruenceWitness{a, b, r, "mul-left"};
            }
        }
    }
    return std::nullopt;
}

bool is_congruence(const FiniteSemiring& s, const CongruencePartition& p) {
    return !congruence_witness(s, p).has_value();
}

namespace {

CongruencePartition closure_from_seeds(const FiniteSemiring& s,
                                       const std::vector<GeneratorPair>& gens) {
    const uint32_t n = s.size();
    UnionFind uf(n);
    std::deque<GeneratorPair> work(gens.begin(), gens.end());
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        if (a >= n || b >= n) throw invalid_input_error("generator pair out of range");
        if (!uf.merge(a, b)) continue;
        for (uint32_t r = 0; r < n; ++r) {
            work.emplace_back(s.add(a, r), s.add(b, r));
            work.emplace_back(s.mul(a, r), s.mul(b, r));
            work.emplace_back(s.mul(r, a), s.mul(r, b));
        }
    }
    return partition_from_uf(uf);
}

}  // namespace

CongruencePartition congruence_closure(const FiniteSemiring& s,
                                       const std::vector<GeneratorPair>& gens) {
    return closure_from_seeds(s, gens);
}

CongruencePartition congruence_join(const FiniteSemiring& s, const CongruencePartition& p,
                                    const CongruencePartition& q) {
    std::vector<GeneratorPair> pairs;
    for (const auto& part : {p, q})
        for (const auto& cls : part.classes())
            for (size_t i = 1; i < cls.size(); ++i) pairs.emplace_back(cls.front(), cls[i]);
    return closure_from_seeds(s, pairs);
}

const CongruenceInfo* CongruenceLattice::find(const CongruencePartition& p) const {
    for (const auto& c : congruences)
        if (c.partition == p) return &c;
    return nullptr;
}

CongruenceLattice enumerate_congruences(const FiniteSemiring& s, const EnumerationBudget& budget) {
    const uint32_t n = s.size();
    if (n > budget.max_carrier)
        throw resource_error("enumerate_congruences: carrier size " + std::to_string(n) +
                             " exceeds budget " + std::to_string(budget.max_carrier));

    std::vector<CongruenceInfo> found;
    std::unordered_map<size_t, std::vector<size_t>> index;  // hash -> positions

    auto lookup = [&](const CongruencePartition& p) -> int64_t {
        auto it = index.find(hash_ids(p.class_ids()));
        if (it == index.end()) return -1;
        for (size_t pos : it->second)
            if (found[pos].partition == p) return static_cast<int64_t>(pos);
        return -1;
    };
    auto insert = [&](CongruenceInfo info) -> bool {
        if (lookup(info.partition) >= 0) return false;
        if (found.size() >= budget.max_congruences)
            throw resource_error("enumerate_congruences: lattice larger than budget");
        index[hash_ids(info.partition.class_ids())].push_back(found.size());
        found.push_back(std::move(info));
        return true;
    };

    CongruenceInfo diag;
    diag.partition = CongruencePartition::discrete(n);
    diag.generators = {};
    diag.principal = true;
    diag.principal_generator = GeneratorPair{0, 0};
    insert(std::move(diag));

    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = a + 1; b < n; ++b) {
            CongruenceInfo info;
            info.partition = congruence_closure(s, {{a, b}});
            info.generators = {{a, b}};
            info.principal = true;
            info.principal_generator = GeneratorPair{a, b};
            int64_t existing = lookup(info.partition);
            if (existing < 0) insert(std::move(info));
        }

    /* Close under binary join. Newly found congruences are joined against
     * everything already present until nothing new appears. */
    for (size_t i = 0; i < found.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            CongruencePartition joined = congruence_join(s, found[i].partition, found[j].partition);
            if (lookup(joined) >= 0) continue;
            CongruenceInfo info;
            info.partition = std::move(joined);
            info.generators = found[i].generators;
            info.generators.insert(info.generators.end(), found[j].generators.begin(),
                                   found[j].generators.end());
            info.principal = false;
            insert(std::move(info));
        }
    }

    /* Prune recorded generator sets greedily and retag principality from the
     * principal seeds. */
    for (auto& info : found) {
        if (info.principal) continue;
        for (size_t i = info.generators.size(); i-- > 0;) {
            std::vector<GeneratorPair> trial = info.generators;
            trial.erase(trial.begin() + static_cast<long>(i));
            if (congruence_closure(s, trial) == info.partition) info.generators = std::move(trial);
        }
        if (info.generators.size() == 1) {
            info.principal = true;
            info.principal_generator = info.generators.front();
        }
    }

    std::sort(found.begin(), found.end(), [](const CongruenceInfo& a, const CongruenceInfo& b) {
        if (a.partition.class_count() != b.partition.class_count())
            return a.partition.class_count() > b.partition.class_count();
        return a.partition.class_ids() < b.partition.class_ids();
    });

    CongruenceLattice lattice;
    lattice.congruences = std::move(found);
    return lattice;
}

PrincipalityReport check_c_principal(const FiniteSemiring& s, const EnumerationBudget& budget) {
    CongruenceLattice lattice = enumerate_congruences(s, budget);
    PrincipalityReport report;
    report.congruence_count = lattice.congruences.size();
    report.c_principal = true;
    for (const auto& info : lattice.congruences) {
        if (!info.principal) {
            report.c_principal = false;
            report.witness = info;
            break;
        }
    }
    return report;
}

namespace {

enum : int8_t { kUnknown = 0, kIn = 1, kOut = 2 };

struct BoolQuotientSearch {
    const FiniteSemiring& s;
    explicit BoolQuotientSearch(const FiniteSemiring& sr) : s(sr) {}

    bool set(std::vector<int8_t>& st, uint32_t e, int8_t v, bool& changed) const {
        if (st[e] == v) return true;
        if (st[e] != kUnknown) return false;
        st[e] = v;
        changed = true;
        return true;
    }

    bool propagate(std::vector<int8_t>& st) const {
        const uint32_t n = s.size();
        bool changed = true;
        while (changed) {
            changed = false;
            for (uint32_t a = 0; a < n; ++a)
                for (uint32_t b = 0; b < n; ++b) {
                    uint32_t u = s.add(a, b);
                    // u in Q <=> a in Q and b in Q
                    if (st[a] == kIn && st[b] == kIn) {
                        if (!set(st, u, kIn, changed)) return false;
                    }
                    if (st[a] == kOut || st[b] == kOut) {
                        if (!set(st, u, kOut, changed)) return false;
                    }
                    if (st[u] == kIn) {
                        if (!set(st, a, kIn, changed)) return false;
                        if (!set(st, b, kIn, changed)) return false;
                    }
                    if (st[u] == kOut && st[a] == kIn) {
                        if (!set(st, b, kOut, changed)) return false;
                    }
                    if (st[u] == kOut && st[b] == kIn) {
                        if (!set(st, a, kOut, changed)) return false;
                    }
                    uint32_t v = s.mul(a, b);
                    // v in Q <=> a in Q or b in Q
                    if (st[a] == kIn || st[b] == kIn) {
                        if (!set(st, v, kIn, changed)) return false;
                    }
                    if (st[a] == kOut && st[b] == kOut) {
                        if (!set(st, v, kOut, changed)) return false;
                    }
                    if (st[v] == kOut) {
                        if (!set(st, a, kOut, changed)) return false;
                        if (!set(st, b, kOut, changed)) return false;
                    }
                    if (st[v] == kIn && st[a] == kOut) {
                        if (!set(st, b, kIn, changed)) return false;
                    }
                    if (st[v] == kIn && st[b] == kOut) {
                        if (!set(st, a, kIn, changed)) return false;
                    }
                }
        }
        return true;
    }

    bool verify(const std::vector<int8_t>& st) const {
        const uint32_t n = s.size();
        for (uint32_t a = 0; a < n; ++a)
            for (uint32_t b = 0; b < n; ++b) {
                bool qa = st[a] == kIn, qb = st[b] == kIn;
                if ((st[s.add(a, b)] == kIn) != (qa && qb)) return false;
                if ((st[s.mul(a, b)] == kIn) != (qa || qb)) return false;
            }
        return st[s.zero()] == kIn && st[s.one()] == kOut;
    }

    bool solve(std::vector<int8_t>& st) const {
        if (!propagate(st)) return false;
        uint32_t pick = s.size();
        for (uint32_t e = 0; e < s.size(); ++e)
            if (st[e] == kUnknown) { pick = e; break; }
        if (pick == s.size()) return verify(st);
        for (int8_t v : {kOut, kIn}) {  // prefer the smallest kernel
            std::vector<int8_t> trial = st;
            trial[pick] = v;
            if (solve(trial)) {
                st = std::move(trial);
                return true;
            }
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<uint32_t>> boolean_quotient_kernel(const FiniteSemiring& s) {
    std::vector<int8_t> st(s.size(), kUnknown);
    st[s.zero()] = kIn;
    if (st[s.one()] == kIn) return std::nullopt;  // zero ring: 0 == 1
    st[s.one()] = kOut;
    BoolQuotientSearch search(s);
    if (!search.solve(st)) return std::nullopt;
    std::vector<uint32_t> q;
    for (uint32_t e = 0; e < s.size(); ++e)
        if (st[e] == kIn) q.push_back(e);
    return q;
}

BorgerGrinbergReport bg_check(const FiniteSemiring& s) {
    BorgerGrinbergReport report;
    report.ring = is_ring(s);
    report.boolean_kernel = boolean_quotient_kernel(s);
    report.consistent = report.ring == !report.boolean_kernel.has_value();
    return report;
}

}  // namespace semikit
