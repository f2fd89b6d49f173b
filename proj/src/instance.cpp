#include "icsi/instance.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "icsi/error.hpp"

namespace icsi {

namespace {

// Lexicographic order on sorted member lists: the smaller set holds the least
// element of the symmetric difference.
bool lex_less(Subset a, Subset b) {
    const Subset d = a ^ b;
    if (d == 0) return false;
    return (a & (d & (~d + 1))) != 0;
}

bool j_order(Subset a, Subset b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca < cb;
    return lex_less(a, b);
}

}  // namespace

std::vector<std::size_t> members(Subset s) {
    std::vector<std::size_t> out;
    while (s) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
        s &= s - 1;
    }
    return out;
}

Subset mask_of(std::span<const std::size_t> elems) {
    Subset s = 0;
    for (std::size_t e : elems) s |= bit(e);
    return s;
}

void validate(const IcsiInstance& inst) {
    if (inst.m == 0) throw InvalidInput("instance needs at least one receiver");
    if (inst.n == 0) throw InvalidInput("instance needs at least one message");
    if (inst.n > kMaxMessages) throw InvalidInput("at most 64 messages are supported");
    if (inst.f.size() != inst.m) throw InvalidInput("demand function must list one message per receiver");
    if (inst.X.size() != inst.m) throw InvalidInput("side-information list must have one set per receiver");
    for (std::size_t i = 0; i < inst.m; ++i) {
        const std::string who = "receiver " + std::to_string(i + 1) + ": ";
        if (inst.f[i] >= inst.n) throw InvalidInput(who + "demand out of range");
        for (std::size_t k = 0; k < inst.X[i].size(); ++k) {
            const std::size_t v = inst.X[i][k];
            if (v >= inst.n) throw InvalidInput(who + "side-information index " + std::to_string(v + 1) + " out of range");
            if (k > 0 && inst.X[i][k - 1] >= v) throw InvalidInput(who + "side information must be sorted and distinct");
            if (v == inst.f[i]) throw InvalidInput(who + "demanded message is in its own side information");
        }
    }
}

Subset side_mask(const IcsiInstance& inst, std::size_t i) {
    if (i >= inst.m) throw InvalidInput("receiver index out of range");
    return mask_of(inst.X[i]);
}

Subset y_mask(const IcsiInstance& inst, std::size_t i) {
    const Subset all = inst.n == 64 ? ~Subset{0} : bit(inst.n) - 1;
    return all & ~side_mask(inst, i) & ~bit(inst.f[i]);
}

std::vector<std::size_t> y_set(const IcsiInstance& inst, std::size_t i) { return members(y_mask(inst, i)); }

bool in_J(const IcsiInstance& inst, Subset k) {
    if (k == 0) return false;
    for (std::size_t i = 0; i < inst.m; ++i) {
        const Subset fi = bit(inst.f[i]);
        if ((k & fi) == 0) continue;
        if ((k & ~fi & ~y_mask(inst, i)) == 0) return true;
    }
    return false;
}

std::vector<Subset> iter_J(const IcsiInstance& inst, std::uint64_t cap) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < inst.m; ++i) {
        total += pow_saturating(2, static_cast<std::uint64_t>(std::popcount(y_mask(inst, i))));
        if (total > cap) throw BudgetExceeded("J(H) enumeration exceeds cap; use in_J membership instead");
    }
    std::vector<Subset> out;
    out.reserve(total);
    for (std::size_t i = 0; i < inst.m; ++i) {
        const Subset y = y_mask(inst, i), fi = bit(inst.f[i]);
        Subset sub = y;
        while (true) {
            out.push_back(fi | sub);
            if (sub == 0) break;
            sub = (sub - 1) & y;
        }
    }
    std::sort(out.begin(), out.end(), j_order);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t count_I(const IcsiInstance& inst, unsigned q, std::uint64_t cap) {
    std::uint64_t total = 0;
    for (Subset k : iter_J(inst, cap)) {
        total += pow_saturating(q - 1, static_cast<std::uint64_t>(std::popcount(k)));
        if (total > cap) return total;
    }
    return total;
}

std::uint64_t iter_I(const IcsiInstance& inst, const FieldSpec& field,
                     const std::function<bool(std::span<const Elem>)>& visit, std::uint64_t cap) {
    if (count_I(inst, field.q(), cap) > cap) throw BudgetExceeded("I(delta,H) enumeration exceeds cap");
    const unsigned q = field.q();
    std::uint64_t count = 0;
    Vec z(inst.n, 0);
    for (Subset k : iter_J(inst, cap)) {
        const auto supp = members(k);
        Vec digits(supp.size(), 0);  // value - 1 at each support position
        do {
            std::fill(z.begin(), z.end(), 0);
            for (std::size_t t = 0; t < supp.size(); ++t) z[supp[t]] = digits[t] + 1;
            ++count;
            if (!visit(z)) return count;
        } while (odometer_next(digits, q - 1));
    }
    return count;
}

std::vector<Vec> collect_I(const IcsiInstance& inst, const FieldSpec& field, std::uint64_t cap) {
    std::vector<Vec> out;
    iter_I(
        inst, field,
        [&](std::span<const Elem> z) {
            out.emplace_back(z.begin(), z.end());
            return true;
        },
        cap);
    return out;
}

bool is_generalized_independent(const IcsiInstance& inst, Subset h) {
    Subset sub = h;
    while (sub) {
        if (!in_J(inst, sub)) return false;
        sub = (sub - 1) & h;
    }
    return true;
}

namespace {

struct GisSearch {
    const IcsiInstance& inst;
    std::vector<std::size_t> candidates;
    std::size_t best = 0;
    Subset best_set = 0;

    // Every subset of h ∪ {v} containing v must lie in J.
    bool extendable(Subset h, std::size_t v) const {
        const Subset bv = bit(v);
        Subset sub = h;
        while (true) {
            if (!in_J(inst, sub | bv)) return false;
            if (sub == 0) return true;
            sub = (sub - 1) & h;
        }
    }

    void run(std::size_t pos, Subset h, std::size_t size) {
        if (size > best) {
            best = size;
            best_set = h;
        }
        if (size + (candidates.size() - pos) <= best) return;
        for (std::size_t k = pos; k < candidates.size(); ++k) {
            if (size + (candidates.size() - k) <= best) return;
            const std::size_t v = candidates[k];
            if (extendable(h, v)) run(k + 1, h | bit(v), size + 1);
        }
    }
};

}  // namespace

GeneralizedIndependence generalized_independence_number(const IcsiInstance& inst, std::size_t max_n) {
    validate(inst);
    if (inst.n > max_n)
        throw BudgetExceeded("generalized independence search limited to n <= " + std::to_string(max_n));
    GisSearch s{inst, {}, 0, 0};
    for (std::size_t v = 0; v < inst.n; ++v)
        if (in_J(inst, bit(v))) s.candidates.push_back(v);
    s.run(0, 0, 0);
    return {s.best, s.best_set};
}

// --- families ------------------------------------------------------------

namespace {
IcsiInstance identity_demands(std::size_t n) {
    IcsiInstance inst;
    inst.m = inst.n = n;
    inst.f.resize(n);
    inst.X.resize(n);
    for (std::size_t i = 0; i < n; ++i) inst.f[i] = i;
    return inst;
}
}  // namespace

IcsiInstance no_side_information(std::size_t n) { return identity_demands(n); }

IcsiInstance complete_side_information(std::size_t n) {
    IcsiInstance inst = identity_demands(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) inst.X[i].push_back(j);
    return inst;
}

IcsiInstance circulant_instance(std::size_t n, std::span<const std::size_t> offsets) {
    IcsiInstance inst = identity_demands(n);
    for (std::size_t i = 0; i < n; ++i) {
        Subset s = 0;
        for (std::size_t d : offsets)
            if (d % n != 0) s |= bit((i + d) % n);
        inst.X[i] = members(s);
    }
    return inst;
}

IcsiInstance cycle_instance(std::size_t n) {
    const std::size_t offsets[] = {1, n - 1};
    return circulant_instance(n, offsets);
}

IcsiInstance cycle_complement_instance(std::size_t n) {
    std::vector<std::size_t> offsets;
    for (std::size_t d = 2; d + 1 < n; ++d) offsets.push_back(d);
    return circulant_instance(n, offsets);
}

IcsiInstance instance_from_graph(std::span<const Subset> adjacency) {
    IcsiInstance inst = identity_demands(adjacency.size());
    for (std::size_t i = 0; i < adjacency.size(); ++i) inst.X[i] = members(adjacency[i] & ~bit(i));
    return inst;
}

namespace naive {

std::size_t generalized_independence_number(const IcsiInstance& inst) {
    std::size_t best = 0;
    for (Subset h = 1; h < bit(inst.n); ++h)
        if (static_cast<std::size_t>(std::popcount(h)) > best && is_generalized_independent(inst, h))
            best = static_cast<std::size_t>(std::popcount(h));
    return best;
}

}  // namespace naive

}  // namespace icsi
