#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "icsi/error.hpp"
#include "icsi/instance.hpp"

namespace icsi {

namespace {

std::vector<Subset> symmetric_closure(const SideInfoGraph& g) {
    std::vector<Subset> adj(g.out);
    for (std::size_t u = 0; u < g.n; ++u)
        for (std::size_t v : members(g.out[u])) adj[v] |= bit(u);
    for (std::size_t u = 0; u < g.n; ++u) adj[u] &= ~bit(u);
    return adj;
}

Subset all_of(std::size_t n) { return n == 64 ? ~Subset{0} : bit(n) - 1; }

void check_cap(const SideInfoGraph& g, std::size_t max_n) {
    if (g.n > max_n) throw BudgetExceeded("exact graph solver limited to n <= " + std::to_string(max_n));
}

// Maximum independent set: branch on the highest-degree candidate.
struct MisSearch {
    const std::vector<Subset>& adj;
    std::size_t best = 0;

    void run(Subset p, std::size_t size) {
        if (p == 0) {
            best = std::max(best, size);
            return;
        }
        if (size + static_cast<std::size_t>(std::popcount(p)) <= best) return;
        std::size_t pick = 0;
        int pick_deg = -1;
        for (std::size_t v : members(p)) {
            const int d = std::popcount(adj[v] & p);
            if (d > pick_deg) {
                pick_deg = d;
                pick = v;
            }
        }
        if (pick_deg == 0) {
            best = std::max(best, size + static_cast<std::size_t>(std::popcount(p)));
            return;
        }
        run(p & ~bit(pick) & ~adj[pick], size + 1);
        run(p & ~bit(pick), size);
    }
};

struct Colouring {
    const std::vector<Subset>& adj;
    std::vector<std::size_t> order;
    std::vector<int> colour;
    int k = 0;

    bool run(std::size_t pos, int used) {
        if (pos == order.size()) return true;
        const std::size_t v = order[pos];
        const int limit = std::min(k, used + 1);
        for (int c = 0; c < limit; ++c) {
            bool ok = true;
            for (std::size_t u : members(adj[v]))
                if (colour[u] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            colour[v] = c;
            if (run(pos + 1, std::max(used, c + 1))) return true;
            colour[v] = -1;
        }
        return false;
    }
};

}  // namespace

SideInfoGraph side_info_graph(const IcsiInstance& inst) {
    validate(inst);
    if (inst.m != inst.n) throw InvalidInput("side-information graph view needs m = n");
    Subset seen = 0;
    for (std::size_t i = 0; i < inst.m; ++i) seen |= bit(inst.f[i]);
    if (std::popcount(seen) != static_cast<int>(inst.n)) throw InvalidInput("side-information graph view needs f bijective");
    SideInfoGraph g{inst.n, std::vector<Subset>(inst.n, 0)};
    for (std::size_t i = 0; i < inst.m; ++i) g.out[inst.f[i]] |= side_mask(inst, i);
    return g;
}

bool is_symmetric(const SideInfoGraph& g) {
    for (std::size_t u = 0; u < g.n; ++u)
        for (std::size_t v : members(g.out[u]))
            if ((g.out[v] & bit(u)) == 0) return false;
    return true;
}

SideInfoGraph complement(const SideInfoGraph& g) {
    const auto adj = symmetric_closure(g);
    SideInfoGraph c{g.n, std::vector<Subset>(g.n, 0)};
    for (std::size_t u = 0; u < g.n; ++u) c.out[u] = all_of(g.n) & ~adj[u] & ~bit(u);
    return c;
}

std::size_t graph_alpha(const SideInfoGraph& g, std::size_t max_n) {
    check_cap(g, max_n);
    const auto adj = symmetric_closure(g);
    MisSearch s{adj};
    s.run(all_of(g.n), 0);
    return s.best;
}

std::size_t graph_chromatic(const SideInfoGraph& g, std::size_t max_n) {
    check_cap(g, max_n);
    if (g.n == 0) return 0;
    const auto adj = symmetric_closure(g);
    Colouring c{adj, std::vector<std::size_t>(g.n), std::vector<int>(g.n, -1)};
    std::iota(c.order.begin(), c.order.end(), 0);
    std::stable_sort(c.order.begin(), c.order.end(),
                     [&](std::size_t a, std::size_t b) { return std::popcount(adj[a]) > std::popcount(adj[b]); });
    for (c.k = 1; c.k <= static_cast<int>(g.n); ++c.k) {
        std::fill(c.colour.begin(), c.colour.end(), -1);
        if (c.run(0, 0)) return static_cast<std::size_t>(c.k);
    }
    return g.n;
}

namespace naive {

std::size_t graph_alpha(const SideInfoGraph& g) {
    const auto adj = symmetric_closure(g);
    std::size_t best = 0;
    for (Subset s = 0; s < bit(g.n); ++s) {
        bool ok = true;
        for (std::size_t v : members(s))
            if (adj[v] & s) {
                ok = false;
                break;
            }
        if (ok) best = std::max(best, static_cast<std::size_t>(std::popcount(s)));
    }
    return best;
}

std::size_t graph_chromatic(const SideInfoGraph& g) {
    const auto adj = symmetric_closure(g);
    const Subset full = bit(g.n) - 1;
    std::vector<bool> independent(full + 1, true);
    for (Subset s = 1; s <= full; ++s)
        for (std::size_t v : members(s))
            if (adj[v] & s) {
                independent[s] = false;
                break;
            }
    std::vector<std::size_t> chi(full + 1, g.n + 1);
    chi[0] = 0;
    for (Subset s = 1; s <= full; ++s) {
        const Subset low = s & (~s + 1);
        const Subset rest = s & ~low;
        Subset sub = rest;
        while (true) {
            const Subset cls = sub | low;
            if (independent[cls]) chi[s] = std::min(chi[s], chi[s & ~cls] + 1);
            if (sub == 0) break;
            sub = (sub - 1) & rest;
        }
    }
    return chi[full];
}

}  // namespace naive

}  // namespace icsi
