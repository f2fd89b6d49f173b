#include "icsi/column_search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "icsi/error.hpp"

namespace icsi {

std::vector<Vec> projective_points(const FieldSpec& field, std::size_t dim) {
    const std::uint64_t total = pow_saturating(field.q(), dim);
    if (total > (1ull << 22)) throw BudgetExceeded("too many candidate columns for exhaustive search");
    std::vector<Vec> out;
    Vec v(dim, 0);
    for (std::uint64_t code = 1; code < total; ++code) {
        std::uint64_t c = code;
        for (std::size_t r = 0; r < dim; ++r) {
            v[r] = static_cast<Elem>(c % field.q());
            c /= field.q();
        }
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] == 1) out.push_back(v);
    }
    return out;
}

Vec normalize_projective(const FieldSpec& field, std::span<const Elem> v) {
    Vec out(v.begin(), v.end());
    auto it = std::find_if(out.begin(), out.end(), [](Elem x) { return x != 0; });
    if (it == out.end()) return out;
    const Elem inv = field.inv(*it);
    for (auto& x : out) x = field.mul(x, inv);
    return out;
}

std::vector<Vec> projective_reduce(const FieldSpec& field, const std::vector<Vec>& vs) {
    std::set<Vec> seen;
    std::vector<Vec> out;
    for (const auto& v : vs) {
        if (weight(v) == 0) continue;
        Vec n = normalize_projective(field, v);
        if (seen.insert(n).second) out.push_back(std::move(n));
    }
    return out;
}

namespace {

struct Shared {
    explicit Shared(const ColumnSearchSpec& sp) : spec(sp) {}
    const ColumnSearchSpec& spec;
    std::vector<std::vector<std::uint32_t>> hits;  // per candidate: tests it contributes to
    std::size_t candidates = 0;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> budget_hit{false};
    std::atomic<std::size_t> next_partition{0};
    std::atomic<std::size_t> best_partition{0};
    std::mutex mu;
    std::vector<std::uint8_t> completed;  // per partition
    std::vector<std::vector<std::size_t>> found;  // per partition solution
};

class Worker {
public:
    explicit Worker(Shared& s)
        : s_(s), counts_(s.spec.tests.size(), 0), chosen_(s.spec.length, 0) {}

    void run() {
        while (true) {
            const std::size_t p = s_.next_partition.fetch_add(1);
            if (p >= s_.candidates) break;
            if (p > s_.best_partition.load() || s_.budget_hit.load()) continue;
            std::fill(counts_.begin(), counts_.end(), 0);
            apply(p, +1);
            chosen_[0] = p;
            const bool ok = dfs(1, p);
            flush();
            if (s_.budget_hit.load()) continue;
            std::lock_guard lock(s_.mu);
            s_.completed[p] = 1;
            if (ok) {
                s_.found[p] = chosen_;
                std::size_t cur = s_.best_partition.load();
                while (p < cur && !s_.best_partition.compare_exchange_weak(cur, p)) {
                }
            }
        }
        flush();
    }

private:
    void apply(std::size_t c, int delta) {
        for (std::uint32_t t : s_.hits[c]) counts_[t] += delta;
    }

    void flush() {
        if (local_nodes_ == 0) return;
        const std::uint64_t total = s_.nodes.fetch_add(local_nodes_) + local_nodes_;
        local_nodes_ = 0;
        if (total > s_.spec.node_budget) s_.budget_hit.store(true);
    }

    bool dfs(std::size_t depth, std::size_t start) {
        if (++local_nodes_ >= 4096) {
            flush();
            if (s_.budget_hit.load(std::memory_order_relaxed)) return false;
        }
        const std::size_t remaining = s_.spec.length - depth;
        const int need = static_cast<int>(s_.spec.min_weight) - static_cast<int>(remaining);
        for (int c : counts_)
            if (c < need) return false;
        if (remaining == 0) return true;
        for (std::size_t c = start; c < s_.candidates; ++c) {
            apply(c, +1);
            chosen_[depth] = c;
            if (dfs(depth + 1, c)) return true;
            apply(c, -1);
            if (s_.budget_hit.load(std::memory_order_relaxed)) return false;
        }
        return false;
    }

    Shared& s_;
    std::vector<int> counts_;
    std::vector<std::size_t> chosen_;
    std::uint64_t local_nodes_ = 0;
};

}  // namespace

ColumnSearchResult search_columns(const ColumnSearchSpec& spec) {
    for (const auto& t : spec.tests)
        if (t.size() != spec.dim) throw InvalidInput("column search: test vector has wrong length");
    const auto points = projective_points(spec.field, spec.dim);
    ColumnSearchResult result;
    result.candidate_columns = points.size();

    auto build = [&](const std::vector<std::size_t>& cols) {
        FqMatrix m(spec.field, spec.dim, spec.length);
        for (std::size_t k = 0; k < cols.size(); ++k)
            for (std::size_t r = 0; r < spec.dim; ++r) m.set(r, k, points[cols[k]][r]);
        return m;
    };

    if (spec.length == 0 || points.empty()) {
        const bool ok = spec.tests.empty() || spec.min_weight == 0;
        result.status = ok ? ColumnSearchStatus::Found : ColumnSearchStatus::Refuted;
        if (ok) result.matrix = FqMatrix(spec.field, spec.dim, spec.length);
        result.nodes = 1;
        return result;
    }

    Shared s(spec);
    s.candidates = points.size();
    s.hits.resize(points.size());
    for (std::size_t c = 0; c < points.size(); ++c)
        for (std::size_t t = 0; t < spec.tests.size(); ++t)
            if (dot(spec.field, spec.tests[t], points[c]) != 0) s.hits[c].push_back(static_cast<std::uint32_t>(t));
    s.best_partition.store(points.size());
    s.completed.assign(points.size(), 0);
    s.found.resize(points.size());

    const unsigned workers = std::max(1u, spec.workers);
    if (workers == 1) {
        Worker(s).run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&s] { Worker(s).run(); });
        for (auto& t : pool) t.join();
    }

    result.nodes = s.nodes.load();
    const std::size_t best = s.best_partition.load();
    // Certified only if every partition before the winner (or all, when
    // refuting) finished.
    const std::size_t must_finish = best < points.size() ? best : points.size();
    bool complete = true;
    for (std::size_t p = 0; p < must_finish; ++p)
        if (!s.completed[p]) complete = false;
    if (best < points.size() && complete) {
        result.status = ColumnSearchStatus::Found;
        result.matrix = build(s.found[best]);
    } else if (!complete || s.budget_hit.load()) {
        result.status = ColumnSearchStatus::BudgetExceeded;
    } else {
        result.status = ColumnSearchStatus::Refuted;
    }
    return result;
}

}  // namespace icsi
