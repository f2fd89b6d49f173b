// icsi: command-line front end for the error-correcting index coding library.
//
// Exit codes: 0 success / property holds, 1 property fails (witness printed),
// 2 usage or input error, 3 budget exceeded (result not certified).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "icsi/bounds.hpp"
#include "icsi/decoder.hpp"
#include "icsi/ecic.hpp"
#include "icsi/error.hpp"
#include "icsi/harness.hpp"
#include "icsi/io.hpp"
#include "icsi/static_ecic.hpp"

using json = nlohmann::ordered_json;
using namespace icsi;

namespace {

enum Exit { kOk = 0, kFails = 1, kUsage = 2, kBudget = 3, kInternal = 4 };

struct Globals {
    std::string format = "text";
    std::uint64_t budget = 0;  // 0: module default
    unsigned workers = 1;
};

Globals g;

json vec_json(std::span<const Elem> v) { return json(std::vector<Elem>(v.begin(), v.end())); }

json subset_json(Subset s) {
    json out = json::array();
    for (std::size_t j : members(s)) out.push_back(j + 1);
    return out;
}

json entry_json(const CodeTableEntry& e) {
    json j = {{"q", e.q}, {"k", e.k}, {"d", e.d}, {"provenance", to_string(e.provenance)}};
    if (e.N) j["N"] = *e.N;
    else j["bracket"] = {e.lower, e.upper};
    if (e.nodes) j["nodes"] = e.nodes;
    return j;
}

std::string entry_text(const std::optional<CodeTableEntry>& e) {
    if (!e) return "unavailable";
    if (e->N) return std::to_string(*e->N) + " (" + to_string(e->provenance) + ")";
    return "[" + std::to_string(e->lower) + ", " + std::to_string(e->upper) + "] (bracket)";
}

// Text mode prints "key  value" lines, matrices in the matrix text format.
void emit(const json& j) {
    if (g.format == "json") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::size_t width = 0;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!it.value().is_object()) width = std::max(width, it.key().size());
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (v.is_object() && v.contains("matrix_text")) {
            std::cout << it.key() << ":\n" << v["matrix_text"].get<std::string>();
            continue;
        }
        std::string s;
        if (v.is_string()) s = v.get<std::string>();
        else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
            for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + v[k].dump();
        } else s = v.dump();
        std::cout << it.key() << std::string(width + 2 - it.key().size(), ' ') << s << '\n';
    }
}

json matrix_json(const FqMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"q", m.field().q()}, {"entries", rows},
            {"matrix_text", format_matrix(m)}};
}

struct Loaded {
    IcsiInstance inst;
    FieldSpec field;
};

Loaded load(const std::string& instance_path, std::optional<unsigned> q_override) {
    auto f = load_instance(instance_path);
    Loaded l{f.inst, FieldSpec()};
    if (q_override) l.field = FieldSpec::of_order(*q_override);
    else if (f.field) l.field = *f.field;
    return l;
}

// Field comes from the instance file, else from the matrix header.
Loaded load_with_matrix(const std::string& instance_path, const std::string& matrix_path, FqMatrix& L) {
    auto f = load_instance(instance_path);
    const std::string text = read_file(matrix_path);
    L = parse_matrix(text, f.field);
    return {f.inst, L.field()};
}

std::uint64_t budget_or(std::uint64_t dflt) { return g.budget ? g.budget : dflt; }

void write_certificate(const std::string& out, const IcsiInstance& inst, const FqMatrix& L, std::size_t delta,
                       bool certified, const std::string& method) {
    if (out.empty()) return;
    write_file(out, format_matrix(L));
    write_file(out + ".json", format_envelope({instance_hash(inst), delta, L.cols(), certified, method}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Error-correcting index codes over finite fields"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--budget", g.budget, "Search node budget (0 = default)");
    app.add_option("--workers", g.workers, "Worker threads for searches")->check(CLI::PositiveNumber);

    std::string instance_path, matrix_path, received_path, out_path, outer_path, basis_path, method = "auto";
    std::size_t delta = 0, receiver = 0, trials = 1000, max_n = 16, attempts = 1000;
    std::optional<std::size_t> delta_opt, length_opt, weight_opt;
    std::optional<unsigned> q_opt;
    std::uint64_t seed = 1;
    bool exhaustive = false;

    auto* verify_cmd = app.add_subcommand("verify", "Check the (delta,H)-ECIC property");
    verify_cmd->add_option("--instance", instance_path)->required();
    verify_cmd->add_option("--matrix", matrix_path)->required();
    verify_cmd->add_option("--delta", delta)->required();
    verify_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "enumeration", "span"}));

    auto* alpha_cmd = app.add_subcommand("alpha", "Generalized independence number");
    alpha_cmd->add_option("--instance", instance_path)->required();
    alpha_cmd->add_option("--delta", delta_opt);

    auto* minrank_cmd = app.add_subcommand("minrank", "Exact min-rank and an optimal index code");
    minrank_cmd->add_option("--instance", instance_path)->required();
    minrank_cmd->add_option("--q", q_opt, "Field order (overrides the instance)");
    minrank_cmd->add_option("--delta", delta_opt);

    auto* bounds_cmd = app.add_subcommand("bounds", "Alpha, kappa, Singleton and random-coding bounds");
    bounds_cmd->add_option("--instance", instance_path)->required();
    bounds_cmd->add_option("--q", q_opt, "Field order (overrides the instance)");
    bounds_cmd->add_option("--delta", delta);

    auto* construct_cmd = app.add_subcommand("construct", "Build an ECIC");
    construct_cmd->require_subcommand(1);
    std::vector<CLI::App*> constructs;
    for (const char* kind : {"concat", "lift", "random", "search"}) {
        auto* c = construct_cmd->add_subcommand(kind);
        c->add_option("--instance", instance_path)->required();
        c->add_option("--delta", delta)->required();
        c->add_option("--q", q_opt, "Field order (overrides the instance)");
        c->add_option("--out", out_path, "Write the matrix here and its envelope to <out>.json");
        constructs.push_back(c);
    }
    constructs[0]->add_option("--outer", outer_path, "Outer generator (default: shortest known)");
    constructs[1]->add_option("--basis", basis_path, "n x k lifting matrix")->required();
    constructs[1]->add_option("--outer", outer_path, "Outer generator (default: shortest known)");
    constructs[2]->add_option("--seed", seed);
    constructs[2]->add_option("--length", length_opt, "Code length (default: random-coding bound)");
    constructs[2]->add_option("--attempts", attempts);
    constructs[3]->add_option("--max-n", max_n);
    constructs[3]->add_option("--start", length_opt, "First length to try (default 1)");

    auto* decode_cmd = app.add_subcommand("decode", "Syndrome-decode one received word");
    decode_cmd->add_option("--instance", instance_path)->required();
    decode_cmd->add_option("--matrix", matrix_path)->required();
    decode_cmd->add_option("--received", received_path)->required();
    decode_cmd->add_option("--receiver", receiver, "1-based receiver (default: from the received file)");
    decode_cmd->add_option("--delta", delta_opt, "Decoding radius (default: largest the code supports)");

    auto* simulate_cmd = app.add_subcommand("simulate", "Broadcast simulation campaign");
    simulate_cmd->add_option("--instance", instance_path)->required();
    simulate_cmd->add_option("--matrix", matrix_path)->required();
    simulate_cmd->add_option("--delta", delta)->required();
    simulate_cmd->add_option("--trials", trials);
    simulate_cmd->add_option("--seed", seed);
    simulate_cmd->add_option("--weight", weight_opt, "Force every error to this weight");
    simulate_cmd->add_flag("--exhaustive", exhaustive, "Enumerate all messages and errors");

    auto* static_cmd = app.add_subcommand("static", "Static codes for receivers missing <= rho messages");
    static_cmd->require_subcommand(1);
    std::size_t n = 0, rho = 1, t = 0, length = 0;
    unsigned q = 2;
    std::string order = "lex";
    auto* sverify = static_cmd->add_subcommand("verify");
    sverify->add_option("--matrix", matrix_path)->required();
    sverify->add_option("--rho", rho)->required();
    sverify->add_option("--delta", delta)->required();
    auto* sbounds = static_cmd->add_subcommand("bounds");
    sbounds->add_option("--n", n)->required();
    sbounds->add_option("--rho", rho)->required();
    sbounds->add_option("--delta", delta)->required();
    sbounds->add_option("--q", q);
    auto* sconstruct = static_cmd->add_subcommand("construct");
    sconstruct->add_option("--n", n)->required();
    sconstruct->add_option("--rho", rho)->required();
    sconstruct->add_option("--delta", delta)->required();
    sconstruct->add_option("--q", q);
    sconstruct->add_option("--length", length)->required();
    sconstruct->add_option("--order", order)->check(CLI::IsMember({"lex", "seeded"}));
    sconstruct->add_option("--seed", seed);
    sconstruct->add_option("--out", out_path);
    auto* sresil = static_cmd->add_subcommand("resilience");
    sresil->add_option("--matrix", matrix_path)->required();
    sresil->add_option("--rho", rho)->required();
    sresil->add_option("--t", t)->required();

    auto* nqkd_cmd = app.add_subcommand("nqkd", "Shortest linear code length N_q[k,d]");
    std::size_t k = 1, d = 1;
    std::string mode = "auto";
    nqkd_cmd->add_option("--q", q)->required();
    nqkd_cmd->add_option("--k", k)->required();
    nqkd_cmd->add_option("--d", d)->required();
    nqkd_cmd->add_option("--mode", mode)->check(CLI::IsMember({"table", "search", "auto"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    const NqOptions nq{NqMode::Auto, budget_or(kDefaultNodeBudget), g.workers};

    try {
        if (*verify_cmd) {
            FqMatrix L;
            auto l = load_with_matrix(instance_path, matrix_path, L);
            VerifyOptions opts;
            if (method == "enumeration") opts.method = VerifyMethod::Enumeration;
            if (method == "span") opts.method = VerifyMethod::SpanDistance;
            const auto r = verify(l.inst, L, delta, opts);
            json j = {{"ok", r.ok}, {"delta", delta}, {"min_weight", r.min_weight}, {"required", 2 * delta + 1},
                      {"method", to_string(r.method)}, {"cost", r.cost}};
            if (r.witness) {
                j["witness"] = vec_json(*r.witness);
                j["witness_image"] = vec_json(vec_mat(*r.witness, L));
            }
            emit(j);
            return r.ok ? kOk : kFails;
        }
        if (*alpha_cmd) {
            auto l = load(instance_path, std::nullopt);
            const auto a = generalized_independence_number(l.inst);
            emit({{"alpha", a.alpha}, {"witness", subset_json(a.witness)}});
            return kOk;
        }
        if (*minrank_cmd) {
            auto l = load(instance_path, q_opt);
            const auto w = min_rank(l.inst, l.field, budget_or(kDefaultMinRankBudget));
            emit({{"q", l.field.q()}, {"kappa", w.kappa}, {"certified", w.certified}, {"nodes", w.nodes},
                  {"V", matrix_json(w.V)}, {"L_opt", matrix_json(w.L_opt)}});
            return w.certified ? kOk : kBudget;
        }
        if (*bounds_cmd) {
            auto l = load(instance_path, q_opt);
            BoundOptions opts;
            opts.nq = nq;
            if (g.budget) opts.minrank_budget = g.budget;
            const auto r = bound_report(l.inst, l.field, delta, opts);
            auto opt = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json("unavailable"); };
            json j = {{"q", r.q}, {"delta", r.delta}, {"alpha", opt(r.alpha)}, {"kappa", opt(r.kappa)}};
            if (g.format == "json") {
                j["alpha_bound"] = r.alpha_bound ? entry_json(*r.alpha_bound) : json("unavailable");
                j["kappa_bound"] = r.kappa_bound ? entry_json(*r.kappa_bound) : json("unavailable");
            } else {
                j["alpha_bound"] = entry_text(r.alpha_bound);
                j["kappa_bound"] = entry_text(r.kappa_bound);
            }
            j["singleton"] = opt(r.singleton);
            j["random_N"] = r.random_N;
            j["mds_exact"] = r.mds_exact ? json(*r.mds_exact) : json("n/a");
            emit(j);
            return r.kappa_certified ? kOk : kBudget;
        }
        if (*construct_cmd) {
            auto l = load(instance_path, q_opt);
            const std::size_t dist = 2 * delta + 1;
            if (*constructs[0]) {
                const auto w = min_rank(l.inst, l.field, budget_or(kDefaultMinRankBudget));
                FqMatrix outer;
                if (!outer_path.empty()) outer = load_matrix(outer_path, l.field);
                else if (w.kappa == 0) outer = FqMatrix(l.field, 0, 0);
                else if (auto gen = shortest_code_generator(l.field, w.kappa, dist, nq)) outer = *gen;
                else throw BudgetExceeded("no outer code found for k = " + std::to_string(w.kappa));
                const auto L = construct_concat(l.inst, w, outer, delta);
                const auto r = verify(l.inst, L, delta);
                write_certificate(out_path, l.inst, L, delta, r.ok && w.certified, "concat");
                emit({{"method", "concat"}, {"kappa", w.kappa}, {"kappa_certified", w.certified}, {"N", L.cols()},
                      {"verified", r.ok}, {"L", matrix_json(L)}});
                return r.ok ? kOk : kFails;
            }
            if (*constructs[1]) {
                const auto B = load_matrix(basis_path, l.field);
                FqMatrix outer;
                if (!outer_path.empty()) outer = load_matrix(outer_path, l.field);
                else if (auto gen = shortest_code_generator(l.field, B.cols(), dist, nq)) outer = *gen;
                else throw BudgetExceeded("no outer code found for k = " + std::to_string(B.cols()));
                try {
                    const auto L = construct_lift(l.inst, B, outer, delta);
                    const auto r = verify(l.inst, L, delta);
                    write_certificate(out_path, l.inst, L, delta, r.ok, "lift");
                    emit({{"method", "lift"}, {"N", L.cols()}, {"verified", r.ok}, {"L", matrix_json(L)}});
                    return r.ok ? kOk : kFails;
                } catch (const LiftConditionError& e) {
                    emit({{"method", "lift"}, {"error", e.what()}, {"K", subset_json(e.violation.K)},
                          {"witness", vec_json(e.violation.z)}});
                    return kFails;
                }
            }
            if (*constructs[2]) {
                const std::size_t N = length_opt ? *length_opt : random_code_min_length(l.inst, l.field.q(), delta);
                const auto r = construct_random(l.inst, l.field, delta, N, seed, attempts);
                json j = {{"method", "random"}, {"N", N}, {"seed", seed}, {"attempts", r.attempts},
                          {"condition_holds", r.condition_holds}, {"condition_min_length", r.condition_min_length}};
                j["singleton"] = r.singleton ? json(*r.singleton) : json("unavailable");
                if (r.below_singleton) j["note"] = "N is below the Singleton-type bound kappa + 2 delta";
                j["found"] = r.L.has_value();
                if (r.L) {
                    j["L"] = matrix_json(*r.L);
                    write_certificate(out_path, l.inst, *r.L, delta, true, "random");
                }
                emit(j);
                return r.L ? kOk : kFails;
            }
            SearchOptions so;
            so.node_budget = budget_or(kDefaultNodeBudget);
            so.workers = g.workers;
            if (length_opt) so.start_length = *length_opt;
            const auto r = search_min_length(l.inst, l.field, delta, max_n, so);
            json j = {{"method", "search"}, {"completed", r.completed}, {"refuted_through", r.refuted_through},
                      {"nodes", r.nodes}, {"candidate_columns", r.candidate_columns}};
            if (r.N_opt) j["N_opt"] = *r.N_opt;
            if (r.exceeds_max) j["exceeds_max_n"] = max_n;
            if (r.certificate) {
                j["L"] = matrix_json(*r.certificate);
                write_certificate(out_path, l.inst, *r.certificate, delta, r.completed, "search");
            }
            emit(j);
            if (r.completed) return kOk;
            return r.exceeds_max ? kFails : kBudget;
        }
        if (*decode_cmd) {
            FqMatrix L;
            auto l = load_with_matrix(instance_path, matrix_path, L);
            auto w = load_received(received_path);
            if (w.q != L.field().q()) throw InvalidInput("received word field order does not match the matrix");
            if (receiver) w.receiver = receiver - 1;
            std::size_t dlt = 0;
            if (delta_opt) dlt = *delta_opt;
            else {
                const int md = max_delta(l.inst, L);
                if (md < 0) throw NotAnIndexCode("matrix is not an index code for this instance");
                dlt = static_cast<std::size_t>(md);
            }
            const Decoder dec(l.inst, L, dlt);
            const auto r = dec.decode(to_view(l.inst, w));
            emit({{"receiver", w.receiver + 1}, {"demand", l.inst.f[w.receiver] + 1}, {"x_hat", r.x_hat},
                  {"e_hat", vec_json(r.e_hat)}, {"syndrome", vec_json(r.syndrome)},
                  {"combiner", vec_json(r.combiner)}, {"weight_searched", r.weight_searched},
                  {"candidates", r.candidates}});
            return kOk;
        }
        if (*simulate_cmd) {
            FqMatrix L;
            auto l = load_with_matrix(instance_path, matrix_path, L);
            const Decoder dec(l.inst, L, delta);
            CampaignStats s;
            if (exhaustive) s = exhaustive_campaign(dec, delta, weight_opt);
            else s = trial_campaign(dec, {trials, seed, weight_opt, g.workers});
            emit({{"mode", exhaustive ? "exhaustive" : "random"}, {"trials", s.trials}, {"successes", s.successes},
                  {"receiver_failures", s.receiver_failures}, {"max_weight", s.max_weight}});
            return s.successes == s.trials ? kOk : kFails;
        }
        if (*static_cmd) {
            if (*sverify) {
                const auto L = load_matrix(matrix_path);
                const auto r = verify_rho_delta(L, rho, delta);
                json j = {{"ok", r.ok}, {"rho", rho}, {"delta", delta}, {"min_weight", r.min_weight}};
                if (r.witness) {
                    j["witness"] = vec_json(*r.witness);
                    j["witness_image"] = vec_json(vec_mat(*r.witness, L));
                }
                emit(j);
                return r.ok ? kOk : kFails;
            }
            if (*sbounds) {
                const auto r = static_bounds(n, rho, delta, q, nq);
                json j = {{"n", n}, {"rho", rho}, {"delta", delta}, {"q", q}};
                const auto& rs = r.rho_star;
                if (g.format == "json") {
                    json star = {{"provenance", to_string(rs.provenance)}};
                    if (rs.value) star["value"] = *rs.value;
                    else star["bracket"] = {rs.lower, rs.upper};
                    j["rho_star"] = star;
                    j["lower_alpha"] = r.lower_alpha ? entry_json(*r.lower_alpha) : json("unavailable");
                } else {
                    j["rho_star"] = rs.value ? std::to_string(*rs.value) + " (" + to_string(rs.provenance) + ")"
                                             : "[" + std::to_string(rs.lower) + ", " + std::to_string(rs.upper) + "]";
                    j["lower_alpha"] = entry_text(r.lower_alpha);
                }
                j["lower_singleton"] = r.lower_singleton ? json(*r.lower_singleton) : json("unavailable");
                j["upper"] = g.format == "json" && r.upper ? entry_json(*r.upper) : json(entry_text(r.upper));
                j["exact"] = r.exact ? json(*r.exact) : json("n/a");
                emit(j);
                return r.rho_star.value ? kOk : kBudget;
            }
            if (*sconstruct) {
                const auto field = FieldSpec::of_order(q);
                const auto r = gv_greedy(n, rho, delta, field, length,
                                         order == "lex" ? GreedyOrder::Lexicographic : GreedyOrder::Seeded, seed);
                json j = {{"rows", r.rows}, {"n", n}, {"N", length}, {"condition_holds", r.condition_holds}};
                if (r.L) {
                    j["L"] = matrix_json(*r.L);
                    if (!out_path.empty()) write_file(out_path, format_matrix(*r.L));
                } else {
                    j["partial"] = matrix_json(r.partial);
                }
                emit(j);
                return r.L ? kOk : kFails;
            }
            const auto L = load_matrix(matrix_path);
            const bool ok = weak_resilience_check(L, rho, t);
            emit({{"resilient", ok}, {"rho", rho}, {"t", t}});
            return ok ? kOk : kFails;
        }
        if (*nqkd_cmd) {
            NqOptions o = nq;
            o.mode = parse_nq_mode(mode);
            const auto e = nq_kd(q, k, d, o);
            json j = entry_json(e);
            if (e.generator) j["generator"] = matrix_json(*e.generator);
            emit(j);
            return e.N ? kOk : kBudget;
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const TooManyErrors& e) {
        std::cerr << "decoding failed: " << e.what() << '\n';
        return kFails;
    } catch (const NotAnIndexCode& e) {
        std::cerr << "not an index code: " << e.what() << '\n';
        return kFails;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
