#include "icsi/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "icsi/error.hpp"

namespace icsi {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << text;
}

// --- instances -----------------------------------------------------------

namespace {

std::size_t one_based(const json& v, std::size_t limit, const char* what) {
    if (!v.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
    const auto x = v.get<long long>();
    if (x < 1 || static_cast<std::size_t>(x) > limit)
        throw InvalidInput(std::string(what) + " " + std::to_string(x) + " out of range 1.." + std::to_string(limit));
    return static_cast<std::size_t>(x - 1);
}

}  // namespace

InstanceFile parse_instance(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("instance JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidInput("instance JSON must be an object");
    for (const char* key : {"m", "n", "f", "X"})
        if (!j.contains(key)) throw InvalidInput(std::string("instance JSON lacks \"") + key + "\"");

    InstanceFile out;
    auto& inst = out.inst;
    inst.m = j.at("m").get<std::size_t>();
    inst.n = j.at("n").get<std::size_t>();
    if (inst.n == 0 || inst.n > kMaxMessages)
        throw InvalidInput("n must lie in 1.." + std::to_string(kMaxMessages));
    const auto& f = j.at("f");
    const auto& X = j.at("X");
    if (!f.is_array() || f.size() != inst.m) throw InvalidInput("\"f\" must list m demands");
    if (!X.is_array() || X.size() != inst.m) throw InvalidInput("\"X\" must list m side-information sets");
    for (std::size_t i = 0; i < inst.m; ++i) {
        inst.f.push_back(one_based(f[i], inst.n, "demand"));
        if (!X[i].is_array()) throw InvalidInput("each side-information set must be an array");
        std::vector<std::size_t> side;
        for (const auto& v : X[i]) side.push_back(one_based(v, inst.n, "side-information index"));
        std::sort(side.begin(), side.end());
        inst.X.push_back(std::move(side));
    }
    validate(inst);

    if (j.contains("q") || j.contains("p")) {
        std::optional<std::vector<unsigned>> modulus;
        if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<unsigned>>();
        if (j.contains("p")) {
            const unsigned p = j.at("p").get<unsigned>();
            const unsigned e = j.value("e", 1u);
            out.field = FieldSpec::make(p, e, modulus);
            if (j.contains("q") && j.at("q").get<unsigned>() != out.field->q())
                throw InvalidInput("\"q\" disagrees with p^e");
        } else {
            const auto base = FieldSpec::of_order(j.at("q").get<unsigned>());
            out.field = modulus ? FieldSpec::make(base.p(), base.e(), modulus) : base;
        }
    }
    return out;
}

InstanceFile load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string format_instance(const IcsiInstance& inst, const std::optional<FieldSpec>& field) {
    json j = json::object();
    if (field) {
        j["q"] = field->q();
        j["p"] = field->p();
        j["e"] = field->e();
    }
    j["m"] = inst.m;
    j["n"] = inst.n;
    json f = json::array(), X = json::array();
    for (std::size_t i = 0; i < inst.m; ++i) {
        f.push_back(inst.f[i] + 1);
        json side = json::array();
        for (std::size_t v : inst.X[i]) side.push_back(v + 1);
        X.push_back(side);
    }
    j["f"] = f;
    j["X"] = X;
    return j.dump() + "\n";
}

std::string instance_hash(const IcsiInstance& inst) {
    std::ostringstream canon;
    canon << inst.m << ' ' << inst.n;
    for (std::size_t i = 0; i < inst.m; ++i) {
        canon << ';' << inst.f[i] + 1 << ':';
        for (std::size_t v : inst.X[i]) canon << v + 1 << ',';
    }
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon.str()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

// --- matrices ----------------------------------------------------------------

namespace {

// Whitespace-separated tokens with '#' comment lines removed.
std::vector<std::string> tokens(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) out.push_back(tok);
    }
    return out;
}

std::uint64_t to_uint(const std::string& tok, const char* what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size() || tok.empty() || tok[0] == '-')
        throw InvalidInput(std::string("bad ") + what + " '" + tok + "'");
    return v;
}

}  // namespace

FqMatrix parse_matrix(const std::string& text, const std::optional<FieldSpec>& field) {
    const auto toks = tokens(text);
    if (toks.size() < 3) throw InvalidInput("matrix header 'rows cols q' missing");
    const std::size_t rows = to_uint(toks[0], "row count"), cols = to_uint(toks[1], "column count");
    const unsigned q = static_cast<unsigned>(to_uint(toks[2], "field order"));
    FieldSpec f = field ? *field : FieldSpec::of_order(q);
    if (f.q() != q) throw InvalidInput("matrix field order " + std::to_string(q) + " != " + std::to_string(f.q()));
    if (toks.size() != 3 + rows * cols)
        throw InvalidInput("matrix has " + std::to_string(toks.size() - 3) + " entries, expected " +
                           std::to_string(rows * cols));
    std::vector<Elem> entries;
    entries.reserve(rows * cols);
    for (std::size_t k = 3; k < toks.size(); ++k) entries.push_back(static_cast<Elem>(to_uint(toks[k], "entry")));
    return FqMatrix(f, rows, cols, std::move(entries));
}

FqMatrix load_matrix(const std::string& path, const std::optional<FieldSpec>& field) {
    return parse_matrix(read_file(path), field);
}

std::string format_matrix(const FqMatrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << ' ' << m.field().q() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m.at(r, c);
        out << '\n';
    }
    return out.str();
}

// --- received words ------------------------------------------------------------

ReceivedWord parse_received(const std::string& text) {
    const auto toks = tokens(text);
    if (toks.size() < 3) throw InvalidInput("received-word header 'i N q' missing");
    ReceivedWord w;
    const auto i = to_uint(toks[0], "receiver index");
    if (i < 1) throw InvalidInput("receiver index is 1-based");
    w.receiver = i - 1;
    const std::size_t N = to_uint(toks[1], "length");
    w.q = static_cast<unsigned>(to_uint(toks[2], "field order"));
    if (toks.size() < 3 + N) throw InvalidInput("received word shorter than N");
    for (std::size_t k = 0; k < N; ++k) {
        const auto v = to_uint(toks[3 + k], "symbol");
        if (v >= w.q) throw InvalidInput("symbol " + toks[3 + k] + " outside the field");
        w.y.push_back(static_cast<Elem>(v));
    }
    for (std::size_t k = 3 + N; k < toks.size(); ++k) {
        const auto colon = toks[k].find(':');
        if (colon == std::string::npos) throw InvalidInput("side information must be index:value, got '" + toks[k] + "'");
        const auto idx = to_uint(toks[k].substr(0, colon), "message index");
        const auto val = to_uint(toks[k].substr(colon + 1), "message value");
        if (idx < 1) throw InvalidInput("message indices are 1-based");
        if (val >= w.q) throw InvalidInput("side value outside the field");
        w.side.emplace_back(static_cast<std::size_t>(idx - 1), static_cast<Elem>(val));
    }
    return w;
}

ReceivedWord load_received(const std::string& path) { return parse_received(read_file(path)); }

std::string format_received(const ReceivedWord& w) {
    std::ostringstream out;
    out << w.receiver + 1 << ' ' << w.y.size() << ' ' << w.q << '\n';
    for (std::size_t k = 0; k < w.y.size(); ++k) out << (k ? " " : "") << w.y[k];
    out << '\n';
    for (std::size_t k = 0; k < w.side.size(); ++k)
        out << (k ? " " : "") << w.side[k].first + 1 << ':' << w.side[k].second;
    out << '\n';
    return out.str();
}

ReceiverView to_view(const IcsiInstance& inst, const ReceivedWord& w) {
    if (w.receiver >= inst.m) throw InvalidInput("receiver index out of range");
    const auto& xs = inst.X[w.receiver];
    ReceiverView v;
    v.i = w.receiver;
    v.y = w.y;
    v.side.assign(xs.size(), 0);
    std::vector<bool> seen(xs.size(), false);
    for (const auto& [idx, val] : w.side) {
        auto it = std::find(xs.begin(), xs.end(), idx);
        if (it == xs.end())
            throw InvalidInput("message " + std::to_string(idx + 1) + " is not side information of receiver " +
                               std::to_string(w.receiver + 1));
        const auto k = static_cast<std::size_t>(it - xs.begin());
        if (seen[k]) throw InvalidInput("message " + std::to_string(idx + 1) + " given twice");
        seen[k] = true;
        v.side[k] = val;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw InvalidInput("side information incomplete for receiver " + std::to_string(w.receiver + 1));
    return v;
}

// --- certificates ----------------------------------------------------------------

std::string format_envelope(const CertificateEnvelope& env) {
    json j = {{"instance_hash", env.instance_hash},
              {"delta", env.delta},
              {"N", env.N},
              {"certified", env.certified},
              {"method", env.method}};
    return j.dump() + "\n";
}

CertificateEnvelope parse_envelope(const std::string& json_text) {
    try {
        const json j = json::parse(json_text);
        CertificateEnvelope env;
        env.instance_hash = j.at("instance_hash").get<std::string>();
        env.delta = j.at("delta").get<std::size_t>();
        env.N = j.at("N").get<std::size_t>();
        env.certified = j.at("certified").get<bool>();
        env.method = j.at("method").get<std::string>();
        return env;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("certificate envelope: ") + e.what());
    }
}

}  // namespace icsi
