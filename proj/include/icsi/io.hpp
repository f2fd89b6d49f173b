#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icsi/decoder.hpp"
#include "icsi/galois.hpp"
#include "icsi/instance.hpp"

namespace icsi {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Instance JSON: {"q","p","e","m","n","f":[1-based],"X":[[1-based...]...]}.
// The field block (q, p, e, optional "modulus") may be omitted.
struct InstanceFile {
    IcsiInstance inst;
    std::optional<FieldSpec> field;
};

InstanceFile parse_instance(const std::string& json_text);
InstanceFile load_instance(const std::string& path);
std::string format_instance(const IcsiInstance& inst, const std::optional<FieldSpec>& field = std::nullopt);

/// 16 hex digits of FNV-1a over the canonical 1-based description of the instance.
std::string instance_hash(const IcsiInstance& inst);

// Matrix text: "rows cols q" then the rows; '#' starts a comment line.
// When `field` is given its order must equal q; otherwise the default field
// of order q is used.
FqMatrix parse_matrix(const std::string& text, const std::optional<FieldSpec>& field = std::nullopt);
FqMatrix load_matrix(const std::string& path, const std::optional<FieldSpec>& field = std::nullopt);
std::string format_matrix(const FqMatrix& m);

// Received word: "i N q" (1-based receiver), the N symbols of y, then
// "index:value" pairs for the side information (1-based message indices).
struct ReceivedWord {
    std::size_t receiver = 0;  // 0-based
    unsigned q = 2;
    Vec y;
    std::vector<std::pair<std::size_t, Elem>> side;  // 0-based message index
};

ReceivedWord parse_received(const std::string& text);
ReceivedWord load_received(const std::string& path);
std::string format_received(const ReceivedWord& w);
/// Aligns the side-information pairs with X_i; throws InvalidInput if they do not cover X_i exactly.
ReceiverView to_view(const IcsiInstance& inst, const ReceivedWord& w);

struct CertificateEnvelope {
    std::string instance_hash;
    std::size_t delta = 0;
    std::size_t N = 0;
    bool certified = false;
    std::string method;
};
std::string format_envelope(const CertificateEnvelope& env);
CertificateEnvelope parse_envelope(const std::string& json_text);

}  // namespace icsi
