#include "qcs/envelope.hpp"

namespace qcs {

std::string to_string(EnvelopeKind kind) {
    switch (kind) {
        case EnvelopeKind::rect: return "rect";
        case EnvelopeKind::gaussian: return "gaussian";
        case EnvelopeKind::blackman: return "blackman";
    }
    return "unknown";
}

std::optional<EnvelopeKind> envelope_kind_from_string(const std::string& name) {
    if (name == "rect") return EnvelopeKind::rect;
    if (name == "gaussian") return EnvelopeKind::gaussian;
    if (name == "blackman") return EnvelopeKind::blackman;
    return std::nullopt;
}

}  // namespace qcs
