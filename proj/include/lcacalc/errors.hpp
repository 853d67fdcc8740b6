#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lca {

// All engine errors carry a stable machine-readable code alongside the
// human-readable message. CLI maps any Error to exit code 2 (engine error)
// except ParseError-family codes, which map to 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

inline Error invalid_atom(const std::string& msg) { return {"InvalidAtom", msg}; }
inline Error dual_unsupported(const std::string& msg) { return {"DualUnsupported", msg}; }
inline Error not_a_member(const std::string& msg) { return {"NotAMember", msg}; }
inline Error resolution_unsupported(const std::string& msg) { return {"ResolutionUnsupported", msg}; }
inline Error rank_overflow(const std::string& msg) { return {"RankOverflow", msg}; }
inline Error size_bound(const std::string& msg) { return {"SizeBound", msg}; }
inline Error not_a_cocycle(const std::string& msg) { return {"NotACocycle", msg}; }
inline Error parse_error(const std::string& msg) { return {"ParseError", msg}; }
inline Error unknown_category(const std::string& msg) { return {"UnknownCategory", msg}; }
inline Error unknown_atom(const std::string& msg) { return {"UnknownAtom", msg}; }
inline Error incompatible_operands(const std::string& msg) { return {"IncompatibleOperands", msg}; }
inline Error inconsistent_sequence(const std::string& msg) { return {"InconsistentSequence", msg}; }
inline Error audit_error(const std::string& msg) { return {"AuditError", msg}; }
inline Error not_supported(const std::string& msg) { return {"NotSupported", msg}; }

} // namespace lca
