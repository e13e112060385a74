#ifndef INAM_ERROR_HPP_
#define INAM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace inam {

enum class ErrorCode {
  schema,
  non_group_table,
  non_associative,
  non_injective,
  not_closed,
  not_homomorphism,
  unknown_letter,
  cap_exceeded,
  mixed_contexts,
  partial_map,
  zero_mass,
  non_coset_labels,
  non_equivariant,
  not_in_subgroup,
  undecidable_membership,
  boundary_vertex,
  insufficient_interior,
  degenerate,
  trivial_group,
  unsupported,
  outside_ball,
  unknown_suite,
  io
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::schema: return "SchemaViolation";
    case ErrorCode::non_group_table: return "NonGroupTable";
    case ErrorCode::non_associative: return "NonAssociativeTable";
    case ErrorCode::non_injective: return "NonInjectiveMap";
    case ErrorCode::not_closed: return "SubsetNotClosed";
    case ErrorCode::not_homomorphism: return "NotHomomorphism";
    case ErrorCode::unknown_letter: return "UnknownLetter";
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::mixed_contexts: return "MixedContexts";
    case ErrorCode::partial_map: return "PartialMap";
    case ErrorCode::zero_mass: return "ZeroMass";
    case ErrorCode::non_coset_labels: return "NonCosetLabels";
    case ErrorCode::non_equivariant: return "NonEquivariant";
    case ErrorCode::not_in_subgroup: return "NotInSubgroup";
    case ErrorCode::undecidable_membership: return "UndecidableMembership";
    case ErrorCode::boundary_vertex: return "BoundaryVertex";
    case ErrorCode::insufficient_interior: return "InsufficientInterior";
    case ErrorCode::degenerate: return "Degenerate";
    case ErrorCode::trivial_group: return "TrivialGroup";
    case ErrorCode::unsupported: return "Unsupported";
    case ErrorCode::outside_ball: return "OutsideBall";
    case ErrorCode::unknown_suite: return "UnknownSuite";
    case ErrorCode::io: return "IOError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg, std::string where = {})
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg
                           + (where.empty() ? "" : " (at " + where + ")")),
        code_(code),
        where_(std::move(where)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::string where_;
};

}  // namespace inam

#endif  // INAM_ERROR_HPP_
