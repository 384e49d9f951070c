#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heffter {

/// Failure categories raised by the library. Verifiers never throw for an
/// invalid design; they collect violations in a DesignReport instead.
enum class Errc {
  invalid_argument,
  not_prime,
  not_primitive_polynomial,
  not_irreducible,
  not_primitive_element,
  division_by_zero,
  zero_argument,
  index_out_of_range,
  not_a_divisor,
  not_a_half_set,
  wrong_congruence,
  mismatched_half_sets,
  invalid_space,
  not_zero_sum,
  not_orthogonal,
  array_condition_violated,
  not_coprime,
  wrong_product,
  invalid_packing,
  not_constant_block_size,
  seed_invariant_violated,
  identity_violated,
  element_not_square,
  no_divisibility,
  wrong_form,
  not_simple,
  base_cycles_invalid,
  vertex_set_mismatch,
  not_an_sts,
  parse_error,
};

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::not_prime: return "NotPrime";
    case Errc::not_primitive_polynomial: return "NotPrimitivePolynomial";
    case Errc::not_irreducible: return "NotIrreducible";
    case Errc::not_primitive_element: return "NotPrimitiveElement";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::zero_argument: return "ZeroArgument";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::not_a_divisor: return "NotADivisor";
    case Errc::not_a_half_set: return "NotAHalfSet";
    case Errc::wrong_congruence: return "WrongCongruence";
    case Errc::mismatched_half_sets: return "MismatchedHalfSets";
    case Errc::invalid_space: return "InvalidSpace";
    case Errc::not_zero_sum: return "NotZeroSum";
    case Errc::not_orthogonal: return "NotOrthogonal";
    case Errc::array_condition_violated: return "ArrayConditionViolated";
    case Errc::not_coprime: return "NotCoprime";
    case Errc::wrong_product: return "WrongProduct";
    case Errc::invalid_packing: return "InvalidPacking";
    case Errc::not_constant_block_size: return "NotConstantBlockSize";
    case Errc::seed_invariant_violated: return "SeedInvariantViolated";
    case Errc::identity_violated: return "IdentityViolated";
    case Errc::element_not_square: return "ElementNotSquare";
    case Errc::no_divisibility: return "NoDivisibility";
    case Errc::wrong_form: return "WrongForm";
    case Errc::not_simple: return "NotSimple";
    case Errc::base_cycles_invalid: return "BaseCyclesInvalid";
    case Errc::vertex_set_mismatch: return "VertexSetMismatch";
    case Errc::not_an_sts: return "NotAnSTS";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace heffter
