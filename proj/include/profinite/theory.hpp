#pragma once

#include <optional>
#include <string>
#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/term.hpp"

namespace profinite {

  /// Where the ω-power lives: a sort with an associative binary operation
  /// (and optionally its unit).
  struct OmegaStructure {
    SortId              sort;
    OpId                mul;
    std::optional<OpId> unit;
  };

  /// A signature together with the equational laws its algebras must
  /// satisfy, the ω-eligible sort and the infix spelling of one binary
  /// operation.
  class Theory {
   public:
    Theory(std::string                   name,
           SignaturePtr                  signature,
           std::vector<OmegaEquation>    laws   = {},
           std::optional<OmegaStructure> omega  = std::nullopt,
           std::optional<OpId>           infix  = std::nullopt,
           std::string                   infix_symbol = "*");

    /// Monoids: sort "M", ops "mul" (infix "*") and the constant "1";
    /// associativity and both unit laws; ω on M.
    static Theory monoid(bool ordered = false);

    /// Bare signature: no laws, no ω.
    static Theory plain(SignaturePtr signature);

    const std::string& name() const noexcept {
      return name_;
    }
    const Signature& signature() const noexcept {
      return *signature_;
    }
    const SignaturePtr& signature_ptr() const noexcept {
      return signature_;
    }
    const std::vector<OmegaEquation>& laws() const noexcept {
      return laws_;
    }
    const std::optional<OmegaStructure>& omega() const noexcept {
      return omega_;
    }
    const std::optional<OpId>& infix() const noexcept {
      return infix_;
    }
    const std::string& infix_symbol() const noexcept {
      return infix_symbol_;
    }

    /// True when a's signature is this theory's signature.
    bool admits(const FiniteAlgebra& a) const;

    /// The same theory over an ordered (or unordered) signature.
    Theory with_order(bool ordered) const;

   private:
    std::string                   name_;
    SignaturePtr                  signature_;
    std::vector<OmegaEquation>    laws_;
    std::optional<OmegaStructure> omega_;
    std::optional<OpId>           infix_;
    std::string                   infix_symbol_;
  };

  /// validate_algebra plus one "law violated: ..." entry per failing law.
  std::vector<std::string> validate_algebra(const FiniteAlgebra& a,
                                            const Theory&        theory);

  /// Default variable names: x, y, z, u, v, w, then x6, x7, ...
  std::string default_variable_name(std::size_t i);

  /// n variables of the given sort with default names.
  VarContext default_context(std::size_t n, SortId sort = 0);

  std::string to_string(const Term& t, const Theory& theory, const VarContext& vars);
  std::string to_string(const OmegaEquation& eq, const Theory& theory);

}  // namespace profinite
