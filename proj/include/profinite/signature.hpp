#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace profinite {

  using SortId = std::size_t;
  using OpId   = std::size_t;

  struct OpSymbol {
    std::string         name;
    std::vector<SortId> domain;
    SortId              codomain = 0;

    std::size_t arity() const noexcept {
      return domain.size();
    }

    bool operator==(const OpSymbol&) const = default;
  };

  /// Finite many-sorted signature, optionally with one partial order per
  /// sort. Immutable once built; the constructor rejects duplicate names
  /// and dangling sort references with InputError.
  class Signature {
   public:
    Signature(std::vector<std::string> sorts,
              std::vector<OpSymbol>    ops,
              bool                     ordered = false);

    const std::vector<std::string>& sorts() const noexcept {
      return sorts_;
    }
    const std::vector<OpSymbol>& ops() const noexcept {
      return ops_;
    }
    const OpSymbol& op(OpId id) const {
      return ops_.at(id);
    }
    std::size_t sort_count() const noexcept {
      return sorts_.size();
    }
    std::size_t op_count() const noexcept {
      return ops_.size();
    }
    bool ordered() const noexcept {
      return ordered_;
    }

    std::optional<SortId> find_sort(const std::string& name) const;
    std::optional<OpId>   find_op(const std::string& name) const;

    /// The same signature with the ordered flag replaced.
    Signature with_order(bool ordered) const;

    bool operator==(const Signature&) const = default;

   private:
    std::vector<std::string> sorts_;
    std::vector<OpSymbol>    ops_;
    bool                     ordered_;
  };

  using SignaturePtr = std::shared_ptr<const Signature>;

  inline SignaturePtr make_signature(std::vector<std::string> sorts,
                                     std::vector<OpSymbol>    ops,
                                     bool                     ordered = false) {
    return std::make_shared<const Signature>(
        std::move(sorts), std::move(ops), ordered);
  }

}  // namespace profinite
