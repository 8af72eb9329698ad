#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "profinite/signature.hpp"

namespace profinite {

  /// Carrier elements are dense 0-based indices, one range per sort.
  using Element = std::uint32_t;

  /// Square boolean matrix used for per-sort orders and block preorders.
  class Relation {
   public:
    Relation() = default;
    explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

    static Relation identity(std::size_t n);

    std::size_t size() const noexcept {
      return n_;
    }
    bool operator()(std::size_t i, std::size_t j) const {
      return bits_[i * n_ + j] != 0;
    }
    void set(std::size_t i, std::size_t j, bool value = true) {
      bits_[i * n_ + j] = value ? 1 : 0;
    }

    bool is_reflexive() const;
    bool is_transitive() const;
    bool is_antisymmetric() const;
    void close_transitively();

    /// The relation with every pair reversed.
    Relation dual() const;

    bool operator==(const Relation&) const = default;
    auto operator<=>(const Relation&) const = default;

   private:
    std::size_t               n_ = 0;
    std::vector<std::uint8_t> bits_;
  };

  /// Finite Σ-algebra: per-sort carrier sizes, one total table per
  /// operation (row-major over the domain tuple, first argument most
  /// significant) and, when the signature is ordered, a partial order per
  /// sort. Copies share the immutable payload.
  ///
  /// The constructor only checks shapes; use validate_algebra to check
  /// totality, order axioms and monotonicity.
  class FiniteAlgebra {
   public:
    FiniteAlgebra(SignaturePtr                     signature,
                  std::vector<std::size_t>         carriers,
                  std::vector<std::vector<Element>> tables,
                  std::vector<Relation>            orders = {});

    const Signature& signature() const noexcept {
      return *data_->signature;
    }
    const SignaturePtr& signature_ptr() const noexcept {
      return data_->signature;
    }
    bool ordered() const noexcept {
      return data_->signature->ordered();
    }

    std::size_t sort_count() const noexcept {
      return data_->carriers.size();
    }
    std::size_t carrier(SortId s) const {
      return data_->carriers[s];
    }
    const std::vector<std::size_t>& carriers() const noexcept {
      return data_->carriers;
    }
    std::size_t total_size() const noexcept;

    const std::vector<Element>& table(OpId op) const {
      return data_->tables[op];
    }
    const std::vector<std::vector<Element>>& tables() const noexcept {
      return data_->tables;
    }

    /// Number of domain tuples of op.
    std::size_t cell_count(OpId op) const;
    std::size_t cell_index(OpId op, std::span<const Element> args) const;
    /// Inverse of cell_index.
    std::vector<Element> cell_args(OpId op, std::size_t cell) const;

    Element apply(OpId op, std::span<const Element> args) const {
      return data_->tables[op][cell_index(op, args)];
    }
    Element apply(OpId op, std::initializer_list<Element> args) const {
      return apply(op, std::span<const Element>(args.begin(), args.size()));
    }

    /// Order of sort s; only meaningful for ordered algebras.
    const Relation& order(SortId s) const {
      return data_->orders[s];
    }
    const std::vector<Relation>& orders() const noexcept {
      return data_->orders;
    }
    /// x ≤ y in sort s; equality when the signature is unordered.
    bool leq(SortId s, Element x, Element y) const {
      return ordered() ? data_->orders[s](x, y) : x == y;
    }

    bool same_signature(const FiniteAlgebra& other) const;

    bool operator==(const FiniteAlgebra& other) const;

   private:
    struct Data {
      SignaturePtr                      signature;
      std::vector<std::size_t>          carriers;
      std::vector<std::vector<Element>> tables;
      std::vector<Relation>             orders;
    };
    std::shared_ptr<const Data> data_;
  };

  /// Report-style validation; an empty result means the algebra is valid.
  /// Messages start with "table not total", "op not monotone", "order not
  /// reflexive", "order not transitive", "order not antisymmetric" or
  /// "empty carrier".
  /// Sorts that have at least one ground term; their carriers must be
  /// nonempty.
  std::vector<bool> inhabited_sorts(const Signature& sig);

  std::vector<std::string> validate_algebra(const FiniteAlgebra& a);

  /// Throws InputError unless both algebras share a signature.
  void require_same_signature(const FiniteAlgebra& a,
                              const FiniteAlgebra& b,
                              const char*          where);

  /// Element count of each sort as a short string, e.g. "3" or "2,4".
  std::string carrier_string(const FiniteAlgebra& a);

}  // namespace profinite
