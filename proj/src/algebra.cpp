#include "profinite/algebra.hpp"

#include <algorithm>
#include <set>

#include "profinite/error.hpp"

namespace profinite {

  ////////////////////////////////////////////////////////////////////////
  // Signature
  ////////////////////////////////////////////////////////////////////////

  Signature::Signature(std::vector<std::string> sorts,
                       std::vector<OpSymbol>    ops,
                       bool                     ordered)
      : sorts_(std::move(sorts)), ops_(std::move(ops)), ordered_(ordered) {
    std::set<std::string> seen;
    for (auto const& s : sorts_) {
      if (!seen.insert(s).second) {
        throw InputError("duplicate sort name '" + s + "'");
      }
    }
    seen.clear();
    for (auto const& op : ops_) {
      if (!seen.insert(op.name).second) {
        throw InputError("duplicate op name '" + op.name + "'");
      }
      if (op.codomain >= sorts_.size()) {
        throw InputError("op '" + op.name + "' has unknown codomain sort");
      }
      for (SortId s : op.domain) {
        if (s >= sorts_.size()) {
          throw InputError("op '" + op.name + "' has unknown domain sort");
        }
      }
    }
  }

  std::optional<SortId> Signature::find_sort(const std::string& name) const {
    auto it = std::find(sorts_.begin(), sorts_.end(), name);
    if (it == sorts_.end()) {
      return std::nullopt;
    }
    return static_cast<SortId>(it - sorts_.begin());
  }

  std::optional<OpId> Signature::find_op(const std::string& name) const {
    for (OpId i = 0; i < ops_.size(); ++i) {
      if (ops_[i].name == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  Signature Signature::with_order(bool ordered) const {
    return Signature(sorts_, ops_, ordered);
  }

  ////////////////////////////////////////////////////////////////////////
  // Relation
  ////////////////////////////////////////////////////////////////////////

  Relation Relation::identity(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r.set(i, i);
    }
    return r;
  }

  bool Relation::is_reflexive() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(*this)(i, i)) {
        return false;
      }
    }
    return true;
  }

  bool Relation::is_transitive() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (!(*this)(i, j)) {
          continue;
        }
        for (std::size_t k = 0; k < n_; ++k) {
          if ((*this)(j, k) && !(*this)(i, k)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool Relation::is_antisymmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if ((*this)(i, j) && (*this)(j, i)) {
          return false;
        }
      }
    }
    return true;
  }

  void Relation::close_transitively() {
    // Warshall
    for (std::size_t k = 0; k < n_; ++k) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (!(*this)(i, k)) {
          continue;
        }
        for (std::size_t j = 0; j < n_; ++j) {
          if ((*this)(k, j)) {
            set(i, j);
          }
        }
      }
    }
  }

  Relation Relation::dual() const {
    Relation r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        r.set(j, i, (*this)(i, j));
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteAlgebra
  ////////////////////////////////////////////////////////////////////////

  FiniteAlgebra::FiniteAlgebra(SignaturePtr                      signature,
                               std::vector<std::size_t>          carriers,
                               std::vector<std::vector<Element>> tables,
                               std::vector<Relation>             orders) {
    if (!signature) {
      throw InputError("algebra without signature");
    }
    if (carriers.size() != signature->sort_count()) {
      throw InputError("carrier count does not match the sort count");
    }
    if (tables.size() != signature->op_count()) {
      throw InputError("table count does not match the op count");
    }
    if (signature->ordered()) {
      if (orders.empty()) {
        for (std::size_t n : carriers) {
          orders.push_back(Relation::identity(n));
        }
      }
      if (orders.size() != carriers.size()) {
        throw InputError("order count does not match the sort count");
      }
      for (std::size_t s = 0; s < carriers.size(); ++s) {
        if (orders[s].size() != carriers[s]) {
          throw InputError("order matrix size does not match the carrier");
        }
      }
    } else if (!orders.empty()) {
      throw InputError("orders given for an unordered signature");
    }
    data_ = std::make_shared<const Data>(Data{std::move(signature),
                                              std::move(carriers),
                                              std::move(tables),
                                              std::move(orders)});
  }

  std::size_t FiniteAlgebra::total_size() const noexcept {
    std::size_t n = 0;
    for (std::size_t c : data_->carriers) {
      n += c;
    }
    return n;
  }

  std::size_t FiniteAlgebra::cell_count(OpId op) const {
    std::size_t n = 1;
    for (SortId s : data_->signature->op(op).domain) {
      n *= data_->carriers[s];
    }
    return n;
  }

  std::size_t FiniteAlgebra::cell_index(OpId                     op,
                                        std::span<const Element> args) const {
    auto const& dom = data_->signature->op(op).domain;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      idx = idx * data_->carriers[dom[i]] + args[i];
    }
    return idx;
  }

  std::vector<Element> FiniteAlgebra::cell_args(OpId op, std::size_t cell) const {
    auto const&          dom = data_->signature->op(op).domain;
    std::vector<Element> args(dom.size());
    for (std::size_t i = dom.size(); i-- > 0;) {
      std::size_t n = data_->carriers[dom[i]];
      args[i]       = static_cast<Element>(cell % n);
      cell /= n;
    }
    return args;
  }

  bool FiniteAlgebra::same_signature(const FiniteAlgebra& other) const {
    return data_->signature == other.data_->signature
           || *data_->signature == *other.data_->signature;
  }

  bool FiniteAlgebra::operator==(const FiniteAlgebra& other) const {
    if (data_ == other.data_) {
      return true;
    }
    return same_signature(other) && data_->carriers == other.data_->carriers
           && data_->tables == other.data_->tables
           && data_->orders == other.data_->orders;
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  std::vector<bool> inhabited_sorts(const Signature& sig) {
    std::vector<bool> inhabited(sig.sort_count(), false);
    bool              changed = true;
    while (changed) {
      changed = false;
      for (auto const& op : sig.ops()) {
        if (inhabited[op.codomain]) {
          continue;
        }
        if (std::all_of(op.domain.begin(), op.domain.end(),
                        [&](SortId s) { return inhabited[s]; })) {
          inhabited[op.codomain] = true;
          changed                = true;
        }
      }
    }
    return inhabited;
  }

  std::vector<std::string> validate_algebra(const FiniteAlgebra& a) {
    std::vector<std::string> report;
    auto const&              sig = a.signature();

    auto inhabited = inhabited_sorts(sig);
    for (SortId s = 0; s < sig.sort_count(); ++s) {
      if (inhabited[s] && a.carrier(s) == 0) {
        report.push_back("empty carrier: sort '" + sig.sorts()[s]
                         + "' is reachable from a constant");
      }
    }

    bool tables_ok = true;
    for (OpId op = 0; op < sig.op_count(); ++op) {
      auto const& t   = a.table(op);
      std::size_t cod = a.carrier(sig.op(op).codomain);
      if (t.size() != a.cell_count(op)) {
        report.push_back("table not total: op '" + sig.op(op).name + "' has "
                         + std::to_string(t.size()) + " entries, expected "
                         + std::to_string(a.cell_count(op)));
        tables_ok = false;
        continue;
      }
      for (std::size_t c = 0; c < t.size(); ++c) {
        if (t[c] >= cod) {
          report.push_back("table not total: op '" + sig.op(op).name
                           + "' sends cell " + std::to_string(c)
                           + " outside the carrier");
          tables_ok = false;
          break;
        }
      }
    }

    if (!a.ordered()) {
      return report;
    }
    bool orders_ok = true;
    for (SortId s = 0; s < sig.sort_count(); ++s) {
      auto const& r    = a.order(s);
      auto const& name = sig.sorts()[s];
      if (!r.is_reflexive()) {
        report.push_back("order not reflexive on sort '" + name + "'");
        orders_ok = false;
      }
      if (!r.is_transitive()) {
        report.push_back("order not transitive on sort '" + name + "'");
        orders_ok = false;
      }
      if (!r.is_antisymmetric()) {
        report.push_back("order not antisymmetric on sort '" + name + "'");
        orders_ok = false;
      }
    }
    if (!tables_ok || !orders_ok) {
      return report;
    }
    // Monotone in every argument: changing one argument upward moves the
    // result upward.
    for (OpId op = 0; op < sig.op_count(); ++op) {
      auto const& sym  = sig.op(op);
      bool        mono = true;
      for (std::size_t c = 0; c < a.cell_count(op) && mono; ++c) {
        auto args = a.cell_args(op, c);
        for (std::size_t i = 0; i < args.size() && mono; ++i) {
          SortId si   = sym.domain[i];
          auto   orig = args[i];
          for (Element y = 0; y < a.carrier(si); ++y) {
            if (y == orig || !a.leq(si, orig, y)) {
              continue;
            }
            args[i] = y;
            if (!a.leq(sym.codomain, a.table(op)[c], a.apply(op, args))) {
              mono = false;
            }
          }
          args[i] = orig;
        }
      }
      if (!mono) {
        report.push_back("op not monotone: '" + sym.name + "'");
      }
    }
    return report;
  }

  void require_same_signature(const FiniteAlgebra& a,
                              const FiniteAlgebra& b,
                              const char*          where) {
    if (!a.same_signature(b)) {
      throw InputError(std::string(where) + ": signature mismatch");
    }
  }

  std::string carrier_string(const FiniteAlgebra& a) {
    std::string out;
    for (std::size_t s = 0; s < a.sort_count(); ++s) {
      if (s > 0) {
        out += ',';
      }
      out += std::to_string(a.carrier(s));
    }
    return out;
  }

}  // namespace profinite
