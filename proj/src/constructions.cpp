#include "profinite/constructions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

namespace profinite {

  namespace {

    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
          parent_[x] = parent_[parent_[x]];
          x          = parent_[x];
        }
        return x;
      }
      bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) {
          return false;
        }
        if (y < x) {
          std::swap(x, y);
        }
        parent_[y] = x;
        return true;
      }

     private:
      std::vector<std::size_t> parent_;
    };

    // Relabel so blocks are numbered by first occurrence.
    std::size_t normalize(std::vector<Element>& labels) {
      std::size_t bound = labels.empty()
                              ? 0
                              : *std::max_element(labels.begin(), labels.end()) + 1;
      std::vector<Element> map(bound, 0);
      std::vector<bool>    seen(bound, false);
      Element              next = 0;
      for (auto& l : labels) {
        if (!seen[l]) {
          seen[l] = true;
          map[l]  = next++;
        }
        l = map[l];
      }
      return next;
    }

    Relation lifted_order(const FiniteAlgebra&        a,
                          SortId                      s,
                          const std::vector<Element>& blocks,
                          std::size_t                 count) {
      Relation r = Relation::identity(count);
      for (Element x = 0; x < a.carrier(s); ++x) {
        for (Element y = 0; y < a.carrier(s); ++y) {
          if (a.leq(s, x, y)) {
            r.set(blocks[x], blocks[y]);
          }
        }
      }
      r.close_transitively();
      return r;
    }

    std::vector<Element> representatives(const std::vector<Element>& blocks,
                                         std::size_t                 count) {
      std::vector<Element> rep(count, 0);
      std::vector<bool>    seen(count, false);
      for (Element x = 0; x < blocks.size(); ++x) {
        if (!seen[blocks[x]]) {
          seen[blocks[x]] = true;
          rep[blocks[x]]  = x;
        }
      }
      return rep;
    }

    bool partition_compatible(const FiniteAlgebra&                      a,
                              const std::vector<std::vector<Element>>& blocks) {
      auto const& sig = a.signature();
      for (OpId op = 0; op < sig.op_count(); ++op) {
        auto const& sym = sig.op(op);
        for (std::size_t c = 0; c < a.cell_count(op); ++c) {
          auto    args = a.cell_args(op, c);
          Element r    = blocks[sym.codomain][a.table(op)[c]];
          for (std::size_t i = 0; i < args.size(); ++i) {
            auto   orig = args[i];
            SortId si   = sym.domain[i];
            for (Element y = orig + 1; y < a.carrier(si); ++y) {
              if (blocks[si][y] != blocks[si][orig]) {
                continue;
              }
              args[i] = y;
              if (blocks[sym.codomain][a.apply(op, args)] != r) {
                return false;
              }
            }
            args[i] = orig;
          }
        }
      }
      return true;
    }

    bool monotone_on_blocks(const FiniteAlgebra&                      a,
                            const std::vector<std::vector<Element>>& blocks,
                            const std::vector<Relation>&              order) {
      auto const& sig = a.signature();
      for (OpId op = 0; op < sig.op_count(); ++op) {
        auto const& sym = sig.op(op);
        for (std::size_t c = 0; c < a.cell_count(op); ++c) {
          auto    args = a.cell_args(op, c);
          Element r    = blocks[sym.codomain][a.table(op)[c]];
          for (std::size_t i = 0; i < args.size(); ++i) {
            auto   orig = args[i];
            SortId si   = sym.domain[i];
            for (Element y = 0; y < a.carrier(si); ++y) {
              if (!order[si](blocks[si][orig], blocks[si][y])) {
                continue;
              }
              args[i] = y;
              if (!order[sym.codomain](r, blocks[sym.codomain][a.apply(op, args)])) {
                return false;
              }
            }
            args[i] = orig;
          }
        }
      }
      return true;
    }

    std::size_t element_offset(const FiniteAlgebra& a, SortId s) {
      std::size_t off = 0;
      for (SortId t = 0; t < s; ++t) {
        off += a.carrier(t);
      }
      return off;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Products and subalgebras
  ////////////////////////////////////////////////////////////////////////

  Product product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    require_same_signature(a, b, "product");
    auto const&              sig = a.signature();
    std::vector<std::size_t> carriers(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      carriers[s] = a.carrier(s) * b.carrier(s);
    }
    std::vector<std::vector<Element>> tables(sig.op_count());
    for (OpId op = 0; op < sig.op_count(); ++op) {
      auto const& sym   = sig.op(op);
      std::size_t cells = 1;
      for (SortId s : sym.domain) {
        cells *= carriers[s];
      }
      auto&                t = tables[op];
      std::vector<Element> xa(sym.arity()), xb(sym.arity());
      t.resize(cells);
      std::size_t mb = b.carrier(sym.codomain);
      for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rest = c;
        for (std::size_t i = sym.arity(); i-- > 0;) {
          std::size_t n  = carriers[sym.domain[i]];
          std::size_t el = rest % n;
          rest /= n;
          xa[i] = static_cast<Element>(el / b.carrier(sym.domain[i]));
          xb[i] = static_cast<Element>(el % b.carrier(sym.domain[i]));
        }
        t[c] = static_cast<Element>(a.apply(op, xa) * mb + b.apply(op, xb));
      }
    }
    std::vector<Relation> orders;
    if (sig.ordered()) {
      for (SortId s = 0; s < a.sort_count(); ++s) {
        Relation    r(carriers[s]);
        std::size_t m = b.carrier(s);
        for (std::size_t p = 0; p < carriers[s]; ++p) {
          for (std::size_t q = 0; q < carriers[s]; ++q) {
            r.set(p, q,
                  a.leq(s, static_cast<Element>(p / m), static_cast<Element>(q / m))
                      && b.leq(s, static_cast<Element>(p % m),
                               static_cast<Element>(q % m)));
          }
        }
        orders.push_back(std::move(r));
      }
    }
    FiniteAlgebra prod(a.signature_ptr(), carriers, std::move(tables),
                       std::move(orders));
    SortedMap     pa(a.sort_count()), pb(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      std::size_t m = b.carrier(s);
      for (std::size_t p = 0; p < carriers[s]; ++p) {
        pa[s].push_back(static_cast<Element>(p / m));
        pb[s].push_back(static_cast<Element>(p % m));
      }
    }
    return Product{prod, Homomorphism(prod, a, std::move(pa)),
                   Homomorphism(prod, b, std::move(pb))};
  }

  Subalgebra subalgebra_on(const FiniteAlgebra& a, const SortedSet& closed) {
    auto const&                        sig = a.signature();
    std::vector<std::vector<Element>>  index(a.sort_count());
    std::vector<std::size_t>           carriers(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      index[s].assign(a.carrier(s), static_cast<Element>(-1));
      for (std::size_t i = 0; i < closed[s].size(); ++i) {
        index[s][closed[s][i]] = static_cast<Element>(i);
      }
      carriers[s] = closed[s].size();
    }
    std::vector<std::vector<Element>> tables(sig.op_count());
    for (OpId op = 0; op < sig.op_count(); ++op) {
      auto const& sym   = sig.op(op);
      std::size_t cells = 1;
      for (SortId s : sym.domain) {
        cells *= carriers[s];
      }
      std::vector<Element> args(sym.arity());
      for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rest = c;
        for (std::size_t i = sym.arity(); i-- > 0;) {
          std::size_t n = carriers[sym.domain[i]];
          args[i]       = closed[sym.domain[i]][rest % n];
          rest /= n;
        }
        Element r = index[sym.codomain][a.apply(op, args)];
        if (r == static_cast<Element>(-1)) {
          throw InputError("subalgebra: subset is not closed under '" + sym.name
                           + "'");
        }
        tables[op].push_back(r);
      }
    }
    std::vector<Relation> orders;
    if (sig.ordered()) {
      for (SortId s = 0; s < a.sort_count(); ++s) {
        Relation r(carriers[s]);
        for (std::size_t i = 0; i < carriers[s]; ++i) {
          for (std::size_t j = 0; j < carriers[s]; ++j) {
            r.set(i, j, a.leq(s, closed[s][i], closed[s][j]));
          }
        }
        orders.push_back(std::move(r));
      }
    }
    FiniteAlgebra sub(a.signature_ptr(), carriers, std::move(tables),
                      std::move(orders));
    return Subalgebra{sub, Homomorphism(sub, a, closed)};
  }

  namespace {
    // Closure of a membership mask under all operations.
    void close_mask(const FiniteAlgebra& a, std::vector<std::vector<bool>>& in) {
      auto const& sig     = a.signature();
      bool        changed = true;
      while (changed) {
        changed = false;
        for (OpId op = 0; op < sig.op_count(); ++op) {
          auto const& sym = sig.op(op);
          for (std::size_t c = 0; c < a.cell_count(op); ++c) {
            Element r = a.table(op)[c];
            if (in[sym.codomain][r]) {
              continue;
            }
            auto args = a.cell_args(op, c);
            bool all  = true;
            for (std::size_t i = 0; i < args.size() && all; ++i) {
              all = in[sym.domain[i]][args[i]];
            }
            if (all) {
              in[sym.codomain][r] = true;
              changed             = true;
            }
          }
        }
      }
    }

    SortedSet mask_to_set(const std::vector<std::vector<bool>>& in) {
      SortedSet out(in.size());
      for (SortId s = 0; s < in.size(); ++s) {
        for (Element x = 0; x < in[s].size(); ++x) {
          if (in[s][x]) {
            out[s].push_back(x);
          }
        }
      }
      return out;
    }
  }  // namespace

  Subalgebra subalgebra_generated(const FiniteAlgebra& a, const SortedSet& seed) {
    std::vector<std::vector<bool>> in(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      in[s].assign(a.carrier(s), false);
      if (s < seed.size()) {
        for (Element x : seed[s]) {
          if (x >= a.carrier(s)) {
            throw InputError("subalgebra_generated: seed element outside the carrier");
          }
          in[s][x] = true;
        }
      }
    }
    close_mask(a, in);
    return subalgebra_on(a, mask_to_set(in));
  }

  std::vector<SortedSet> all_closed_subsets(const FiniteAlgebra& a,
                                            std::uint64_t        budget) {
    std::vector<std::vector<bool>> start(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      start[s].assign(a.carrier(s), false);
    }
    close_mask(a, start);
    std::set<std::vector<std::vector<bool>>> seen{start};
    std::vector<std::vector<std::vector<bool>>> frontier{start};
    while (!frontier.empty()) {
      std::vector<std::vector<std::vector<bool>>> next;
      for (auto const& cur : frontier) {
        for (SortId s = 0; s < a.sort_count(); ++s) {
          for (Element x = 0; x < a.carrier(s); ++x) {
            if (cur[s][x]) {
              continue;
            }
            auto grown  = cur;
            grown[s][x] = true;
            close_mask(a, grown);
            if (seen.insert(grown).second) {
              if (seen.size() > budget) {
                throw BudgetExceeded("closed subset enumeration exceeded budget");
              }
              next.push_back(std::move(grown));
            }
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<SortedSet> out;
    out.reserve(seen.size());
    for (auto const& m : seen) {
      out.push_back(mask_to_set(m));
    }
    std::sort(out.begin(), out.end(), [](const SortedSet& x, const SortedSet& y) {
      std::size_t nx = 0, ny = 0;
      for (auto const& v : x) {
        nx += v.size();
      }
      for (auto const& v : y) {
        ny += v.size();
      }
      return std::tie(nx, x) < std::tie(ny, y);
    });
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruences
  ////////////////////////////////////////////////////////////////////////

  Congruence::Congruence(FiniteAlgebra                     algebra,
                         std::vector<std::vector<Element>> blocks,
                         std::vector<Relation>             block_order)
      : algebra_(std::move(algebra)),
        blocks_(std::move(blocks)),
        block_order_(std::move(block_order)) {
    if (blocks_.size() != algebra_.sort_count()) {
      throw InputError("congruence: wrong number of sorts");
    }
    counts_.resize(blocks_.size());
    for (SortId s = 0; s < blocks_.size(); ++s) {
      if (blocks_[s].size() != algebra_.carrier(s)) {
        throw InputError("congruence: partition does not cover the carrier");
      }
      counts_[s] = normalize(blocks_[s]);
    }
    if (algebra_.ordered()) {
      if (block_order_.empty()) {
        for (SortId s = 0; s < blocks_.size(); ++s) {
          block_order_.push_back(lifted_order(algebra_, s, blocks_[s], counts_[s]));
        }
      } else if (block_order_.size() != blocks_.size()) {
        throw InputError("congruence: wrong number of block orders");
      }
    } else {
      block_order_.clear();
    }
  }

  Congruence Congruence::identity(const FiniteAlgebra& a) {
    std::vector<std::vector<Element>> blocks(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      for (Element x = 0; x < a.carrier(s); ++x) {
        blocks[s].push_back(x);
      }
    }
    return Congruence(a, std::move(blocks));
  }

  Congruence Congruence::full(const FiniteAlgebra& a) {
    std::vector<std::vector<Element>> blocks(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      blocks[s].assign(a.carrier(s), 0);
    }
    return Congruence(a, std::move(blocks));
  }

  bool Congruence::is_compatible() const {
    if (!partition_compatible(algebra_, blocks_)) {
      return false;
    }
    if (!algebra_.ordered()) {
      return true;
    }
    for (SortId s = 0; s < blocks_.size(); ++s) {
      auto const& r = block_order_[s];
      if (r.size() != counts_[s] || !r.is_reflexive() || !r.is_transitive()
          || !r.is_antisymmetric()) {
        return false;
      }
      for (Element x = 0; x < algebra_.carrier(s); ++x) {
        for (Element y = 0; y < algebra_.carrier(s); ++y) {
          if (algebra_.leq(s, x, y) && !r(blocks_[s][x], blocks_[s][y])) {
            return false;
          }
        }
      }
    }
    return monotone_on_blocks(algebra_, blocks_, block_order_);
  }

  bool Congruence::refines(const Congruence& other) const {
    for (SortId s = 0; s < blocks_.size(); ++s) {
      for (Element x = 0; x < blocks_[s].size(); ++x) {
        for (Element y = x + 1; y < blocks_[s].size(); ++y) {
          if (related(s, x, y) && !other.related(s, x, y)) {
            return false;
          }
        }
      }
      if (!block_order_.empty()) {
        for (Element x = 0; x < blocks_[s].size(); ++x) {
          for (Element y = 0; y < blocks_[s].size(); ++y) {
            if (block_order_[s](blocks_[s][x], blocks_[s][y])
                && !other.block_order_[s](other.blocks_[s][x], other.blocks_[s][y])) {
              return false;
            }
          }
        }
      }
    }
    return true;
  }

  Congruence congruence_generated(const FiniteAlgebra&            a,
                                  const std::vector<ElementPair>& pairs) {
    auto const& sig = a.signature();
    std::vector<std::size_t> offset(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      offset[s] = element_offset(a, s);
    }
    UnionFind                uf(a.total_size());
    std::vector<ElementPair> queue;
    for (auto const& p : pairs) {
      if (p.sort >= a.sort_count() || p.x >= a.carrier(p.sort)
          || p.y >= a.carrier(p.sort)) {
        throw InputError("congruence_generated: pair outside the carrier");
      }
      if (uf.unite(offset[p.sort] + p.x, offset[p.sort] + p.y)) {
        queue.push_back(p);
      }
    }
    // Each merged pair (x, y) must be respected by every one-hole context
    // f(..., _, ...).
    while (!queue.empty()) {
      ElementPair p = queue.back();
      queue.pop_back();
      for (OpId op = 0; op < sig.op_count(); ++op) {
        auto const& sym = sig.op(op);
        for (std::size_t i = 0; i < sym.arity(); ++i) {
          if (sym.domain[i] != p.sort) {
            continue;
          }
          for (std::size_t c = 0; c < a.cell_count(op); ++c) {
            auto args = a.cell_args(op, c);
            if (args[i] != p.x) {
              continue;
            }
            Element r1 = a.table(op)[c];
            args[i]    = p.y;
            Element r2 = a.apply(op, args);
            SortId  cs = sym.codomain;
            if (uf.unite(offset[cs] + r1, offset[cs] + r2)) {
              queue.push_back(ElementPair{cs, r1, r2});
            }
          }
        }
      }
    }
    std::vector<std::vector<Element>> blocks(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      for (Element x = 0; x < a.carrier(s); ++x) {
        blocks[s].push_back(static_cast<Element>(uf.find(offset[s] + x)));
      }
    }
    return Congruence(a, std::move(blocks));
  }

  Quotient quotient(const FiniteAlgebra& a, const Congruence& c) {
    if (!(c.algebra() == a)) {
      throw InputError("quotient: congruence belongs to another algebra");
    }
    if (!c.is_compatible()) {
      throw InputError(a.ordered()
                           ? "quotient: invalid congruence (incompatible or "
                             "block order not antisymmetric)"
                           : "quotient: invalid congruence (incompatible)");
    }
    auto const&              sig = a.signature();
    std::vector<std::size_t> carriers(a.sort_count());
    std::vector<std::vector<Element>> reps(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      carriers[s] = c.block_count(s);
      reps[s]     = representatives(c.blocks()[s], carriers[s]);
    }
    std::vector<std::vector<Element>> tables(sig.op_count());
    for (OpId op = 0; op < sig.op_count(); ++op) {
      auto const& sym   = sig.op(op);
      std::size_t cells = 1;
      for (SortId s : sym.domain) {
        cells *= carriers[s];
      }
      std::vector<Element> args(sym.arity());
      for (std::size_t cell = 0; cell < cells; ++cell) {
        std::size_t rest = cell;
        for (std::size_t i = sym.arity(); i-- > 0;) {
          std::size_t n = carriers[sym.domain[i]];
          args[i]       = reps[sym.domain[i]][rest % n];
          rest /= n;
        }
        tables[op].push_back(c.block(sym.codomain, a.apply(op, args)));
      }
    }
    FiniteAlgebra q(a.signature_ptr(), carriers, std::move(tables),
                    a.ordered() ? c.block_order() : std::vector<Relation>{});
    return Quotient{Homomorphism(a, q, c.blocks()), c};
  }

  Congruence kernel(const Homomorphism& f) {
    auto const& a = f.source();
    std::vector<std::vector<Element>> blocks = f.maps();
    std::vector<Relation>             order;
    if (a.ordered()) {
      for (SortId s = 0; s < a.sort_count(); ++s) {
        // Block labels after normalization follow first occurrence; build
        // the order on those labels from the images.
        auto        labels = blocks[s];
        std::size_t n      = normalize(labels);
        auto        reps   = representatives(labels, n);
        Relation    r(n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            r.set(i, j, f.target().leq(s, f(s, reps[i]), f(s, reps[j])));
          }
        }
        order.push_back(std::move(r));
      }
    }
    return Congruence(a, std::move(blocks), std::move(order));
  }

  Factorization factorize(const Homomorphism& f) {
    auto const& a = f.source();
    auto const& b = f.target();
    SortedSet   image(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      std::vector<bool> hit(b.carrier(s), false);
      for (Element y : f.maps()[s]) {
        hit[y] = true;
      }
      for (Element y = 0; y < b.carrier(s); ++y) {
        if (hit[y]) {
          image[s].push_back(y);
        }
      }
    }
    Subalgebra sub = subalgebra_on(b, image);
    SortedMap  epi(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      for (Element x = 0; x < a.carrier(s); ++x) {
        auto it = std::lower_bound(image[s].begin(), image[s].end(), f(s, x));
        epi[s].push_back(static_cast<Element>(it - image[s].begin()));
      }
    }
    Homomorphism e(a, sub.algebra, std::move(epi));
    Congruence   k = kernel(e);
    return Factorization{Quotient{e, k}, sub.embedding};
  }

  Quotient join_quotients(const Quotient& e1, const Quotient& e2) {
    if (!(e1.map.source() == e2.map.source())) {
      throw InputError("join_quotients: quotients of different algebras");
    }
    Product   p = product(e1.target(), e2.target());
    auto const& a = e1.map.source();
    SortedMap pairing(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      std::size_t m = e2.target().carrier(s);
      for (Element x = 0; x < a.carrier(s); ++x) {
        pairing[s].push_back(static_cast<Element>(e1.map(s, x) * m + e2.map(s, x)));
      }
    }
    return factorize(Homomorphism(a, p.algebra, std::move(pairing))).epi;
  }

  bool quotient_leq(const Quotient& e1, const Quotient& e2) {
    auto const& a = e1.map.source();
    for (SortId s = 0; s < a.sort_count(); ++s) {
      for (Element x = 0; x < a.carrier(s); ++x) {
        for (Element y = 0; y < a.carrier(s); ++y) {
          if (e2.target().leq(s, e2.map(s, x), e2.map(s, y))
              && !e1.target().leq(s, e1.map(s, x), e1.map(s, y))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  namespace {
    // Partial orders on the blocks of sort s that contain order[s].
    void extend_orders(const std::vector<Relation>&        order,
                       SortId                              s,
                       std::vector<std::vector<Relation>>& per_sort_out) {
      std::size_t n = order[s].size();
      std::vector<std::pair<std::size_t, std::size_t>> free_pairs;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!order[s](i, j) && !order[s](j, i)) {
            free_pairs.emplace_back(i, j);
          }
        }
      }
      std::set<Relation> found;
      Relation           r = order[s];
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == free_pairs.size()) {
          Relation closed = r;
          closed.close_transitively();
          if (closed == r && r.is_antisymmetric()) {
            found.insert(r);
          }
          return;
        }
        auto [i, j] = free_pairs[k];
        for (int choice = 0; choice < 3; ++choice) {
          r.set(i, j, choice == 1);
          r.set(j, i, choice == 2);
          rec(k + 1);
        }
        r.set(i, j, false);
        r.set(j, i, false);
      };
      rec(0);
      per_sort_out[s].assign(found.begin(), found.end());
    }
  }  // namespace

  std::vector<Congruence> all_congruences(const FiniteAlgebra& a,
                                          std::size_t          max_order_blocks) {
    // principal congruences
    std::vector<Congruence> principal;
    for (SortId s = 0; s < a.sort_count(); ++s) {
      for (Element x = 0; x < a.carrier(s); ++x) {
        for (Element y = x + 1; y < a.carrier(s); ++y) {
          principal.push_back(congruence_generated(a, {ElementPair{s, x, y}}));
        }
      }
    }
    auto pairs_of = [&](const Congruence& c) {
      std::vector<ElementPair> ps;
      for (SortId s = 0; s < a.sort_count(); ++s) {
        auto reps = representatives(c.blocks()[s], c.block_count(s));
        for (Element x = 0; x < a.carrier(s); ++x) {
          Element r = reps[c.block(s, x)];
          if (r != x) {
            ps.push_back(ElementPair{s, r, x});
          }
        }
      }
      return ps;
    };
    std::set<std::vector<std::vector<Element>>> seen;
    std::vector<Congruence>                     partitions;
    auto add = [&](const Congruence& c) {
      if (seen.insert(c.blocks()).second) {
        partitions.push_back(c);
        return true;
      }
      return false;
    };
    add(Congruence::identity(a));
    for (auto const& p : principal) {
      add(p);
    }
    for (std::size_t i = 0; i < partitions.size(); ++i) {
      for (auto const& p : principal) {
        auto ps    = pairs_of(partitions[i]);
        auto extra = pairs_of(p);
        ps.insert(ps.end(), extra.begin(), extra.end());
        add(congruence_generated(a, ps));
      }
    }
    std::vector<Congruence> out;
    if (!a.ordered()) {
      out = std::move(partitions);
    } else {
      for (auto const& c : partitions) {
        auto base = c.block_order();
        bool ok   = true;
        for (auto const& r : base) {
          ok = ok && r.is_antisymmetric();
        }
        if (!ok) {
          continue;
        }
        for (SortId s = 0; s < a.sort_count(); ++s) {
          if (c.block_count(s) > max_order_blocks) {
            throw BudgetExceeded("ordered congruence enumeration: "
                                 + std::to_string(c.block_count(s))
                                 + " blocks exceed the order-enumeration bound");
          }
        }
        std::vector<std::vector<Relation>> per_sort(a.sort_count());
        for (SortId s = 0; s < a.sort_count(); ++s) {
          extend_orders(base, s, per_sort);
        }
        // cartesian product of per-sort choices
        std::vector<std::size_t> idx(a.sort_count(), 0);
        while (true) {
          std::vector<Relation> order(a.sort_count());
          for (SortId s = 0; s < a.sort_count(); ++s) {
            order[s] = per_sort[s][idx[s]];
          }
          Congruence cand(a, c.blocks(), order);
          if (cand.is_compatible()) {
            out.push_back(std::move(cand));
          }
          SortId s = 0;
          while (s < a.sort_count() && ++idx[s] == per_sort[s].size()) {
            idx[s] = 0;
            ++s;
          }
          if (s == a.sort_count()) {
            break;
          }
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

}  // namespace profinite
