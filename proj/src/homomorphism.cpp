#include "profinite/homomorphism.hpp"

#include <algorithm>
#include <functional>

namespace profinite {

  ////////////////////////////////////////////////////////////////////////
  // Homomorphism
  ////////////////////////////////////////////////////////////////////////

  Homomorphism::Homomorphism(FiniteAlgebra source,
                             FiniteAlgebra target,
                             SortedMap     maps)
      : source_(std::move(source)),
        target_(std::move(target)),
        maps_(std::move(maps)) {
    require_same_signature(source_, target_, "homomorphism");
    if (maps_.size() != source_.sort_count()) {
      throw InputError("homomorphism: wrong number of sort maps");
    }
    for (SortId s = 0; s < maps_.size(); ++s) {
      if (maps_[s].size() != source_.carrier(s)) {
        throw InputError("homomorphism: map not total on sort "
                         + source_.signature().sorts()[s]);
      }
      for (Element y : maps_[s]) {
        if (y >= target_.carrier(s)) {
          throw InputError("homomorphism: image outside the target carrier");
        }
      }
    }
  }

  bool Homomorphism::is_homomorphism() const {
    auto const& sig = source_.signature();
    for (OpId op = 0; op < sig.op_count(); ++op) {
      auto const& dom = sig.op(op).domain;
      for (std::size_t c = 0; c < source_.cell_count(op); ++c) {
        auto args = source_.cell_args(op, c);
        for (std::size_t i = 0; i < args.size(); ++i) {
          args[i] = maps_[dom[i]][args[i]];
        }
        if (target_.apply(op, args)
            != maps_[sig.op(op).codomain][source_.table(op)[c]]) {
          return false;
        }
      }
    }
    return is_monotone();
  }

  bool Homomorphism::is_monotone() const {
    if (!source_.ordered()) {
      return true;
    }
    for (SortId s = 0; s < maps_.size(); ++s) {
      for (Element x = 0; x < source_.carrier(s); ++x) {
        for (Element y = 0; y < source_.carrier(s); ++y) {
          if (source_.leq(s, x, y)
              && !target_.leq(s, maps_[s][x], maps_[s][y])) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool Homomorphism::is_surjective() const {
    for (SortId s = 0; s < maps_.size(); ++s) {
      std::vector<bool> hit(target_.carrier(s), false);
      for (Element y : maps_[s]) {
        hit[y] = true;
      }
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        return false;
      }
    }
    return true;
  }

  bool Homomorphism::is_injective() const {
    for (SortId s = 0; s < maps_.size(); ++s) {
      std::vector<bool> hit(target_.carrier(s), false);
      for (Element y : maps_[s]) {
        if (hit[y]) {
          return false;
        }
        hit[y] = true;
      }
    }
    return true;
  }

  bool Homomorphism::is_order_reflecting() const {
    if (!is_injective()) {
      return false;
    }
    for (SortId s = 0; s < maps_.size(); ++s) {
      for (Element x = 0; x < source_.carrier(s); ++x) {
        for (Element y = 0; y < source_.carrier(s); ++y) {
          if (source_.leq(s, x, y)
              != target_.leq(s, maps_[s][x], maps_[s][y])) {
            return false;
          }
        }
      }
    }
    return true;
  }

  Homomorphism identity_homomorphism(const FiniteAlgebra& a) {
    SortedMap maps(a.sort_count());
    for (SortId s = 0; s < a.sort_count(); ++s) {
      maps[s].resize(a.carrier(s));
      for (Element x = 0; x < a.carrier(s); ++x) {
        maps[s][x] = x;
      }
    }
    return Homomorphism(a, a, std::move(maps));
  }

  Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
    if (!(f.target() == g.source())) {
      throw InputError("compose: endpoints do not match");
    }
    SortedMap maps = f.maps();
    for (SortId s = 0; s < maps.size(); ++s) {
      for (auto& x : maps[s]) {
        x = g(s, x);
      }
    }
    return Homomorphism(f.source(), g.target(), std::move(maps));
  }

  ////////////////////////////////////////////////////////////////////////
  // Search engine
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }

    // Per-element fingerprint invariant under isomorphism.
    std::vector<std::vector<std::uint64_t>> fingerprints(const FiniteAlgebra& a) {
      auto const& sig = a.signature();
      std::vector<std::vector<std::uint64_t>> fp(a.sort_count());
      std::vector<std::vector<std::uint32_t>> counts(a.sort_count());
      for (SortId s = 0; s < a.sort_count(); ++s) {
        fp[s].assign(a.carrier(s), 0);
      }
      for (OpId op = 0; op < sig.op_count(); ++op) {
        auto const& sym = sig.op(op);
        std::vector<std::uint32_t> hits(a.carrier(sym.codomain), 0);
        for (Element r : a.table(op)) {
          ++hits[r];
        }
        for (Element x = 0; x < hits.size(); ++x) {
          fp[sym.codomain][x] = mix(fp[sym.codomain][x], mix(op, hits[x]));
        }
        bool diagonal = sym.arity() > 0
                        && std::all_of(sym.domain.begin(), sym.domain.end(),
                                       [&](SortId d) { return d == sym.codomain; });
        if (diagonal) {
          std::vector<Element> args(sym.arity());
          for (Element x = 0; x < a.carrier(sym.codomain); ++x) {
            std::fill(args.begin(), args.end(), x);
            Element r = a.apply(op, args);
            // idempotent, and how far the diagonal walk runs before
            // repeating (captures element orders in a monoid)
            std::uint32_t steps = 0;
            std::vector<bool> seen(a.carrier(sym.codomain), false);
            Element cur = x;
            while (!seen[cur]) {
              seen[cur] = true;
              std::fill(args.begin(), args.end(), cur);
              cur = a.apply(op, args);
              ++steps;
            }
            fp[sym.codomain][x]
                = mix(fp[sym.codomain][x], mix(1000 + op, (r == x) * 7 + steps * 131));
          }
        }
      }
      if (a.ordered()) {
        for (SortId s = 0; s < a.sort_count(); ++s) {
          for (Element x = 0; x < a.carrier(s); ++x) {
            std::uint32_t up = 0, down = 0;
            for (Element y = 0; y < a.carrier(s); ++y) {
              up += a.leq(s, x, y);
              down += a.leq(s, y, x);
            }
            fp[s][x] = mix(fp[s][x], mix(up, down));
          }
        }
      }
      return fp;
    }

    struct Position {
      SortId  sort;
      Element element;
      // derivation: op applied to earlier positions; op == npos for a
      // generator
      OpId                     op = static_cast<OpId>(-1);
      std::vector<std::size_t> args;
    };

    struct CellCheck {
      OpId                     op;
      std::vector<std::size_t> args;
      std::size_t              result;
    };

    struct OrderCheck {
      SortId      sort;
      std::size_t x, y;  // positions
      bool        source_leq;
    };

    // Elements of the source in an order where every non-generator is the
    // value of an operation on earlier elements.
    class SearchPlan {
     public:
      explicit SearchPlan(const FiniteAlgebra& a) {
        auto const& sig = a.signature();
        pos_of_.resize(a.sort_count());
        for (SortId s = 0; s < a.sort_count(); ++s) {
          pos_of_[s].assign(a.carrier(s), npos);
        }
        std::size_t total = a.total_size();
        auto        close = [&] {
          bool changed = true;
          while (changed) {
            changed = false;
            for (OpId op = 0; op < sig.op_count(); ++op) {
              auto const& sym = sig.op(op);
              for (std::size_t c = 0; c < a.cell_count(op); ++c) {
                Element r = a.table(op)[c];
                if (pos_of_[sym.codomain][r] != npos) {
                  continue;
                }
                auto                     args = a.cell_args(op, c);
                std::vector<std::size_t> ps(args.size());
                bool                     ready = true;
                for (std::size_t i = 0; i < args.size(); ++i) {
                  ps[i] = pos_of_[sym.domain[i]][args[i]];
                  if (ps[i] == npos) {
                    ready = false;
                    break;
                  }
                }
                if (!ready) {
                  continue;
                }
                add(sym.codomain, r, op, std::move(ps));
                changed = true;
              }
            }
          }
        };
        close();
        while (positions_.size() < total) {
          for (SortId s = 0; s < a.sort_count(); ++s) {
            auto it = std::find(pos_of_[s].begin(), pos_of_[s].end(), npos);
            if (it != pos_of_[s].end()) {
              add(s, static_cast<Element>(it - pos_of_[s].begin()), npos, {});
              break;
            }
          }
          close();
        }

        checks_.resize(positions_.size());
        for (OpId op = 0; op < sig.op_count(); ++op) {
          auto const& sym = sig.op(op);
          for (std::size_t c = 0; c < a.cell_count(op); ++c) {
            auto      args = a.cell_args(op, c);
            CellCheck chk{op, {}, pos_of_[sym.codomain][a.table(op)[c]]};
            std::size_t last = chk.result;
            for (std::size_t i = 0; i < args.size(); ++i) {
              chk.args.push_back(pos_of_[sym.domain[i]][args[i]]);
              last = std::max(last, chk.args.back());
            }
            checks_[last].push_back(std::move(chk));
          }
        }
        order_checks_.resize(positions_.size());
        if (a.ordered()) {
          for (SortId s = 0; s < a.sort_count(); ++s) {
            for (Element x = 0; x < a.carrier(s); ++x) {
              for (Element y = 0; y < a.carrier(s); ++y) {
                if (x == y) {
                  continue;
                }
                std::size_t px = pos_of_[s][x], py = pos_of_[s][y];
                order_checks_[std::max(px, py)].push_back(
                    OrderCheck{s, px, py, a.leq(s, x, y)});
              }
            }
          }
        }
      }

      static constexpr std::size_t npos = static_cast<std::size_t>(-1);

      std::vector<Position>                 positions_;
      std::vector<std::vector<std::size_t>> pos_of_;
      std::vector<std::vector<CellCheck>>   checks_;
      std::vector<std::vector<OrderCheck>>  order_checks_;

     private:
      void add(SortId s, Element x, OpId op, std::vector<std::size_t> args) {
        pos_of_[s][x] = positions_.size();
        positions_.push_back(Position{s, x, op, std::move(args)});
      }
    };

    struct SearchOptions {
      bool          bijective = false;  // also order-reflecting
      std::uint64_t budget    = kDefaultBudget;
    };

    // Calls emit(maps) for every homomorphism; emit returns false to stop.
    void search_homomorphisms(const FiniteAlgebra&                   a,
                              const FiniteAlgebra&                   b,
                              const SearchOptions&                   opt,
                              const std::function<bool(SortedMap)>& emit) {
      for (SortId s = 0; s < a.sort_count(); ++s) {
        if (a.carrier(s) > 0 && b.carrier(s) == 0) {
          return;
        }
        if (opt.bijective && a.carrier(s) != b.carrier(s)) {
          return;
        }
      }
      SearchPlan plan(a);
      std::vector<std::vector<std::uint64_t>> fa, fb;
      if (opt.bijective) {
        fa = fingerprints(a);
        fb = fingerprints(b);
      }
      auto const&               pos = plan.positions_;
      std::vector<Element>      img(pos.size());
      std::vector<std::vector<bool>> used(b.sort_count());
      for (SortId s = 0; s < b.sort_count(); ++s) {
        used[s].assign(b.carrier(s), false);
      }
      std::uint64_t nodes = 0;
      bool          stop  = false;

      std::vector<Element> args;
      auto consistent = [&](std::size_t p) {
        for (auto const& chk : plan.checks_[p]) {
          args.resize(chk.args.size());
          for (std::size_t i = 0; i < args.size(); ++i) {
            args[i] = img[chk.args[i]];
          }
          if (b.apply(chk.op, args) != img[chk.result]) {
            return false;
          }
        }
        for (auto const& oc : plan.order_checks_[p]) {
          bool tl = b.leq(oc.sort, img[oc.x], img[oc.y]);
          if (oc.source_leq && !tl) {
            return false;
          }
          if (opt.bijective && tl && !oc.source_leq) {
            return false;
          }
        }
        return true;
      };

      std::function<void(std::size_t)> rec = [&](std::size_t p) {
        if (stop) {
          return;
        }
        if (++nodes > opt.budget) {
          throw BudgetExceeded("homomorphism search exceeded budget of "
                               + std::to_string(opt.budget) + " nodes");
        }
        if (p == pos.size()) {
          SortedMap maps(a.sort_count());
          for (SortId s = 0; s < a.sort_count(); ++s) {
            maps[s].resize(a.carrier(s));
          }
          for (std::size_t i = 0; i < pos.size(); ++i) {
            maps[pos[i].sort][pos[i].element] = img[i];
          }
          if (!emit(std::move(maps))) {
            stop = true;
          }
          return;
        }
        auto const& P = pos[p];
        auto        try_value = [&](Element v) {
          if (opt.bijective) {
            if (used[P.sort][v] || fa[P.sort][P.element] != fb[P.sort][v]) {
              return;
            }
          }
          img[p] = v;
          if (!consistent(p)) {
            return;
          }
          if (opt.bijective) {
            used[P.sort][v] = true;
          }
          rec(p + 1);
          if (opt.bijective) {
            used[P.sort][v] = false;
          }
        };
        if (P.op == SearchPlan::npos) {
          for (Element v = 0; v < b.carrier(P.sort) && !stop; ++v) {
            try_value(v);
          }
        } else {
          std::vector<Element> dargs(P.args.size());
          for (std::size_t i = 0; i < dargs.size(); ++i) {
            dargs[i] = img[P.args[i]];
          }
          try_value(b.apply(P.op, dargs));
        }
      };
      rec(0);
    }

  }  // namespace

  std::vector<Homomorphism> homomorphisms(const FiniteAlgebra& a,
                                          const FiniteAlgebra& b,
                                          std::uint64_t        budget) {
    require_same_signature(a, b, "homomorphisms");
    std::vector<SortedMap> found;
    search_homomorphisms(a, b, SearchOptions{false, budget}, [&](SortedMap m) {
      found.push_back(std::move(m));
      return true;
    });
    std::sort(found.begin(), found.end());
    std::vector<Homomorphism> out;
    out.reserve(found.size());
    for (auto& m : found) {
      out.emplace_back(a, b, std::move(m));
    }
    return out;
  }

  std::optional<Homomorphism> is_isomorphic(const FiniteAlgebra& a,
                                            const FiniteAlgebra& b) {
    require_same_signature(a, b, "is_isomorphic");
    if (a.carriers() != b.carriers()) {
      return std::nullopt;
    }
    if (a == b) {
      return identity_homomorphism(a);
    }
    if (invariant_hash(a) != invariant_hash(b)) {
      return std::nullopt;
    }
    std::optional<SortedMap> found;
    search_homomorphisms(a, b, SearchOptions{true, kDefaultBudget},
                         [&](SortedMap m) {
                           found = std::move(m);
                           return false;
                         });
    if (!found) {
      return std::nullopt;
    }
    return Homomorphism(a, b, std::move(*found));
  }

  std::vector<Homomorphism> automorphisms(const FiniteAlgebra& a) {
    std::vector<SortedMap> found;
    search_homomorphisms(a, a, SearchOptions{true, kDefaultBudget},
                         [&](SortedMap m) {
                           found.push_back(std::move(m));
                           return true;
                         });
    std::sort(found.begin(), found.end());
    std::vector<Homomorphism> out;
    for (auto& m : found) {
      out.emplace_back(a, a, std::move(m));
    }
    return out;
  }

  std::uint64_t invariant_hash(const FiniteAlgebra& a) {
    std::uint64_t h = 0;
    for (std::size_t n : a.carriers()) {
      h = mix(h, n);
    }
    auto fp = fingerprints(a);
    for (auto& sortfp : fp) {
      std::sort(sortfp.begin(), sortfp.end());
      for (auto v : sortfp) {
        h = mix(h, v);
      }
    }
    return h;
  }

}  // namespace profinite
