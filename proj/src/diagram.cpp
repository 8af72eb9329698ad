#include "profinite/diagram.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <set>

#include "profinite/io.hpp"

namespace profinite {

  using nlohmann::json;
  using nlohmann::ordered_json;

  FiniteDiagram::FiniteDiagram(std::vector<FiniteAlgebra> objects,
                               std::vector<Arrow>         arrows)
      : objects_(std::move(objects)), arrows_(std::move(arrows)) {
    for (std::size_t i = 1; i < objects_.size(); ++i) {
      require_same_signature(objects_[0], objects_[i], "diagram");
    }
    for (std::size_t k = 0; k < arrows_.size(); ++k) {
      auto const& a = arrows_[k];
      std::string where = "diagram arrow " + std::to_string(k);
      if (a.source >= objects_.size() || a.target >= objects_.size()) {
        throw InputError(where + ": endpoint out of range");
      }
      if (!(a.map.source() == objects_[a.source])
          || !(a.map.target() == objects_[a.target])) {
        throw InputError(where + ": map does not connect the stated objects");
      }
      if (!a.map.is_homomorphism()) {
        throw InputError(where + ": map is not a homomorphism");
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // LimitObject
  ////////////////////////////////////////////////////////////////////////

  LimitObject::LimitObject(FiniteAlgebra                                   algebra,
                           std::vector<std::vector<std::vector<Element>>> tuples,
                           std::vector<Homomorphism>                       projections)
      : algebra_(std::move(algebra)),
        tuples_(std::move(tuples)),
        projections_(std::move(projections)),
        index_(tuples_.size()) {
    for (SortId s = 0; s < tuples_.size(); ++s) {
      for (Element x = 0; x < tuples_[s].size(); ++x) {
        index_[s].emplace(tuples_[s][x], x);
      }
    }
  }

  std::optional<Element> LimitObject::find(SortId s, const std::vector<Element>& tuple) const {
    auto it = index_[s].find(tuple);
    if (it == index_[s].end()) {
      return std::nullopt;
    }
    return it->second;
  }

  namespace {

    struct Budget {
      std::uint64_t limit;
      std::uint64_t used = 0;
      const char*   what;

      void spend(std::uint64_t n = 1) {
        used += n;
        if (used > limit) {
          throw BudgetExceeded(std::string(what) + ": budget of " + std::to_string(limit)
                               + " exceeded");
        }
      }
    };

    std::vector<std::vector<Element>> compatible_tuples(const FiniteDiagram& d,
                                                        SortId               s,
                                                        Budget&              budget) {
      auto const& objs = d.objects();
      auto const& arrs = d.arrows();
      std::size_t m    = objs.size();

      // arc consistency
      std::vector<std::vector<bool>> dom(m);
      for (std::size_t i = 0; i < m; ++i) {
        dom[i].assign(objs[i].carrier(s), true);
      }
      bool changed = true;
      while (changed) {
        changed = false;
        for (auto const& a : arrs) {
          auto const&       h = a.map.maps()[s];
          std::vector<bool> image(objs[a.target].carrier(s), false);
          for (Element x = 0; x < h.size(); ++x) {
            if (!dom[a.source][x]) {
              continue;
            }
            if (!dom[a.target][h[x]]) {
              dom[a.source][x] = false;
              changed          = true;
            } else {
              image[h[x]] = true;
            }
          }
          for (Element y = 0; y < image.size(); ++y) {
            if (dom[a.target][y] && !image[y]) {
              dom[a.target][y] = false;
              changed          = true;
            }
          }
        }
      }

      // larger objects first, so arrow targets are usually forced
      std::vector<std::size_t> order(m);
      for (std::size_t i = 0; i < m; ++i) {
        order[i] = i;
      }
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return objs[x].carrier(s) > objs[y].carrier(s);
      });
      std::vector<std::size_t> position(m);
      for (std::size_t p = 0; p < m; ++p) {
        position[order[p]] = p;
      }
      // arrows checked once both endpoints are assigned
      std::vector<std::vector<const Arrow*>> checks(m);
      for (auto const& a : arrs) {
        checks[std::max(position[a.source], position[a.target])].push_back(&a);
      }

      std::vector<std::vector<Element>> out;
      std::vector<Element>              v(m, 0);
      std::function<void(std::size_t)>  rec = [&](std::size_t p) {
        if (p == m) {
          budget.spend();
          out.push_back(v);
          return;
        }
        std::size_t i = order[p];
        // a checked arrow into i from an assigned source forces v[i]
        std::optional<Element> forced;
        for (auto const* a : checks[p]) {
          if (a->target == i && a->source != i) {
            forced = a->map(s, v[a->source]);
            break;
          }
        }
        auto try_value = [&](Element x) {
          budget.spend();
          if (!dom[i][x]) {
            return;
          }
          v[i] = x;
          for (auto const* a : checks[p]) {
            if (a->map(s, v[a->source]) != v[a->target]) {
              return;
            }
          }
          rec(p + 1);
        };
        if (forced) {
          try_value(*forced);
        } else {
          for (Element x = 0; x < dom[i].size(); ++x) {
            try_value(x);
          }
        }
      };
      rec(0);
      std::sort(out.begin(), out.end());
      return out;
    }

    SortedMap compose_maps(const SortedMap& g, const SortedMap& f) {
      SortedMap out(f.size());
      for (std::size_t s = 0; s < f.size(); ++s) {
        out[s].reserve(f[s].size());
        for (Element x : f[s]) {
          out[s].push_back(g[s][x]);
        }
      }
      return out;
    }

  }  // namespace

  LimitObject limit(const FiniteDiagram& d, std::uint64_t budget) {
    if (d.size() == 0) {
      throw InputError("limit: diagram has no objects");
    }
    Budget      b{budget, 0, "limit"};
    auto const& objs = d.objects();
    auto const& sig  = objs[0].signature();
    std::size_t m    = objs.size();

    std::vector<std::vector<std::vector<Element>>> tuples;
    std::vector<std::size_t>                       carriers;
    for (SortId s = 0; s < sig.sort_count(); ++s) {
      tuples.push_back(compatible_tuples(d, s, b));
      carriers.push_back(tuples.back().size());
    }
    std::vector<std::map<std::vector<Element>, Element>> index(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
      for (Element x = 0; x < tuples[s].size(); ++x) {
        index[s].emplace(tuples[s][x], x);
      }
    }

    std::vector<std::vector<Element>> tables(sig.op_count());
    for (OpId op = 0; op < sig.op_count(); ++op) {
      auto const& sym = sig.op(op);
      std::size_t n   = 1;
      for (SortId s : sym.domain) {
        n *= carriers[s];
      }
      b.spend(n);
      tables[op].reserve(n);
      std::vector<Element> args(sym.arity(), 0);
      std::vector<Element> comp(sym.arity());
      std::vector<Element> result(m);
      for (std::size_t cell = 0; cell < n; ++cell) {
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t k = 0; k < sym.arity(); ++k) {
            comp[k] = tuples[sym.domain[k]][args[k]][i];
          }
          result[i] = objs[i].apply(op, comp);
        }
        tables[op].push_back(index[sym.codomain].at(result));
        for (std::size_t k = sym.arity(); k > 0; --k) {
          if (++args[k - 1] < carriers[sym.domain[k - 1]]) {
            break;
          }
          args[k - 1] = 0;
        }
      }
    }
    std::vector<Relation> orders;
    if (sig.ordered()) {
      for (SortId s = 0; s < sig.sort_count(); ++s) {
        Relation r(carriers[s]);
        for (std::size_t x = 0; x < carriers[s]; ++x) {
          for (std::size_t y = 0; y < carriers[s]; ++y) {
            bool le = true;
            for (std::size_t i = 0; i < m && le; ++i) {
              le = objs[i].leq(s, tuples[s][x][i], tuples[s][y][i]);
            }
            r.set(x, y, le);
          }
        }
        orders.push_back(std::move(r));
      }
    }
    FiniteAlgebra lim(objs[0].signature_ptr(), carriers, std::move(tables),
                      std::move(orders));
    std::vector<Homomorphism> projections;
    for (std::size_t i = 0; i < m; ++i) {
      SortedMap maps(sig.sort_count());
      for (SortId s = 0; s < sig.sort_count(); ++s) {
        for (auto const& t : tuples[s]) {
          maps[s].push_back(t[i]);
        }
      }
      projections.emplace_back(lim, objs[i], std::move(maps));
    }
    return LimitObject(std::move(lim), std::move(tuples), std::move(projections));
  }

  ////////////////////////////////////////////////////////////////////////
  // Cofilteredness
  ////////////////////////////////////////////////////////////////////////

  CofilteredVerdict is_cofiltered(const FiniteDiagram& d, std::uint64_t budget) {
    CofilteredVerdict v;
    std::size_t       m = d.size();
    if (m == 0) {
      v.cofiltered = false;
      v.failure    = CofilteredVerdict::Failure::empty;
      v.message    = "empty diagram has no cone";
      return v;
    }
    Budget b{budget, 0, "is_cofiltered"};
    // hom[i][j]: distinct composite maps i -> j
    std::vector<std::vector<std::set<SortedMap>>> hom(m, std::vector<std::set<SortedMap>>(m));
    std::vector<std::tuple<std::size_t, std::size_t, SortedMap>> work;
    auto add = [&](std::size_t i, std::size_t j, SortedMap f) {
      if (hom[i][j].insert(f).second) {
        b.spend();
        work.emplace_back(i, j, std::move(f));
      }
    };
    for (std::size_t i = 0; i < m; ++i) {
      add(i, i, identity_homomorphism(d.objects()[i]).maps());
    }
    for (auto const& a : d.arrows()) {
      add(a.source, a.target, a.map.maps());
    }
    while (!work.empty()) {
      auto [i, j, f] = std::move(work.back());
      work.pop_back();
      for (std::size_t k = 0; k < m; ++k) {
        std::vector<SortedMap> after(hom[j][k].begin(), hom[j][k].end());
        for (auto const& g : after) {
          add(i, k, compose_maps(g, f));
        }
        std::vector<SortedMap> before(hom[k][i].begin(), hom[k][i].end());
        for (auto const& h : before) {
          add(k, j, compose_maps(f, h));
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        bool found = false;
        for (std::size_t c = 0; c < m && !found; ++c) {
          found = !hom[c][i].empty() && !hom[c][j].empty();
        }
        if (!found) {
          v.cofiltered = false;
          v.failure    = CofilteredVerdict::Failure::no_common_source;
          v.first      = i;
          v.second     = j;
          v.message    = "objects " + std::to_string(i) + " and " + std::to_string(j)
                      + " have no common source";
          return v;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<SortedMap> fs(hom[i][j].begin(), hom[i][j].end());
        for (std::size_t p = 0; p < fs.size(); ++p) {
          for (std::size_t q = p + 1; q < fs.size(); ++q) {
            bool found = false;
            for (std::size_t c = 0; c < m && !found; ++c) {
              for (auto const& h : hom[c][i]) {
                if (compose_maps(fs[p], h) == compose_maps(fs[q], h)) {
                  found = true;
                  break;
                }
              }
            }
            if (!found) {
              v.cofiltered = false;
              v.failure    = CofilteredVerdict::Failure::not_equalized;
              v.first      = i;
              v.second     = j;
              v.left       = fs[p];
              v.right      = fs[q];
              v.message    = "a parallel pair " + std::to_string(i) + " -> "
                          + std::to_string(j) + " is not equalized";
              return v;
            }
          }
        }
      }
    }
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Files
  ////////////////////////////////////////////////////////////////////////

  FiniteDiagram parse_diagram(std::string_view   text,
                              const std::string& base_dir,
                              const Theory*      theory) {
    json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("objects") || !doc.at("objects").is_array()) {
      throw InputError("diagram: missing field 'objects'");
    }
    std::vector<FiniteAlgebra> objects;
    for (auto const& o : doc.at("objects")) {
      if (o.is_string()) {
        std::filesystem::path p(o.get<std::string>());
        if (p.is_relative()) {
          p = std::filesystem::path(base_dir) / p;
        }
        objects.push_back(parse_algebra(read_file(p.string()), theory));
      } else {
        objects.push_back(algebra_from_json(o, theory));
      }
    }
    // share one signature object so the diagram is well-formed
    for (std::size_t i = 1; i < objects.size(); ++i) {
      require_same_signature(objects[0], objects[i], "diagram");
      objects[i] = FiniteAlgebra(objects[0].signature_ptr(), objects[i].carriers(),
                                 objects[i].tables(), objects[i].orders());
    }
    std::vector<Arrow> arrows;
    if (doc.contains("arrows")) {
      if (!doc.at("arrows").is_array()) {
        throw InputError("diagram: 'arrows' must be an array");
      }
      for (auto const& a : doc.at("arrows")) {
        if (!a.is_object() || !a.contains("src") || !a.contains("dst")
            || !a.contains("maps") || !a.at("src").is_number_unsigned()
            || !a.at("dst").is_number_unsigned()) {
          throw InputError("diagram: arrows need 'src', 'dst' and 'maps'");
        }
        std::size_t src = a.at("src").get<std::size_t>();
        std::size_t dst = a.at("dst").get<std::size_t>();
        if (src >= objects.size() || dst >= objects.size()) {
          throw InputError("diagram: arrow endpoint out of range");
        }
        auto const& sig = objects[src].signature();
        SortedMap   maps(sig.sort_count());
        try {
          auto const& mj = a.at("maps");
          if (mj.is_array()) {
            if (sig.sort_count() != 1) {
              throw InputError("diagram: bare map array needs a single sort");
            }
            maps[0] = mj.get<std::vector<Element>>();
          } else {
            for (SortId s = 0; s < sig.sort_count(); ++s) {
              maps[s] = mj.at(sig.sorts()[s]).get<std::vector<Element>>();
            }
          }
        } catch (const json::exception&) {
          throw InputError("diagram: malformed 'maps'");
        }
        for (SortId s = 0; s < sig.sort_count(); ++s) {
          if (maps[s].size() != objects[src].carrier(s)) {
            throw InputError("diagram: map has the wrong length");
          }
          for (Element y : maps[s]) {
            if (y >= objects[dst].carrier(s)) {
              throw InputError("diagram: map leaves the target carrier");
            }
          }
        }
        arrows.push_back(Arrow{src, dst, Homomorphism(objects[src], objects[dst], maps)});
      }
    }
    return FiniteDiagram(std::move(objects), std::move(arrows));
  }

  std::string serialize_diagram(const FiniteDiagram& d) {
    ordered_json doc;
    ordered_json objs = ordered_json::array();
    for (auto const& o : d.objects()) {
      objs.push_back(algebra_to_json(o));
    }
    ordered_json arrs = ordered_json::array();
    for (auto const& a : d.arrows()) {
      ordered_json aj;
      aj["src"]         = a.source;
      aj["dst"]         = a.target;
      ordered_json maps = ordered_json::object();
      auto const&  sig  = a.map.source().signature();
      for (SortId s = 0; s < sig.sort_count(); ++s) {
        maps[sig.sorts()[s]] = a.map.maps()[s];
      }
      aj["maps"] = maps;
      arrs.push_back(aj);
    }
    doc["objects"] = objs;
    doc["arrows"]  = arrs;
    return pretty(doc) + "\n";
  }

}  // namespace profinite
