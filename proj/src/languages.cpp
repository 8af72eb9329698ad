#include "profinite/languages.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "profinite/error.hpp"
#include "profinite/eval.hpp"
#include "profinite/io.hpp"

namespace profinite {

  using nlohmann::json;
  using nlohmann::ordered_json;

  DFA::DFA(std::vector<std::string>        alphabet,
           std::size_t                     states,
           std::vector<std::vector<State>> transitions,
           State                           initial,
           std::vector<State>              accepting)
      : alphabet_(std::move(alphabet)),
        states_(states),
        transitions_(std::move(transitions)),
        initial_(initial),
        accepting_(std::move(accepting)) {
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      for (std::size_t j = i + 1; j < alphabet_.size(); ++j) {
        if (alphabet_[i] == alphabet_[j]) {
          throw InputError("dfa: duplicate letter '" + alphabet_[i] + "'");
        }
      }
    }
    if (states_ == 0) {
      throw InputError("dfa: no states");
    }
    if (transitions_.size() != states_) {
      throw InputError("dfa: table not total: expected " + std::to_string(states_)
                       + " transition rows, found " + std::to_string(transitions_.size()));
    }
    for (std::size_t q = 0; q < states_; ++q) {
      if (transitions_[q].size() != alphabet_.size()) {
        throw InputError("dfa: table not total: row " + std::to_string(q) + " has "
                         + std::to_string(transitions_[q].size()) + " entries");
      }
      for (State r : transitions_[q]) {
        if (r >= states_) {
          throw InputError("dfa: transition target " + std::to_string(r)
                           + " out of range");
        }
      }
    }
    if (initial_ >= states_) {
      throw InputError("dfa: initial state " + std::to_string(initial_) + " out of range");
    }
    for (State q : accepting_) {
      if (q >= states_) {
        throw InputError("dfa: accepting state " + std::to_string(q) + " out of range");
      }
    }
    std::sort(accepting_.begin(), accepting_.end());
    accepting_.erase(std::unique(accepting_.begin(), accepting_.end()), accepting_.end());
  }

  bool DFA::is_accepting(State q) const {
    return std::binary_search(accepting_.begin(), accepting_.end(), q);
  }

  bool DFA::accepts(const std::vector<std::size_t>& word) const {
    State q = initial_;
    for (std::size_t a : word) {
      q = transitions_[q][a];
    }
    return is_accepting(q);
  }

  DFA parse_dfa(std::string_view text) {
    json doc = parse_json(text);
    if (!doc.is_object()) {
      throw InputError("dfa: expected a JSON object");
    }
    for (const char* key : {"alphabet", "states", "transitions", "initial", "accepting"}) {
      if (!doc.contains(key)) {
        throw InputError(std::string("dfa: missing field '") + key + "'");
      }
    }
    try {
      auto alphabet = doc.at("alphabet").get<std::vector<std::string>>();
      if (!doc.at("states").is_number_unsigned() || !doc.at("initial").is_number_unsigned()) {
        throw InputError("dfa: 'states' and 'initial' must be natural numbers");
      }
      auto states = doc.at("states").get<std::size_t>();
      std::vector<std::vector<State>> transitions;
      for (auto const& row : doc.at("transitions")) {
        std::vector<State> r;
        for (auto const& v : row) {
          if (!v.is_number_unsigned()) {
            throw InputError("dfa: transition targets must be natural numbers");
          }
          r.push_back(v.get<State>());
        }
        transitions.push_back(std::move(r));
      }
      std::vector<State> accepting;
      for (auto const& v : doc.at("accepting")) {
        if (!v.is_number_unsigned()) {
          throw InputError("dfa: accepting states must be natural numbers");
        }
        accepting.push_back(v.get<State>());
      }
      return DFA(std::move(alphabet), states, std::move(transitions),
                 doc.at("initial").get<State>(), std::move(accepting));
    } catch (const json::exception& e) {
      throw InputError(std::string("dfa: malformed field: ") + e.what());
    }
  }

  std::string serialize_dfa(const DFA& d) {
    ordered_json doc;
    doc["alphabet"]    = d.alphabet();
    doc["states"]      = d.state_count();
    doc["transitions"] = d.transitions();
    doc["initial"]     = d.initial();
    doc["accepting"]   = d.accepting();
    return pretty(doc) + "\n";
  }

  namespace {

    // Renumbers the states reachable from `initial` in breadth-first order
    // and applies `cls` (state -> class) before numbering.
    DFA bfs_quotient(const DFA& d, const std::vector<State>& cls, std::size_t classes) {
      // representative transitions on classes
      std::vector<std::vector<State>> ctrans(classes);
      std::vector<bool>               cacc(classes, false);
      for (State q = 0; q < d.state_count(); ++q) {
        if (cls[q] == State(-1)) {
          continue;
        }
        auto& row = ctrans[cls[q]];
        if (row.empty()) {
          for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
            row.push_back(cls[d.next(q, a)]);
          }
        }
        cacc[cls[q]] = d.is_accepting(q);
      }
      std::vector<State> number(classes, State(-1));
      std::vector<State> order;
      std::deque<State>  queue{cls[d.initial()]};
      number[cls[d.initial()]] = 0;
      order.push_back(cls[d.initial()]);
      while (!queue.empty()) {
        State c = queue.front();
        queue.pop_front();
        for (State t : ctrans[c]) {
          if (number[t] == State(-1)) {
            number[t] = static_cast<State>(order.size());
            order.push_back(t);
            queue.push_back(t);
          }
        }
      }
      std::vector<std::vector<State>> trans;
      std::vector<State>              acc;
      for (State i = 0; i < order.size(); ++i) {
        std::vector<State> row;
        for (State t : ctrans[order[i]]) {
          row.push_back(number[t]);
        }
        trans.push_back(std::move(row));
        if (cacc[order[i]]) {
          acc.push_back(i);
        }
      }
      return DFA(d.alphabet(), order.size(), std::move(trans), 0, std::move(acc));
    }

  }  // namespace

  DFA minimize(const DFA& d) {
    std::size_t       n = d.state_count();
    std::vector<bool> reachable(n, false);
    std::deque<State> queue{d.initial()};
    reachable[d.initial()] = true;
    while (!queue.empty()) {
      State q = queue.front();
      queue.pop_front();
      for (State r : d.transitions()[q]) {
        if (!reachable[r]) {
          reachable[r] = true;
          queue.push_back(r);
        }
      }
    }
    // Moore refinement over the reachable states
    std::vector<State> cls(n, State(-1));
    for (State q = 0; q < n; ++q) {
      if (reachable[q]) {
        cls[q] = d.is_accepting(q) ? 1 : 0;
      }
    }
    std::size_t classes = 0;
    while (true) {
      std::map<std::vector<State>, State> sig;
      std::vector<State>                  next(n, State(-1));
      for (State q = 0; q < n; ++q) {
        if (!reachable[q]) {
          continue;
        }
        std::vector<State> key{cls[q]};
        for (State r : d.transitions()[q]) {
          key.push_back(cls[r]);
        }
        auto it = sig.emplace(std::move(key), static_cast<State>(sig.size())).first;
        next[q] = it->second;
      }
      bool stable = sig.size() == classes;
      classes     = sig.size();
      cls         = std::move(next);
      if (stable) {
        break;
      }
    }
    return bfs_quotient(d, cls, classes);
  }

  DFA reverse(const DFA& d) {
    std::size_t n = d.state_count();
    std::size_t k = d.alphabet().size();
    // pre[a][r]: states q with δ(q, a) = r
    std::vector<std::vector<std::vector<State>>> pre(k, std::vector<std::vector<State>>(n));
    for (State q = 0; q < n; ++q) {
      for (std::size_t a = 0; a < k; ++a) {
        pre[a][d.next(q, a)].push_back(q);
      }
    }
    using Subset = std::vector<bool>;
    std::map<Subset, State>         index;
    std::vector<Subset>             subsets;
    std::vector<std::vector<State>> trans;
    Subset                          start(n, false);
    for (State q : d.accepting()) {
      start[q] = true;
    }
    index.emplace(start, 0);
    subsets.push_back(start);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      std::vector<State> row;
      for (std::size_t a = 0; a < k; ++a) {
        Subset next(n, false);
        for (State r = 0; r < n; ++r) {
          if (subsets[i][r]) {
            for (State q : pre[a][r]) {
              next[q] = true;
            }
          }
        }
        auto [it, fresh] = index.emplace(next, static_cast<State>(subsets.size()));
        if (fresh) {
          subsets.push_back(next);
        }
        row.push_back(it->second);
      }
      trans.push_back(std::move(row));
    }
    std::vector<State> acc;
    for (State i = 0; i < subsets.size(); ++i) {
      if (subsets[i][d.initial()]) {
        acc.push_back(i);
      }
    }
    return minimize(DFA(d.alphabet(), subsets.size(), std::move(trans), 0, std::move(acc)));
  }

  Element RecognizingMorphism::evaluate(const std::vector<std::size_t>& word) const {
    Element m = 0;
    for (std::size_t a : word) {
      m = monoid.apply(0, {m, letter_image[a]});
    }
    return m;
  }

  bool RecognizingMorphism::recognizes(const std::vector<std::size_t>& word) const {
    return std::binary_search(accepting.begin(), accepting.end(), evaluate(word));
  }

  RecognizingMorphism syntactic_monoid(const DFA& d, std::uint64_t budget) {
    DFA         m = minimize(d);
    std::size_t n = m.state_count();
    std::size_t k = m.alphabet().size();

    std::vector<Transformation>       elems;
    std::map<Transformation, Element> index;
    auto add = [&](Transformation t) {
      auto [it, fresh] = index.emplace(t, static_cast<Element>(elems.size()));
      if (fresh) {
        if (elems.size() >= budget) {
          throw BudgetExceeded("syntactic_monoid: more than " + std::to_string(budget)
                               + " elements");
        }
        elems.push_back(std::move(t));
      }
      return it->second;
    };
    Transformation id(n);
    for (State q = 0; q < n; ++q) {
      id[q] = q;
    }
    add(id);
    std::vector<Element> letter_image(k);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t a = 0; a < k; ++a) {
        Transformation t(n);
        for (State q = 0; q < n; ++q) {
          t[q] = m.next(elems[i][q], a);
        }
        Element e = add(std::move(t));
        if (i == 0) {
          letter_image[a] = e;
        }
      }
    }
    std::size_t          size = elems.size();
    std::vector<Element> mul(size * size);
    Transformation       t(n);
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t y = 0; y < size; ++y) {
        for (State q = 0; q < n; ++q) {
          t[q] = elems[y][elems[x][q]];
        }
        mul[x * size + y] = index.at(t);
      }
    }
    std::vector<Element> accepting;
    for (Element x = 0; x < size; ++x) {
      if (m.is_accepting(elems[x][m.initial()])) {
        accepting.push_back(x);
      }
    }
    FiniteAlgebra monoid(Theory::monoid().signature_ptr(), {size}, {std::move(mul), {0}});
    return RecognizingMorphism{std::move(m), std::move(monoid), std::move(elems),
                               std::move(letter_image), std::move(accepting)};
  }

  AperiodicityVerdict is_aperiodic(const Theory& theory, const FiniteAlgebra& m) {
    if (!theory.omega()) {
      throw InputError("is_aperiodic: theory '" + theory.name() + "' has no ω-power");
    }
    if (!theory.admits(m)) {
      throw InputError("is_aperiodic: algebra signature does not match theory '"
                       + theory.name() + "'");
    }
    auto const& om = *theory.omega();
    for (Element x = 0; x < m.carrier(om.sort); ++x) {
      Element e = omega_power(theory, m, x);
      if (m.apply(om.mul, {e, x}) != e) {
        return AperiodicityVerdict{false, x};
      }
    }
    return AperiodicityVerdict{};
  }

  AperiodicityVerdict is_aperiodic(const FiniteAlgebra& m) {
    return is_aperiodic(Theory::monoid(m.ordered()), m);
  }

  StarFreeVerdict classify_star_free(const DFA& d, std::uint64_t budget) {
    auto            morphism = syntactic_monoid(d, budget);
    auto            verdict  = is_aperiodic(morphism.monoid);
    StarFreeVerdict out{verdict.aperiodic, std::move(morphism), verdict.witness, std::nullopt};
    if (out.witness) {
      out.witness_transformation = out.morphism.transformations[*out.witness];
    }
    return out;
  }

}  // namespace profinite
