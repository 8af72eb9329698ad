#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/theory.hpp"

namespace profinite {

  using State = std::uint32_t;

  /// Complete deterministic automaton; transitions[q][a] is the successor
  /// of state q on letter a.
  class DFA {
   public:
    DFA(std::vector<std::string>        alphabet,
        std::size_t                     states,
        std::vector<std::vector<State>> transitions,
        State                           initial,
        std::vector<State>              accepting);

    const std::vector<std::string>& alphabet() const noexcept {
      return alphabet_;
    }
    std::size_t state_count() const noexcept {
      return states_;
    }
    const std::vector<std::vector<State>>& transitions() const noexcept {
      return transitions_;
    }
    State next(State q, std::size_t letter) const {
      return transitions_[q][letter];
    }
    State initial() const noexcept {
      return initial_;
    }
    /// Sorted, without duplicates.
    const std::vector<State>& accepting() const noexcept {
      return accepting_;
    }
    bool is_accepting(State q) const;

    /// Word given as letter indices.
    bool accepts(const std::vector<std::size_t>& word) const;

    bool operator==(const DFA&) const = default;

   private:
    std::vector<std::string>        alphabet_;
    std::size_t                     states_;
    std::vector<std::vector<State>> transitions_;
    State                           initial_;
    std::vector<State>              accepting_;
  };

  /// { "alphabet": [...], "states": n, "transitions": [[...], ...],
  ///   "initial": i, "accepting": [...] }
  DFA         parse_dfa(std::string_view text);
  std::string serialize_dfa(const DFA& d);

  /// Removes unreachable states, merges equivalent ones (Moore refinement)
  /// and numbers states in breadth-first order from the initial state.
  DFA minimize(const DFA& d);

  /// Automaton of the reversed language (subset construction), minimized.
  DFA reverse(const DFA& d);

  /// A state transformation: image of every state.
  using Transformation = std::vector<State>;

  struct RecognizingMorphism {
    DFA                         minimal;
    FiniteAlgebra               monoid;
    /// transformations[m]: the action of monoid element m on the states
    /// of `minimal`. Element 0 is the identity; x * y acts as x then y.
    std::vector<Transformation> transformations;
    /// letter_image[a]: the element of the one-letter word a.
    std::vector<Element>        letter_image;
    /// Sorted elements sending the initial state to an accepting state.
    std::vector<Element>        accepting;

    Element evaluate(const std::vector<std::size_t>& word) const;
    bool    recognizes(const std::vector<std::size_t>& word) const;
  };

  inline constexpr std::uint64_t kDefaultMonoidBudget = 10'000;

  /// Transition monoid of the minimal automaton, with elements in
  /// breadth-first order over the alphabet. BudgetExceeded if the monoid
  /// has more than `budget` elements.
  RecognizingMorphism syntactic_monoid(const DFA& d,
                                       std::uint64_t budget = kDefaultMonoidBudget);

  struct AperiodicityVerdict {
    bool                   aperiodic = true;
    std::optional<Element> witness;  // x with x^ω * x != x^ω
  };

  /// Checks x^ω * x = x^ω for every element, in element order, using the
  /// theory's ω structure.
  AperiodicityVerdict is_aperiodic(const Theory& theory, const FiniteAlgebra& m);

  /// As above for a monoid of the (ordered) monoid theory.
  AperiodicityVerdict is_aperiodic(const FiniteAlgebra& m);

  struct StarFreeVerdict {
    bool                star_free;
    RecognizingMorphism morphism;
    /// Non-aperiodic element and its transformation.
    std::optional<Element>        witness;
    std::optional<Transformation> witness_transformation;
  };

  StarFreeVerdict classify_star_free(const DFA&    d,
                                     std::uint64_t budget = kDefaultMonoidBudget);

}  // namespace profinite
