#include "profinite/term.hpp"

#include <algorithm>

#include "profinite/error.hpp"
#include "profinite/eval.hpp"
#include "profinite/theory.hpp"

namespace profinite {

  ////////////////////////////////////////////////////////////////////////
  // Term
  ////////////////////////////////////////////////////////////////////////

  std::size_t Term::size() const {
    std::size_t n = 1;
    for (auto const& c : children_) {
      n += c.size();
    }
    return n;
  }

  std::size_t Term::depth() const {
    std::size_t d = 0;
    for (auto const& c : children_) {
      d = std::max(d, c.depth());
    }
    return d + 1;
  }

  std::size_t Term::omega_count() const {
    std::size_t n = kind_ == Kind::omega ? 1 : 0;
    for (auto const& c : children_) {
      n += c.omega_count();
    }
    return n;
  }

  std::size_t Term::variable_bound() const {
    std::size_t n = kind_ == Kind::variable ? index_ + 1 : 0;
    for (auto const& c : children_) {
      n = std::max(n, c.variable_bound());
    }
    return n;
  }

  bool Term::operator==(const Term& other) const {
    return kind_ == other.kind_ && index_ == other.index_
           && children_ == other.children_;
  }

  std::strong_ordering Term::operator<=>(const Term& other) const {
    if (auto c = kind_ <=> other.kind_; c != 0) {
      return c;
    }
    if (auto c = index_ <=> other.index_; c != 0) {
      return c;
    }
    std::size_t n = std::min(children_.size(), other.children_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = children_[i] <=> other.children_[i]; c != 0) {
        return c;
      }
    }
    return children_.size() <=> other.children_.size();
  }

  ////////////////////////////////////////////////////////////////////////
  // Theory
  ////////////////////////////////////////////////////////////////////////

  Theory::Theory(std::string                   name,
                 SignaturePtr                  signature,
                 std::vector<OmegaEquation>    laws,
                 std::optional<OmegaStructure> omega,
                 std::optional<OpId>           infix,
                 std::string                   infix_symbol)
      : name_(std::move(name)),
        signature_(std::move(signature)),
        laws_(std::move(laws)),
        omega_(omega),
        infix_(infix),
        infix_symbol_(std::move(infix_symbol)) {
    if (!signature_) {
      throw InputError("theory without signature");
    }
    if (omega_) {
      auto const& mul = signature_->op(omega_->mul);
      if (mul.arity() != 2 || mul.domain[0] != omega_->sort
          || mul.domain[1] != omega_->sort || mul.codomain != omega_->sort) {
        throw InputError("ω-structure needs a binary operation on its sort");
      }
    }
    if (infix_ && signature_->op(*infix_).arity() != 2) {
      throw InputError("infix operation must be binary");
    }
  }

  Theory Theory::monoid(bool ordered) {
    // one shared signature object per flag, so algebras built anywhere
    // compare by pointer
    static const SignaturePtr plain_sig = make_signature(
        {"M"}, {OpSymbol{"mul", {0, 0}, 0}, OpSymbol{"1", {}, 0}}, false);
    static const SignaturePtr ordered_sig
        = std::make_shared<const Signature>(plain_sig->with_order(true));
    auto sig = ordered ? ordered_sig : plain_sig;
    constexpr OpId mul = 0, one = 1;
    auto           x = Term::var(0), y = Term::var(1), z = Term::var(2);
    auto           m = [](Term a, Term b) {
      return Term::op(mul, {std::move(a), std::move(b)});
    };
    VarContext xyz = default_context(3);
    VarContext xs  = default_context(1);
    std::vector<OmegaEquation> laws{
        {xyz, m(m(x, y), z), m(x, m(y, z)), RelationKind::equal},
        {xs, m(Term::op(one), x), x, RelationKind::equal},
        {xs, m(x, Term::op(one)), x, RelationKind::equal},
    };
    return Theory(ordered ? "ordered-monoid" : "monoid", std::move(sig),
                  std::move(laws), OmegaStructure{0, mul, one}, mul, "*");
  }

  Theory Theory::plain(SignaturePtr signature) {
    return Theory("plain", std::move(signature));
  }

  bool Theory::admits(const FiniteAlgebra& a) const {
    return a.signature_ptr() == signature_ || a.signature() == *signature_;
  }

  Theory Theory::with_order(bool ordered) const {
    auto sig = std::make_shared<const Signature>(signature_->with_order(ordered));
    std::string n = name_;
    if (ordered && n.rfind("ordered-", 0) != 0) {
      n = "ordered-" + n;
    } else if (!ordered && n.rfind("ordered-", 0) == 0) {
      n = n.substr(8);
    }
    return Theory(n, sig, laws_, omega_, infix_, infix_symbol_);
  }

  std::vector<std::string> validate_algebra(const FiniteAlgebra& a,
                                            const Theory&        theory) {
    if (!theory.admits(a)) {
      return {"signature does not match theory '" + theory.name() + "'"};
    }
    auto report = validate_algebra(a);
    if (!report.empty()) {
      return report;
    }
    for (auto const& law : theory.laws()) {
      for (auto const& f : all_assignments(a, law.vars)) {
        Element l = eval_implicit(theory, a, law.lhs, f);
        Element r = eval_implicit(theory, a, law.rhs, f);
        bool    ok = law.relation == RelationKind::equal
                      ? l == r
                      : a.leq(sort_of(law.lhs, theory, law.vars), l, r);
        if (!ok) {
          report.push_back("law violated: " + to_string(law, theory));
          break;
        }
      }
    }
    return report;
  }

  std::string default_variable_name(std::size_t i) {
    static const char* names[] = {"x", "y", "z", "u", "v", "w"};
    if (i < 6) {
      return names[i];
    }
    return "x" + std::to_string(i);
  }

  VarContext default_context(std::size_t n, SortId sort) {
    VarContext vars;
    for (std::size_t i = 0; i < n; ++i) {
      vars.push_back(Variable{default_variable_name(i), sort});
    }
    return vars;
  }

  namespace {
    bool is_infix(const Term& t, const Theory& theory) {
      return t.kind() == Term::Kind::operation && theory.infix()
             && t.index() == *theory.infix();
    }
  }  // namespace

  std::string to_string(const Term& t, const Theory& theory, const VarContext& vars) {
    auto const& sig = theory.signature();
    switch (t.kind()) {
      case Term::Kind::variable:
        return t.index() < vars.size() ? vars[t.index()].name
                                       : default_variable_name(t.index());
      case Term::Kind::omega: {
        auto const& c    = t.children()[0];
        std::string body = to_string(c, theory, vars);
        if (is_infix(c, theory)) {
          body = "(" + body + ")";
        }
        return body + "^w";
      }
      case Term::Kind::operation:
        break;
    }
    if (is_infix(t, theory)) {
      auto const& r   = t.children()[1];
      std::string rhs = to_string(r, theory, vars);
      if (is_infix(r, theory)) {
        rhs = "(" + rhs + ")";
      }
      return to_string(t.children()[0], theory, vars) + " " + theory.infix_symbol()
             + " " + rhs;
    }
    std::string out = sig.op(t.index()).name;
    if (t.children().empty()) {
      return out;
    }
    out += "(";
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      if (i > 0) {
        out += ", ";
      }
      out += to_string(t.children()[i], theory, vars);
    }
    return out + ")";
  }

  std::string to_string(const OmegaEquation& eq, const Theory& theory) {
    return to_string(eq.lhs, theory, eq.vars)
           + (eq.relation == RelationKind::equal ? " = " : " <= ")
           + to_string(eq.rhs, theory, eq.vars);
  }

}  // namespace profinite
