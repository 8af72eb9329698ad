#include "profinite/term_parser.hpp"

#include <algorithm>
#include <cctype>

#include "profinite/error.hpp"
#include "profinite/eval.hpp"

namespace profinite {

  namespace {

    bool ident_char(char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    class Parser {
     public:
      Parser(std::string_view text, const Theory& theory, const VarContext& vars)
          : text_(text), theory_(theory), vars_(vars) {}

      Term parse_all() {
        Term t = expr();
        skip_ws();
        if (pos_ != text_.size()) {
          throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        sort_of(t, theory_, vars_);
        return t;
      }

     private:
      void skip_ws() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }

      bool accept(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_, tok.size()) == tok) {
          pos_ += tok.size();
          return true;
        }
        return false;
      }

      bool accept_infix() {
        if (!theory_.infix()) {
          return false;
        }
        if (accept(theory_.infix_symbol())) {
          return true;
        }
        return theory_.infix_symbol() == "*" && accept("·");
      }

      Term expr() {
        Term lhs = postfix();
        while (true) {
          std::size_t at = pos_;
          if (!accept_infix()) {
            pos_ = at;
            return lhs;
          }
          Term rhs = postfix();
          lhs      = Term::op(*theory_.infix(), {std::move(lhs), std::move(rhs)});
        }
      }

      Term postfix() {
        Term t = primary();
        while (true) {
          std::size_t at = pos_;
          if (accept("^w") || accept("^ω")) {
            std::size_t op_at = at;
            skip_ws_from(op_at);
            require_omega(t, op_at);
            t = Term::omega(std::move(t));
          } else {
            pos_ = at;
            return t;
          }
        }
      }

      void skip_ws_from(std::size_t& p) const {
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) {
          ++p;
        }
      }

      void require_omega(const Term& t, std::size_t at) {
        SortId s = sort_at(t, at);
        if (!theory_.omega() || theory_.omega()->sort != s) {
          throw InputError("ω on ineligible sort '" + theory_.signature().sorts()[s]
                           + "' at offset " + std::to_string(at));
        }
      }

      SortId sort_at(const Term& t, std::size_t at) {
        try {
          return sort_of(t, theory_, vars_);
        } catch (const ParseError&) {
          throw;
        } catch (const InputError& e) {
          throw InputError(std::string(e.what()) + " (at offset " + std::to_string(at)
                           + ")");
        }
      }

      Term primary() {
        skip_ws();
        if (pos_ >= text_.size()) {
          throw ParseError(pos_, "unexpected end of input");
        }
        if (text_[pos_] == '(') {
          ++pos_;
          Term t = expr();
          if (!accept(")")) {
            throw ParseError(pos_, "expected ')'");
          }
          return t;
        }
        if (!ident_char(text_[pos_])) {
          throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) {
          ++pos_;
        }
        std::string name(text_.substr(start, pos_ - start));
        std::size_t after = pos_;
        skip_ws();
        auto const& sig = theory_.signature();
        if (pos_ < text_.size() && text_[pos_] == '(') {
          auto op = sig.find_op(name);
          if (!op) {
            throw ParseError(start, "unknown symbol '" + name + "'");
          }
          ++pos_;
          std::vector<Term> args;
          if (!accept(")")) {
            do {
              args.push_back(expr());
            } while (accept(","));
            if (!accept(")")) {
              throw ParseError(pos_, "expected ')' or ','");
            }
          }
          Term t = Term::op(*op, std::move(args));
          sort_at(t, start);
          return t;
        }
        pos_ = after;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
          if (vars_[i].name == name) {
            return Term::var(i);
          }
        }
        if (auto op = sig.find_op(name); op && sig.op(*op).arity() == 0) {
          return Term::op(*op);
        }
        throw ParseError(start, "unknown symbol '" + name + "'");
      }

      std::string_view  text_;
      const Theory&     theory_;
      const VarContext& vars_;
      std::size_t       pos_ = 0;
    };

    std::string_view trim(std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
      }
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
      }
      return s;
    }

  }  // namespace

  Term parse_omega_term(std::string_view  text,
                        const Theory&     theory,
                        const VarContext& vars) {
    return Parser(text, theory, vars).parse_all();
  }

  OmegaEquation parse_equation(std::string_view  text,
                               const Theory&     theory,
                               const VarContext& vars) {
    RelationKind rel = RelationKind::equal;
    std::size_t  at  = text.find("<=");
    std::size_t  len = 2;
    if (at != std::string_view::npos) {
      rel = RelationKind::less_equal;
    } else {
      at  = text.find('=');
      len = 1;
      if (at == std::string_view::npos) {
        throw ParseError(text.size(), "expected '=' or '<='");
      }
    }
    if (rel == RelationKind::less_equal && !theory.signature().ordered()) {
      throw InputError("inequation in unordered theory '" + theory.name() + "'");
    }
    Term lhs = parse_omega_term(text.substr(0, at), theory, vars);
    auto rhs = [&] {
      try {
        return parse_omega_term(text.substr(at + len), theory, vars);
      } catch (const ParseError& e) {
        throw ParseError(e.offset() + at + len, e.detail());
      }
    }();
    if (sort_of(lhs, theory, vars) != sort_of(rhs, theory, vars)) {
      throw InputError("sides of '" + std::string(trim(text)) + "' have different sorts");
    }
    return OmegaEquation{vars, std::move(lhs), std::move(rhs), rel};
  }

  VarContext parse_var_context(std::string_view text, const Theory& theory) {
    VarContext  vars;
    auto const& sig = theory.signature();
    std::size_t i   = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      if (start == i) {
        break;
      }
      std::string_view word = text.substr(start, i - start);
      std::string      name(word);
      SortId           sort = 0;
      if (auto colon = word.find(':'); colon != std::string_view::npos) {
        name = std::string(word.substr(0, colon));
        std::string sname(word.substr(colon + 1));
        auto        s = sig.find_sort(sname);
        if (!s) {
          throw InputError("unknown sort '" + sname + "'");
        }
        sort = *s;
      }
      if (name.empty() || !std::all_of(name.begin(), name.end(), ident_char)) {
        throw InputError("bad variable name '" + name + "'");
      }
      for (auto const& v : vars) {
        if (v.name == name) {
          throw InputError("duplicate variable '" + name + "'");
        }
      }
      if (sig.find_op(name) && sig.op(*sig.find_op(name)).arity() == 0) {
        throw InputError("variable '" + name + "' shadows a constant");
      }
      vars.push_back(Variable{name, sort});
    }
    return vars;
  }

  std::vector<OmegaEquation> parse_equation_file(std::string_view text,
                                                 const Theory&    theory) {
    std::vector<OmegaEquation> out;
    std::optional<VarContext>  vars;
    std::size_t                line_no = 0;
    while (!text.empty()) {
      ++line_no;
      std::size_t      nl   = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
      if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) {
        continue;
      }
      auto where = [&](const std::exception& e) {
        return "line " + std::to_string(line_no) + ": " + e.what();
      };
      if (line.rfind("vars:", 0) == 0) {
        if (vars) {
          throw InputError("line " + std::to_string(line_no) + ": second vars header");
        }
        try {
          vars = parse_var_context(line.substr(5), theory);
        } catch (const InputError& e) {
          throw InputError(where(e));
        }
        continue;
      }
      if (!vars) {
        throw InputError("line " + std::to_string(line_no)
                         + ": relation before the 'vars:' header");
      }
      try {
        out.push_back(parse_equation(line, theory, *vars));
      } catch (const ParseError& e) {
        throw ParseError(e.offset(),
                         "line " + std::to_string(line_no) + ": " + e.detail());
      } catch (const InputError& e) {
        throw InputError(where(e));
      }
    }
    return out;
  }

}  // namespace profinite
