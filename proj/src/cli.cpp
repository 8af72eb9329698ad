#include "profinite/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>

#include <CLI11.hpp>

#include "profinite/approx.hpp"
#include "profinite/diagram.hpp"
#include "profinite/enumerate.hpp"
#include "profinite/error.hpp"
#include "profinite/io.hpp"
#include "profinite/languages.hpp"
#include "profinite/pseudovariety.hpp"
#include "profinite/term_parser.hpp"

namespace profinite::cli {

  using nlohmann::ordered_json;

  namespace {

    struct Options {
      std::string   format = "text";
      std::uint64_t budget = kDefaultBudget;
      bool          budget_given = false;  // by flag or environment
    };

    bool is_monoid_signature(const Signature& sig) {
      auto const& m = Theory::monoid().signature();
      return sig.sorts() == m.sorts() && sig.ops() == m.ops();
    }

    Theory theory_for(const FiniteAlgebra& a) {
      if (is_monoid_signature(a.signature())) {
        return Theory::monoid(a.ordered());
      }
      return Theory::plain(a.signature_ptr());
    }

    FiniteAlgebra load_algebra(const std::string& path) {
      std::string text = read_file(path);
      try {
        FiniteAlgebra a      = parse_algebra(text);
        Theory        theory = theory_for(a);
        return parse_algebra(text, &theory);
      } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
      }
    }

    // Rebuilds every algebra over the signature object of the first, so
    // they can be combined.
    std::vector<FiniteAlgebra> load_algebras(const std::vector<std::string>& paths) {
      std::vector<FiniteAlgebra> out;
      for (auto const& p : paths) {
        FiniteAlgebra a = load_algebra(p);
        if (!out.empty()) {
          require_same_signature(out[0], a, p.c_str());
          a = FiniteAlgebra(out[0].signature_ptr(), a.carriers(), a.tables(), a.orders());
        }
        out.push_back(std::move(a));
      }
      return out;
    }

    std::string assignment_string(const VarContext& vars, const Assignment& f) {
      std::string out;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i > 0) {
          out += ", ";
        }
        out += vars[i].name + "=" + std::to_string(f[i]);
      }
      return out;
    }

    ordered_json assignment_json(const VarContext& vars, const Assignment& f) {
      ordered_json out = ordered_json::object();
      for (std::size_t i = 0; i < vars.size(); ++i) {
        out[vars[i].name] = f[i];
      }
      return out;
    }

    std::string tuple_string(const std::vector<Element>& t) {
      std::string out = "(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        out += (i > 0 ? ", " : "") + std::to_string(t[i]);
      }
      return out + ")";
    }

    // One line per algebra: carrier sizes then every table.
    std::string algebra_line(const FiniteAlgebra& a) {
      auto        doc = algebra_to_json(a);
      std::string out = "size " + carrier_string(a);
      for (auto const& op : doc["ops"]) {
        out += "  " + op["name"].get<std::string>() + "=" + op["table"].dump();
      }
      if (doc.contains("order")) {
        for (auto it = doc["order"].begin(); it != doc["order"].end(); ++it) {
          std::string rows;
          for (auto const& row : it.value()) {
            rows += rows.empty() ? "" : ",";
            std::string bits;
            for (auto const& b : row) {
              bits += b.get<bool>() ? "1" : "0";
            }
            rows += bits;
          }
          out += "  order(" + it.key() + ")=" + rows;
        }
      }
      return out;
    }

    void emit_json(std::ostream& out, const ordered_json& doc) {
      out << pretty(doc) << "\n";
    }

    ////////////////////////////////////////////////////////////////////
    // Commands
    ////////////////////////////////////////////////////////////////////

    int cmd_check(const Options&     opt,
                  const std::string& algebra_path,
                  const std::string& equations_path,
                  std::ostream&      out) {
      FiniteAlgebra a      = load_algebra(algebra_path);
      Theory        theory = theory_for(a);
      std::vector<OmegaEquation> eqs;
      try {
        eqs = parse_equation_file(read_file(equations_path), theory);
      } catch (const InputError& e) {
        throw InputError(equations_path + ": " + e.what());
      }
      ordered_json results = ordered_json::array();
      for (auto const& eq : eqs) {
        auto        v    = satisfies(theory, a, eq);
        std::string text = to_string(eq, theory);
        if (opt.format == "json") {
          ordered_json r;
          r["equation"] = text;
          r["holds"]    = v.holds;
          if (!v.holds) {
            r["counterexample"] = assignment_json(eq.vars, *v.counterexample);
          }
          results.push_back(r);
        } else if (v.holds) {
          out << "SAT    " << text << "\n";
        } else {
          out << "UNSAT  " << text << "    [" << assignment_string(eq.vars, *v.counterexample)
              << "]\n";
        }
      }
      if (opt.format == "json") {
        ordered_json doc;
        doc["results"] = results;
        emit_json(out, doc);
      }
      return kOk;
    }

    int cmd_classify(const Options& opt, const std::string& path, std::ostream& out) {
      DFA d = [&] {
        try {
          return parse_dfa(read_file(path));
        } catch (const InputError& e) {
          throw InputError(path + ": " + e.what());
        }
      }();
      auto v = classify_star_free(d, opt.budget_given ? opt.budget : kDefaultMonoidBudget);
      std::size_t size = v.morphism.monoid.carrier(0);
      if (opt.format == "json") {
        ordered_json doc;
        doc["star_free"]      = v.star_free;
        doc["minimal_states"] = v.morphism.minimal.state_count();
        doc["monoid_size"]    = size;
        doc["witness"] = v.witness_transformation ? ordered_json(*v.witness_transformation)
                                                  : ordered_json(nullptr);
        doc["minimal_dfa"] = ordered_json::parse(serialize_dfa(v.morphism.minimal));
        doc["monoid"]      = algebra_to_json(v.morphism.monoid);
        emit_json(out, doc);
        return kOk;
      }
      out << (v.star_free ? "star-free" : "not star-free") << "; minimal states "
          << v.morphism.minimal.state_count() << "; monoid size " << size;
      if (v.witness_transformation) {
        out << "; witness " << tuple_string(*v.witness_transformation);
      }
      out << "\n";
      return kOk;
    }

    int cmd_closure(const Options&                  opt,
                    const std::vector<std::string>& paths,
                    std::size_t                     max_size,
                    std::size_t                     product_budget,
                    std::ostream&                   out) {
      auto seeds = load_algebras(paths);
      if (product_budget == 0) {
        product_budget = max_size * max_size;
      }
      auto c = hsp_closure(seeds, max_size, product_budget, opt.budget);
      if (opt.format == "json") {
        ordered_json doc;
        doc["truncated"] = c.truncated;
        ordered_json list = ordered_json::array();
        for (auto const& a : c.classes) {
          list.push_back(algebra_to_json(a));
        }
        doc["classes"] = list;
        emit_json(out, doc);
        return kOk;
      }
      out << "classes: " << c.classes.size() << "\n";
      out << "truncated: " << (c.truncated ? "yes" : "no") << "\n";
      for (std::size_t i = 0; i < c.classes.size(); ++i) {
        out << i << ": " << algebra_line(c.classes[i]) << "\n";
      }
      return kOk;
    }

    int cmd_separate(const Options&                  opt,
                     const std::vector<std::string>& inside_paths,
                     const std::string&              outside_path,
                     std::size_t                     max_vars,
                     std::size_t                     max_depth,
                     std::ostream&                   out) {
      std::vector<std::string> paths = inside_paths;
      paths.push_back(outside_path);
      auto          all     = load_algebras(paths);
      FiniteAlgebra outside = all.back();
      all.pop_back();
      Theory theory = theory_for(outside);
      auto   s      = separate(theory, all, outside, max_vars, max_depth, opt.budget);
      if (opt.format == "json") {
        ordered_json doc;
        if (s) {
          doc["equation"] = to_string(s->equation, theory);
          doc["witness"]  = assignment_json(s->equation.vars, s->witness);
        } else {
          doc["equation"] = nullptr;
        }
        emit_json(out, doc);
        return kOk;
      }
      if (!s) {
        out << "none\n";
        return kOk;
      }
      out << to_string(s->equation, theory) << "\n";
      out << "witness: " << assignment_string(s->equation.vars, s->witness) << "\n";
      return kOk;
    }

    std::vector<Term> words_up_to(std::size_t nvars, std::size_t length) {
      constexpr OpId    mul = 0, one = 1;
      std::vector<Term> out{Term::op(one)};
      std::vector<std::vector<std::size_t>> level{{}};
      for (std::size_t len = 1; len <= length; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (auto const& w : level) {
          for (std::size_t v = 0; v < nvars; ++v) {
            auto u = w;
            u.push_back(v);
            next.push_back(std::move(u));
          }
        }
        for (auto const& w : next) {
          Term t = Term::var(w[0]);
          for (std::size_t i = 1; i < w.size(); ++i) {
            t = Term::op(mul, {std::move(t), Term::var(w[i])});
          }
          out.push_back(std::move(t));
        }
        level = std::move(next);
      }
      return out;
    }

    int cmd_approx(const Options&     opt,
                   const std::string& vars_text,
                   std::size_t        k,
                   std::size_t        word_length,
                   bool               ordered,
                   std::ostream&      out) {
      Theory     theory = Theory::monoid(ordered);
      VarContext vars   = parse_var_context(vars_text, theory);
      if (vars.empty()) {
        throw InputError("approx: no variables");
      }
      ProfiniteApprox p(theory, vars, k, opt.budget);
      if (opt.format == "dot") {
        out << to_dot(p.diagram());
        return kOk;
      }
      std::optional<ProfiniteApprox> coarser;
      std::optional<SortedMap>       refine;
      if (k > 1) {
        coarser.emplace(theory, vars, k - 1, opt.budget);
        refine = refinement_map(p, *coarser);
      }
      auto const& lim   = p.limit();
      auto        words = words_up_to(vars.size(), word_length);
      if (opt.format == "json") {
        ordered_json doc;
        doc["objects"] = p.diagram().pointed.size();
        doc["arrows"]  = p.diagram().diagram.arrows().size();
        doc["limit"]   = lim.algebra().carrier(0);
        if (refine) {
          doc["coarser_limit"] = coarser->limit().algebra().carrier(0);
          doc["refinement"]    = (*refine)[0];
        }
        ordered_json phi = ordered_json::array();
        for (auto const& w : words) {
          Element      x = p.phi_embed(w);
          ordered_json e;
          e["word"]    = to_string(w, theory, vars);
          e["element"] = x;
          e["tuple"]   = lim.tuple(0, x);
          phi.push_back(e);
        }
        doc["phi"] = phi;
        emit_json(out, doc);
        return kOk;
      }
      out << "objects: " << p.diagram().pointed.size() << "\n";
      out << "arrows: " << p.diagram().diagram.arrows().size() << "\n";
      out << "limit: " << lim.algebra().carrier(0) << "\n";
      if (refine) {
        out << "refines onto k=" << (k - 1) << " limit of " << coarser->limit().algebra().carrier(0)
            << ": " << tuple_string((*refine)[0]) << "\n";
      }
      out << "phi:\n";
      for (auto const& w : words) {
        Element x = p.phi_embed(w);
        out << "  " << to_string(w, theory, vars) << " -> " << x << " "
            << tuple_string(lim.tuple(0, x)) << "\n";
      }
      return kOk;
    }

    int cmd_limit(const Options& opt, const std::string& path, std::ostream& out) {
      std::string   base = std::filesystem::path(path).parent_path().string();
      FiniteDiagram d;
      try {
        d = parse_diagram(read_file(path), base.empty() ? "." : base);
      } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
      }
      auto cf  = is_cofiltered(d, opt.budget);
      auto lim = limit(d, opt.budget);
      auto const& sig = lim.algebra().signature();
      if (opt.format == "json") {
        ordered_json doc;
        doc["objects"]    = d.size();
        doc["arrows"]     = d.arrows().size();
        doc["cofiltered"] = cf.cofiltered;
        doc["limit"]      = algebra_to_json(lim.algebra());
        ordered_json tuples = ordered_json::object();
        for (SortId s = 0; s < sig.sort_count(); ++s) {
          tuples[sig.sorts()[s]] = lim.tuples()[s];
        }
        doc["tuples"] = tuples;
        emit_json(out, doc);
        return kOk;
      }
      out << "objects: " << d.size() << "\n";
      out << "arrows: " << d.arrows().size() << "\n";
      out << "cofiltered: " << (cf.cofiltered ? "yes" : "no (" + cf.message + ")") << "\n";
      for (SortId s = 0; s < sig.sort_count(); ++s) {
        out << "limit " << sig.sorts()[s] << ": " << lim.algebra().carrier(s) << "\n";
        for (Element x = 0; x < lim.algebra().carrier(s); ++x) {
          out << "  " << x << " " << tuple_string(lim.tuple(s, x)) << "\n";
        }
      }
      return kOk;
    }

    int cmd_enumerate(const Options&     opt,
                      std::size_t        max_size,
                      bool               ordered,
                      const std::string& laws_path,
                      std::ostream&      out) {
      Theory                     theory = Theory::monoid(ordered);
      std::vector<OmegaEquation> laws;
      if (!laws_path.empty()) {
        try {
          laws = parse_equation_file(read_file(laws_path), theory);
        } catch (const InputError& e) {
          throw InputError(laws_path + ": " + e.what());
        }
      }
      auto classes = enumerate_algebras(theory, max_size, laws, opt.budget);
      if (opt.format == "json") {
        out << serialize_algebra_list(classes);
        return kOk;
      }
      out << "classes: " << classes.size() << "\n";
      for (std::size_t i = 0; i < classes.size(); ++i) {
        out << i << ": " << algebra_line(classes[i]) << "\n";
      }
      return kOk;
    }

    std::optional<std::uint64_t> env_budget() {
      const char* v = std::getenv(kBudgetVariable);
      if (v == nullptr || *v == '\0') {
        return std::nullopt;
      }
      char*              end = nullptr;
      unsigned long long n   = std::strtoull(v, &end, 10);
      if (*end != '\0' || n == 0) {
        throw InputError(std::string(kBudgetVariable) + " must be a positive integer");
      }
      return n;
    }

  }  // namespace

  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite algebras, pseudovarieties and profinite approximations", "profinite"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    Options                   opt;
    std::optional<std::uint64_t> budget_flag;
    auto add_common = [&](CLI::App* sub, std::vector<std::string> formats) {
      sub->add_option("--format", opt.format, "Output format")
          ->check(CLI::IsMember(formats))
          ->capture_default_str();
      sub->add_option("--budget", budget_flag, "Search budget (work units)")
          ->check(CLI::PositiveNumber);
    };

    std::string algebra_path, equations_path;
    auto*       check = app.add_subcommand("check", "Check equations in an algebra");
    check->add_option("--algebra", algebra_path, "Algebra file")->required();
    check->add_option("--equations", equations_path, "Equation file")->required();
    add_common(check, {"text", "json"});

    std::string dfa_path;
    auto*       classify = app.add_subcommand("classify", "Star-freeness of a DFA language");
    classify->add_option("--dfa", dfa_path, "DFA file")->required();
    add_common(classify, {"text", "json"});

    std::vector<std::string> closure_paths;
    std::size_t              max_size = 0, product_budget = 0;
    auto* closure = app.add_subcommand("closure", "Closure under quotients, subalgebras, products");
    closure->add_option("--algebras", closure_paths, "Seed algebra files")->required();
    closure->add_option("--max-size", max_size, "Largest carrier kept")
        ->required()
        ->check(CLI::PositiveNumber);
    closure->add_option("--product-budget", product_budget,
                        "Largest carrier of intermediate products (default max-size^2)");
    add_common(closure, {"text", "json"});

    std::vector<std::string> inside_paths;
    std::string              outside_path;
    std::size_t              max_vars = 2, max_depth = 3;
    auto* sep = app.add_subcommand("separate", "Find an equation separating algebras");
    sep->add_option("--inside", inside_paths, "Algebras that must satisfy it");
    sep->add_option("--outside", outside_path, "Algebra that must fail it")->required();
    sep->add_option("--max-vars", max_vars, "Number of variables")->capture_default_str();
    sep->add_option("--max-depth", max_depth, "Term depth")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_common(sep, {"text", "json"});

    std::string vars_text = "x";
    std::size_t k = 2, word_length = 3;
    bool        approx_ordered = false;
    auto* approx = app.add_subcommand("approx", "Finite approximation of the free profinite monoid");
    approx->add_option("--vars", vars_text, "Variables, space separated")->capture_default_str();
    approx->add_option("--k", k, "Size bound")->capture_default_str()->check(CLI::PositiveNumber);
    approx->add_option("--words", word_length, "Longest word in the phi table")
        ->capture_default_str();
    approx->add_flag("--ordered", approx_ordered, "Use ordered monoids");
    add_common(approx, {"text", "json", "dot"});

    std::string diagram_path;
    auto*       lim = app.add_subcommand("limit", "Limit of a finite diagram");
    lim->add_option("--diagram", diagram_path, "Diagram file")->required();
    add_common(lim, {"text", "json"});

    std::size_t enum_size = 0;
    bool        enum_ordered = false;
    std::string laws_path;
    auto*       en = app.add_subcommand("enumerate", "Monoids up to isomorphism");
    en->add_option("--max-size", enum_size, "Largest carrier")
        ->required()
        ->check(CLI::PositiveNumber);
    en->add_flag("--ordered", enum_ordered, "Ordered monoids");
    en->add_option("--laws", laws_path, "Extra laws (equation file)");
    add_common(en, {"text", "json"});

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n\n" << app.help();
      return kInputError;
    }

    try {
      if (!budget_flag) {
        budget_flag = env_budget();
      }
      opt.budget_given = budget_flag.has_value();
      opt.budget       = budget_flag.value_or(kDefaultBudget);
      if (check->parsed()) {
        return cmd_check(opt, algebra_path, equations_path, out);
      }
      if (classify->parsed()) {
        return cmd_classify(opt, dfa_path, out);
      }
      if (closure->parsed()) {
        return cmd_closure(opt, closure_paths, max_size, product_budget, out);
      }
      if (sep->parsed()) {
        return cmd_separate(opt, inside_paths, outside_path, max_vars, max_depth, out);
      }
      if (approx->parsed()) {
        return cmd_approx(opt, vars_text, k, word_length, approx_ordered, out);
      }
      if (lim->parsed()) {
        return cmd_limit(opt, diagram_path, out);
      }
      if (en->parsed()) {
        return cmd_enumerate(opt, enum_size, enum_ordered, laws_path, out);
      }
    } catch (const BudgetExceeded& e) {
      err << "budget exceeded: " << e.what() << "\n";
      return kBudgetExceeded;
    } catch (const InputError& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    }
    err << app.help();
    return kInputError;
  }

}  // namespace profinite::cli
