#include "profinite/io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "profinite/error.hpp"

namespace profinite {

  using nlohmann::json;
  using nlohmann::ordered_json;

  namespace {

    ordered_json nested_table(const FiniteAlgebra& a, OpId op) {
      auto const& sym = a.signature().op(op);
      auto const& t   = a.table(op);
      if (sym.arity() == 0) {
        return t.empty() ? ordered_json(nullptr) : ordered_json(t[0]);
      }
      // build recursively over argument positions
      std::function<ordered_json(std::size_t, std::size_t)> build
          = [&](std::size_t pos, std::size_t prefix) -> ordered_json {
        if (pos == sym.arity()) {
          return t[prefix];
        }
        ordered_json arr = ordered_json::array();
        for (std::size_t x = 0; x < a.carrier(sym.domain[pos]); ++x) {
          arr.push_back(build(pos + 1, prefix * a.carrier(sym.domain[pos]) + x));
        }
        return arr;
      };
      return build(0, 0);
    }

    void flatten_table(const json&                   node,
                       const std::vector<std::size_t>& shape,
                       std::size_t                   pos,
                       std::vector<Element>&         out,
                       const std::string&            name) {
      if (pos == shape.size()) {
        if (!node.is_number_unsigned() && !node.is_number_integer()) {
          throw InputError("table not total: op '" + name + "' has a non-integer entry");
        }
        auto v = node.get<long long>();
        if (v < 0) {
          throw InputError("table not total: op '" + name + "' has a negative entry");
        }
        out.push_back(static_cast<Element>(v));
        return;
      }
      if (!node.is_array() || node.size() != shape[pos]) {
        throw InputError("table not total: op '" + name + "' has a row of the wrong length");
      }
      for (auto const& child : node) {
        flatten_table(child, shape, pos + 1, out, name);
      }
    }

    template <typename T>
    T get_field(const json& doc, const char* key, const char* what) {
      if (!doc.contains(key)) {
        throw InputError(std::string(what) + ": missing field '" + key + "'");
      }
      try {
        return doc.at(key).get<T>();
      } catch (const json::exception&) {
        throw InputError(std::string(what) + ": malformed field '" + key + "'");
      }
    }

  }  // namespace

  ordered_json algebra_to_json(const FiniteAlgebra& a) {
    auto const&  sig = a.signature();
    ordered_json doc;
    doc["sorts"] = sig.sorts();
    ordered_json ops = ordered_json::array();
    for (OpId op = 0; op < sig.op_count(); ++op) {
      auto const&  sym = sig.op(op);
      ordered_json o;
      o["name"]        = sym.name;
      ordered_json dom = ordered_json::array();
      for (SortId s : sym.domain) {
        dom.push_back(sig.sorts()[s]);
      }
      o["dom"]   = dom;
      o["cod"]   = sig.sorts()[sym.codomain];
      o["table"] = nested_table(a, op);
      ops.push_back(o);
    }
    doc["ops"]            = ops;
    ordered_json carriers = ordered_json::object();
    for (SortId s = 0; s < sig.sort_count(); ++s) {
      carriers[sig.sorts()[s]] = a.carrier(s);
    }
    doc["carriers"] = carriers;
    if (a.ordered()) {
      ordered_json order = ordered_json::object();
      for (SortId s = 0; s < sig.sort_count(); ++s) {
        ordered_json m = ordered_json::array();
        for (std::size_t i = 0; i < a.carrier(s); ++i) {
          ordered_json row = ordered_json::array();
          for (std::size_t j = 0; j < a.carrier(s); ++j) {
            row.push_back(a.order(s)(i, j));
          }
          m.push_back(row);
        }
        order[sig.sorts()[s]] = m;
      }
      doc["order"] = order;
    }
    return doc;
  }

  FiniteAlgebra algebra_from_json(const json& doc, const Theory* theory) {
    if (!doc.is_object()) {
      throw InputError("algebra: expected a JSON object");
    }
    auto sorts   = get_field<std::vector<std::string>>(doc, "sorts", "algebra");
    bool ordered = doc.contains("order") && !doc.at("order").is_null();
    if (!doc.contains("ops") || !doc.at("ops").is_array()) {
      throw InputError("algebra: missing field 'ops'");
    }
    auto sort_id = [&](const std::string& name) -> SortId {
      for (SortId s = 0; s < sorts.size(); ++s) {
        if (sorts[s] == name) {
          return s;
        }
      }
      throw InputError("algebra: unknown sort '" + name + "'");
    };
    std::vector<OpSymbol> ops;
    std::vector<json>     raw_tables;
    for (auto const& o : doc.at("ops")) {
      OpSymbol sym;
      sym.name = get_field<std::string>(o, "name", "op");
      for (auto const& d : get_field<std::vector<std::string>>(o, "dom", "op")) {
        sym.domain.push_back(sort_id(d));
      }
      sym.codomain = sort_id(get_field<std::string>(o, "cod", "op"));
      if (!o.contains("table")) {
        throw InputError("table not total: op '" + sym.name + "' has no table");
      }
      raw_tables.push_back(o.at("table"));
      ops.push_back(std::move(sym));
    }
    SignaturePtr sig = make_signature(sorts, ops, ordered);
    if (theory) {
      auto const& tsig = theory->signature();
      if (tsig.sorts() != sig->sorts() || tsig.ops() != sig->ops()) {
        throw InputError("algebra signature does not match theory '" + theory->name()
                         + "'");
      }
      if (tsig.ordered() == ordered) {
        sig = theory->signature_ptr();
      }
    }
    if (!doc.contains("carriers") || !doc.at("carriers").is_object()) {
      throw InputError("algebra: missing field 'carriers'");
    }
    std::vector<std::size_t> carriers(sorts.size(), 0);
    for (SortId s = 0; s < sorts.size(); ++s) {
      auto const& c = doc.at("carriers");
      if (!c.contains(sorts[s]) || !c.at(sorts[s]).is_number_integer()
          || c.at(sorts[s]).get<long long>() < 0) {
        throw InputError("algebra: missing or bad carrier size for sort '" + sorts[s]
                         + "'");
      }
      carriers[s] = c.at(sorts[s]).get<std::size_t>();
    }
    std::vector<std::vector<Element>> tables(ops.size());
    for (OpId op = 0; op < ops.size(); ++op) {
      std::vector<std::size_t> shape;
      for (SortId s : ops[op].domain) {
        shape.push_back(carriers[s]);
      }
      flatten_table(raw_tables[op], shape, 0, tables[op], ops[op].name);
    }
    std::vector<Relation> orders;
    if (ordered) {
      auto const& o = doc.at("order");
      for (SortId s = 0; s < sorts.size(); ++s) {
        if (!o.contains(sorts[s])) {
          throw InputError("algebra: missing order for sort '" + sorts[s] + "'");
        }
        auto const& m = o.at(sorts[s]);
        Relation    r(carriers[s]);
        if (!m.is_array() || m.size() != carriers[s]) {
          throw InputError("algebra: order matrix of the wrong size");
        }
        for (std::size_t i = 0; i < carriers[s]; ++i) {
          if (!m[i].is_array() || m[i].size() != carriers[s]) {
            throw InputError("algebra: order matrix of the wrong size");
          }
          for (std::size_t j = 0; j < carriers[s]; ++j) {
            if (!m[i][j].is_boolean()) {
              throw InputError("algebra: order entries must be booleans");
            }
            r.set(i, j, m[i][j].get<bool>());
          }
        }
        orders.push_back(std::move(r));
      }
    }
    FiniteAlgebra a(sig, std::move(carriers), std::move(tables), std::move(orders));
    auto report = theory && theory->signature().ordered() == ordered
                      ? validate_algebra(a, *theory)
                      : validate_algebra(a);
    if (!report.empty()) {
      std::string msg = "invalid algebra: " + report[0];
      for (std::size_t i = 1; i < report.size(); ++i) {
        msg += "; " + report[i];
      }
      throw InputError(msg);
    }
    return a;
  }

  std::string pretty(const ordered_json& doc) {
    if (doc.is_object() && !doc.empty()) {
      std::string out = "{\n";
      std::size_t i   = 0;
      for (auto it = doc.begin(); it != doc.end(); ++it, ++i) {
        out += "  " + json(it.key()).dump() + ": ";
        if (it.value().is_array() && !it.value().empty()
            && it.value().front().is_object()) {
          out += "[\n";
          for (std::size_t k = 0; k < it.value().size(); ++k) {
            out += "    " + it.value()[k].dump();
            out += k + 1 < it.value().size() ? ",\n" : "\n";
          }
          out += "  ]";
        } else {
          out += it.value().dump();
        }
        out += i + 1 < doc.size() ? ",\n" : "\n";
      }
      return out + "}";
    }
    if (doc.is_array() && !doc.empty()) {
      std::string out = "[\n";
      for (std::size_t k = 0; k < doc.size(); ++k) {
        out += doc[k].dump();
        out += k + 1 < doc.size() ? ",\n" : "\n";
      }
      return out + "]";
    }
    return doc.dump();
  }

  std::string serialize_algebra(const FiniteAlgebra& a) {
    return pretty(algebra_to_json(a)) + "\n";
  }

  json parse_json(std::string_view text) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
  }

  FiniteAlgebra parse_algebra(std::string_view text, const Theory* theory) {
    return algebra_from_json(parse_json(text), theory);
  }

  std::string serialize_algebra_list(const std::vector<FiniteAlgebra>& as) {
    ordered_json arr = ordered_json::array();
    for (auto const& a : as) {
      arr.push_back(algebra_to_json(a));
    }
    return pretty(arr) + "\n";
  }

  std::vector<FiniteAlgebra> parse_algebra_list(std::string_view text,
                                                const Theory*    theory) {
    auto doc = parse_json(text);
    if (!doc.is_array()) {
      throw InputError("expected a JSON array of algebras");
    }
    std::vector<FiniteAlgebra> out;
    for (auto const& d : doc) {
      out.push_back(algebra_from_json(d, theory));
    }
    return out;
  }

  std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw InputError("cannot read file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

}  // namespace profinite
