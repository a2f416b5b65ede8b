/**
 * @file io.cpp
 * @brief Native JSON and MPS instance readers, native JSON writer.
 */
#include "vpcforge/instance.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

namespace vpcforge {

using json = nlohmann::json;

namespace {

constexpr const char* kFormatTag = "vpc-forge-instance";
constexpr int kFormatVersion = 1;

json bound_to_json(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

const char* sense_token(Sense s) {
  switch (s) {
    case Sense::Ge: return ">=";
    case Sense::Le: return "<=";
    case Sense::Eq: return "=";
  }
  return ">=";
}

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void schema_error(const std::string& what) { throw ParseError(1, 1, what); }

Instance parse_native(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(line, col, e.what());
  }
  if (!doc.is_object()) schema_error("top-level value must be an object");
  if (doc.value("format", std::string{}) != kFormatTag)
    schema_error(std::string("missing format tag \"") + kFormatTag + "\"");
  if (doc.value("version", 0) != kFormatVersion)
    schema_error("unsupported version (expected " + std::to_string(kFormatVersion) + ")");

  Instance inst;
  try {
    inst.name = doc.value("name", std::string{});
    const std::string sense = doc.value("sense", std::string("min"));
    if (sense != "min" && sense != "max") schema_error("sense must be \"min\" or \"max\"");
    inst.maximize = sense == "max";

    const auto& vars = doc.at("variables");
    const std::size_t n = vars.size();
    inst.lp.bounds.resize(n);
    inst.integer.assign(n, false);
    inst.var_names.resize(n);
    std::unordered_map<std::string, int> by_name;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = vars[j];
      inst.var_names[j] = v.value("name", "x" + std::to_string(j + 1));
      by_name[inst.var_names[j]] = static_cast<int>(j);
      const auto lo = v.contains("lo") ? v.at("lo") : json(0.0);
      const auto hi = v.contains("hi") ? v.at("hi") : json(nullptr);
      inst.lp.bounds[j].lo = lo.is_null() ? -kInf : lo.get<double>();
      inst.lp.bounds[j].hi = hi.is_null() ? kInf : hi.get<double>();
      inst.integer[j] = v.value("integer", false);
    }
    const auto& obj = doc.at("objective");
    if (obj.size() != n) schema_error("objective length differs from variable count");
    inst.lp.objective = obj.get<std::vector<double>>();

    for (const auto& r : doc.value("rows", json::array())) {
      SparseRow row;
      inst.row_names.push_back(r.value("name", "r" + std::to_string(inst.lp.rows.size() + 1)));
      const std::string s = r.at("sense").get<std::string>();
      if (s == ">=") row.sense = Sense::Ge;
      else if (s == "<=") row.sense = Sense::Le;
      else if (s == "=" || s == "==") row.sense = Sense::Eq;
      else schema_error("unknown row sense \"" + s + "\"");
      row.rhs = r.at("rhs").get<double>();
      for (const auto& entry : r.at("coefs")) {
        int j = -1;
        if (entry.at(0).is_string()) {
          auto it = by_name.find(entry.at(0).get<std::string>());
          if (it == by_name.end()) schema_error("unknown variable " + entry.at(0).dump());
          j = it->second;
        } else {
          j = entry.at(0).get<int>();
        }
        if (j < 0 || static_cast<std::size_t>(j) >= n) schema_error("variable index out of range");
        row.push(j, entry.at(1).get<double>());
      }
      inst.lp.rows.push_back(std::move(row));
    }
    if (doc.contains("reference")) {
      const auto& ref = doc.at("reference");
      if (ref.contains("lp_value") && !ref.at("lp_value").is_null())
        inst.reference.lp_value = ref.at("lp_value").get<double>();
      if (ref.contains("ip_value") && !ref.at("ip_value").is_null())
        inst.reference.ip_value = ref.at("ip_value").get<double>();
    }
    if (doc.value("standardized", false)) {
      const auto& t = doc.at("transform");
      inst.standardized = true;
      inst.transform.shift = t.at("shift").get<std::vector<double>>();
      inst.transform.sign = t.at("sign").get<std::vector<int>>();
      inst.transform.obj_sign = t.at("obj_sign").get<int>();
      inst.transform.obj_offset = t.at("obj_offset").get<double>();
      inst.transform.row_origin = t.at("row_origin").get<std::vector<int>>();
      inst.transform.row_sign = t.at("row_sign").get<std::vector<int>>();
    }
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
  inst.lp.validate();
  return inst;
}

// ---------------------------------------------------------------------------
// MPS

struct Token {
  std::string text;
  int col;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

class MpsReader {
 public:
  explicit MpsReader(std::string_view text) : text_(text) {}

  Instance read() {
    std::istringstream in{std::string(text_)};
    std::string line;
    enum class Sec { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, End } sec = Sec::None;
    while (std::getline(in, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '*') continue;
      auto toks = tokenize(line);
      if (toks.empty()) continue;
      const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
      if (header) {
        const std::string key = upper(toks[0].text);
        if (key == "NAME") {
          sec = Sec::Name;
          if (toks.size() > 1) inst_.name = toks[1].text;
          continue;
        }
        if (key == "OBJSENSE") {
          sec = Sec::ObjSense;
          if (toks.size() > 1) set_objsense(toks[1]);
          continue;
        }
        if (key == "ROWS") { sec = Sec::Rows; continue; }
        if (key == "COLUMNS") { sec = Sec::Columns; continue; }
        if (key == "RHS") { sec = Sec::Rhs; continue; }
        if (key == "RANGES") { sec = Sec::Ranges; continue; }
        if (key == "BOUNDS") { sec = Sec::Bounds; continue; }
        if (key == "ENDATA") { sec = Sec::End; break; }
        if (key == "SOS" || key == "QUADOBJ" || key == "QSECTION" || key == "QMATRIX" ||
            key == "QCMATRIX" || key == "INDICATORS" || key == "CSECTION" ||
            key == "GENERAL" || key == "PWLOBJ")
          throw Error(ErrorCode::UnsupportedFeature,
                      "MPS section " + key + " (line " + std::to_string(lineno_) + ")");
        // Free-format files may indent nothing; treat unknown headers as data of
        // the current section only if the section expects data.
        if (sec == Sec::None || sec == Sec::Name)
          throw ParseError(lineno_, toks[0].col, "unknown section " + toks[0].text);
      }
      switch (sec) {
        case Sec::ObjSense: set_objsense(toks[0]); break;
        case Sec::Rows: read_row(toks); break;
        case Sec::Columns: read_column(toks); break;
        case Sec::Rhs: read_rhs(toks); break;
        case Sec::Ranges: read_range(toks); break;
        case Sec::Bounds: read_bound(toks); break;
        default: throw ParseError(lineno_, toks[0].col, "data outside of a section");
      }
    }
    if (sec != Sec::End) throw ParseError(lineno_ + 1, 1, "missing ENDATA");
    return finish();
  }

 private:
  struct RowInfo {
    char type = 'G';
    double rhs = 0.0;
    std::optional<double> range;
    SparseRow coefs;
  };

  void set_objsense(const Token& t) {
    const std::string v = upper(t.text);
    if (v == "MAX" || v == "MAXIMIZE") inst_.maximize = true;
    else if (v == "MIN" || v == "MINIMIZE") inst_.maximize = false;
    else throw ParseError(lineno_, t.col, "unknown OBJSENSE " + t.text);
  }

  void read_row(const std::vector<Token>& t) {
    if (t.size() < 2) throw ParseError(lineno_, t[0].col, "ROWS entry needs type and name");
    const std::string type = upper(t[0].text);
    if (type.size() != 1 || std::string("NLGE").find(type[0]) == std::string::npos)
      throw ParseError(lineno_, t[0].col, "unknown row type " + t[0].text);
    if (type[0] == 'N') {
      if (objective_.empty()) objective_ = t[1].text;
      else free_rows_.insert({t[1].text, 0});
      return;
    }
    if (row_index_.count(t[1].text)) throw ParseError(lineno_, t[1].col, "duplicate row " + t[1].text);
    row_index_[t[1].text] = static_cast<int>(rows_.size());
    row_names_.push_back(t[1].text);
    RowInfo info;
    info.type = type[0];
    rows_.push_back(std::move(info));
  }

  int column(const std::string& name) {
    auto it = col_index_.find(name);
    if (it != col_index_.end()) return it->second;
    const int j = static_cast<int>(col_names_.size());
    col_index_[name] = j;
    col_names_.push_back(name);
    obj_.push_back(0.0);
    integer_.push_back(in_integer_block_);
    bounds_.push_back({0.0, kInf});
    return j;
  }

  double number(const Token& t) {
    try {
      std::size_t used = 0;
      const double v = std::stod(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ParseError(lineno_, t.col, "expected a number, got \"" + t.text + "\"");
    }
  }

  void add_entry(int j, const Token& row, const Token& val) {
    const double v = number(val);
    if (row.text == objective_) {
      obj_[j] += v;
      return;
    }
    if (free_rows_.count(row.text)) return;
    auto it = row_index_.find(row.text);
    if (it == row_index_.end()) throw ParseError(lineno_, row.col, "unknown row " + row.text);
    rows_[it->second].coefs.push(j, v);
  }

  void read_column(const std::vector<Token>& t) {
    if (t.size() >= 3 && upper(t[1].text) == "'MARKER'") {
      const std::string kind = upper(t[2].text);
      if (kind == "'INTORG'") in_integer_block_ = true;
      else if (kind == "'INTEND'") in_integer_block_ = false;
      else throw ParseError(lineno_, t[2].col, "unknown marker " + t[2].text);
      return;
    }
    if (t.size() != 3 && t.size() != 5)
      throw ParseError(lineno_, t[0].col, "COLUMNS entry needs 3 or 5 fields");
    const int j = column(t[0].text);
    if (in_integer_block_) integer_[j] = true;
    add_entry(j, t[1], t[2]);
    if (t.size() == 5) add_entry(j, t[3], t[4]);
  }

  bool is_row_name(const std::string& s) const {
    return s == objective_ || row_index_.count(s) || free_rows_.count(s);
  }

  template <typename F>
  void pairs(const std::vector<Token>& t, F&& apply) {
    std::size_t start = 1;
    if ((t.size() == 2 || t.size() == 4) && is_row_name(t[0].text)) start = 0;
    if ((t.size() - start) % 2 != 0 || t.size() - start == 0)
      throw ParseError(lineno_, t[0].col, "expected name/value pairs");
    for (std::size_t k = start; k + 1 < t.size(); k += 2) apply(t[k], t[k + 1]);
  }

  void read_rhs(const std::vector<Token>& t) {
    pairs(t, [&](const Token& row, const Token& val) {
      const double v = number(val);
      if (row.text == objective_ || free_rows_.count(row.text)) return; // objective constant dropped
      auto it = row_index_.find(row.text);
      if (it == row_index_.end()) throw ParseError(lineno_, row.col, "unknown row " + row.text);
      rows_[it->second].rhs = v;
    });
  }

  void read_range(const std::vector<Token>& t) {
    pairs(t, [&](const Token& row, const Token& val) {
      auto it = row_index_.find(row.text);
      if (it == row_index_.end()) throw ParseError(lineno_, row.col, "unknown row " + row.text);
      rows_[it->second].range = number(val);
    });
  }

  void read_bound(const std::vector<Token>& t) {
    if (t.size() < 2) throw ParseError(lineno_, t[0].col, "BOUNDS entry too short");
    const std::string type = upper(t[0].text);
    const bool needs_value = type == "UP" || type == "LO" || type == "FX" || type == "LI" ||
                             type == "UI";
    const bool no_value = type == "FR" || type == "MI" || type == "PL" || type == "BV";
    if (type == "SC") throw Error(ErrorCode::UnsupportedFeature, "semi-continuous bound (SC)");
    if (!needs_value && !no_value) throw ParseError(lineno_, t[0].col, "unknown bound type " + t[0].text);
    // Layout: TYPE [set] COL [value]; the set name is optional in free format.
    std::size_t col_tok;
    if (needs_value) col_tok = t.size() >= 4 ? 2 : 1;
    else col_tok = t.size() >= 3 ? 2 : 1;
    if (col_tok >= t.size()) throw ParseError(lineno_, t[0].col, "BOUNDS entry missing column");
    auto it = col_index_.find(t[col_tok].text);
    if (it == col_index_.end())
      throw ParseError(lineno_, t[col_tok].col, "unknown column " + t[col_tok].text);
    const int j = it->second;
    double v = 0.0;
    if (needs_value) {
      if (col_tok + 1 >= t.size()) throw ParseError(lineno_, t[0].col, "BOUNDS entry missing value");
      v = number(t[col_tok + 1]);
    }
    auto& b = bounds_[j];
    if (type == "UP" || type == "UI") {
      b.hi = v;
      if (v < 0.0 && b.lo == 0.0) b.lo = -kInf;
      if (type == "UI") integer_[j] = true;
    } else if (type == "LO" || type == "LI") {
      b.lo = v;
      if (type == "LI") integer_[j] = true;
    } else if (type == "FX") {
      b.lo = b.hi = v;
    } else if (type == "FR") {
      b.lo = -kInf;
      b.hi = kInf;
    } else if (type == "MI") {
      b.lo = -kInf;
    } else if (type == "PL") {
      b.hi = kInf;
    } else if (type == "BV") {
      b.lo = 0.0;
      b.hi = 1.0;
      integer_[j] = true;
    }
  }

  Instance finish() {
    const std::size_t n = col_names_.size();
    inst_.lp.objective = obj_;
    inst_.lp.bounds = bounds_;
    inst_.integer.assign(n, false);
    for (std::size_t j = 0; j < n; ++j) inst_.integer[j] = integer_[j];
    inst_.var_names = col_names_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      RowInfo& r = rows_[i];
      SparseRow base = r.coefs;
      if (!r.range) {
        base.sense = r.type == 'G' ? Sense::Ge : r.type == 'L' ? Sense::Le : Sense::Eq;
        base.rhs = r.rhs;
        inst_.lp.rows.push_back(base);
        inst_.row_names.push_back(row_names_[i]);
        continue;
      }
      const double rg = *r.range;
      double lo = r.rhs, hi = r.rhs;
      if (r.type == 'G') hi = r.rhs + std::abs(rg);
      else if (r.type == 'L') lo = r.rhs - std::abs(rg);
      else if (rg > 0) hi = r.rhs + rg;
      else lo = r.rhs + rg;
      SparseRow g = base, l = base;
      g.sense = Sense::Ge;
      g.rhs = lo;
      l.sense = Sense::Le;
      l.rhs = hi;
      inst_.lp.rows.push_back(g);
      inst_.row_names.push_back(row_names_[i] + "#lo");
      inst_.lp.rows.push_back(l);
      inst_.row_names.push_back(row_names_[i] + "#hi");
    }
    inst_.lp.validate();
    return inst_;
  }

  std::string_view text_;
  int lineno_ = 0;
  Instance inst_;
  std::string objective_;
  std::map<std::string, int> free_rows_;
  std::unordered_map<std::string, int> row_index_;
  std::vector<std::string> row_names_;
  std::vector<RowInfo> rows_;
  std::unordered_map<std::string, int> col_index_;
  std::vector<std::string> col_names_;
  std::vector<double> obj_;
  std::vector<bool> integer_;
  std::vector<VarBound> bounds_;
  bool in_integer_block_ = false;
};

} // namespace

Instance parse_instance(std::string_view text, InstanceFormat format) {
  if (format == InstanceFormat::NativeJson) return parse_native(text);
  return MpsReader(text).read();
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["format"] = kFormatTag;
  doc["version"] = kFormatVersion;
  doc["name"] = inst.name;
  doc["sense"] = inst.maximize ? "max" : "min";
  json vars = json::array();
  for (std::size_t j = 0; j < inst.num_vars(); ++j) {
    vars.push_back({{"name", j < inst.var_names.size() ? inst.var_names[j] : "x" + std::to_string(j + 1)},
                    {"lo", bound_to_json(inst.lp.bounds[j].lo)},
                    {"hi", bound_to_json(inst.lp.bounds[j].hi)},
                    {"integer", static_cast<bool>(inst.integer[j])}});
  }
  doc["variables"] = vars;
  doc["objective"] = inst.lp.objective;
  json rows = json::array();
  for (std::size_t i = 0; i < inst.num_rows(); ++i) {
    const auto& r = inst.lp.rows[i];
    json coefs = json::array();
    for (std::size_t k = 0; k < r.size(); ++k) coefs.push_back({r.index[k], r.value[k]});
    rows.push_back({{"name", i < inst.row_names.size() ? inst.row_names[i] : "r" + std::to_string(i + 1)},
                    {"coefs", coefs},
                    {"sense", sense_token(r.sense)},
                    {"rhs", r.rhs}});
  }
  doc["rows"] = rows;
  if (inst.reference.lp_value || inst.reference.ip_value) {
    json ref = json::object();
    if (inst.reference.lp_value) ref["lp_value"] = *inst.reference.lp_value;
    if (inst.reference.ip_value) ref["ip_value"] = *inst.reference.ip_value;
    doc["reference"] = ref;
  }
  if (inst.standardized) {
    doc["standardized"] = true;
    const auto& t = inst.transform;
    doc["transform"] = {{"shift", t.shift},         {"sign", t.sign},
                        {"obj_sign", t.obj_sign},   {"obj_offset", t.obj_offset},
                        {"row_origin", t.row_origin}, {"row_sign", t.row_sign}};
  }
  return doc.dump(2) + "\n";
}

} // namespace vpcforge
