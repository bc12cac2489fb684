#include "lac/model.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace lac {
namespace {

using StringList = std::vector<std::string>;
using Value = std::variant<std::string, long long, StringList>;

struct Entry {
  std::string key;
  Value value;
  std::size_t line;
  std::size_t key_column;
  std::size_t value_column;  // column of the first character inside the quotes
};

struct Block {
  std::string kind;  // "algebroid", "poisson", "multivector", "form"
  std::string name;
  std::size_t line;
  std::vector<Entry> entries;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class LineReader {
 public:
  LineReader(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ModelError(message, line_, pos_ + 1);
  }

  std::size_t column() const { return pos_ + 1; }
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ == text_.size() || text_[pos_] == '#';
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_' || text_[pos_] == '-')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  // Key text up to '=', with whitespace removed.
  std::string key() {
    skip_space();
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '=' && text_[pos_] != '#') {
      if (!is_space(text_[pos_])) out += text_[pos_];
      ++pos_;
    }
    if (out.empty()) fail("expected a key");
    return out;
  }

  std::string quoted(std::size_t& content_column) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected a quoted string");
    ++pos_;
    content_column = pos_ + 1;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
    if (pos_ == text_.size()) fail("unterminated string");
    std::string out(text_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }

  long long integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 9) fail("integer too large");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::vector<Block> read_blocks(std::string_view text) {
  std::vector<Block> blocks;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    LineReader r(line, line_no);
    if (r.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    if (r.accept('[')) {
      Block b;
      b.line = line_no;
      b.kind = r.word();
      if (b.kind == "multivector" || b.kind == "form") {
        b.name = r.word();
        if (!is_valid_coordinate_name(b.name)) r.fail("invalid element name '" + b.name + "'");
      } else if (b.kind != "algebroid" && b.kind != "poisson") {
        r.fail("unknown section '" + b.kind + "'");
      }
      r.expect(']');
      if (!r.at_end()) r.fail("unexpected text after section header");
      blocks.push_back(std::move(b));
    } else {
      if (blocks.empty()) r.fail("entry outside of a section");
      Entry e;
      e.line = line_no;
      r.skip_space();
      e.key_column = r.column();
      e.key = r.key();
      r.expect('=');
      e.value_column = 0;
      const char c = r.peek();
      if (c == '"') {
        e.value = r.quoted(e.value_column);
      } else if (c == '[') {
        r.expect('[');
        StringList items;
        if (!r.accept(']')) {
          do {
            std::size_t ignored = 0;
            items.push_back(r.quoted(ignored));
          } while (r.accept(','));
          r.expect(']');
        }
        e.value = std::move(items);
      } else if (is_digit(c)) {
        e.value = r.integer();
      } else {
        r.fail("expected a value");
      }
      if (!r.at_end()) r.fail("unexpected text after value");
      blocks.back().entries.push_back(std::move(e));
    }
    if (end == text.size()) break;
  }
  return blocks;
}

[[noreturn]] void fail_at(const Entry& e, const std::string& message) {
  throw ModelError(e.key + ": " + message, e.line, e.key_column);
}

// "name[1][2]" → ("name", {1, 2}); nullopt if the key has another shape.
std::optional<std::pair<std::string, std::vector<long long>>> indexed_key(const std::string& key) {
  std::size_t pos = 0;
  while (pos < key.size() && std::isalpha(static_cast<unsigned char>(key[pos]))) ++pos;
  if (pos == 0) return std::nullopt;
  std::pair<std::string, std::vector<long long>> out{key.substr(0, pos), {}};
  while (pos < key.size()) {
    if (key[pos] != '[') return std::nullopt;
    const std::size_t close = key.find(']', pos);
    if (close == std::string::npos || close == pos + 1 || close - pos > 10) return std::nullopt;
    for (std::size_t i = pos + 1; i < close; ++i) {
      if (!is_digit(key[i])) return std::nullopt;
    }
    out.second.push_back(std::stoll(key.substr(pos + 1, close - pos - 1)));
    pos = close + 1;
  }
  return out;
}

const std::string& string_value(const Entry& e) {
  if (const auto* s = std::get_if<std::string>(&e.value)) return *s;
  fail_at(e, "expected a quoted expression");
}

Expr expression_value(const Entry& e, const Chart& chart) {
  const std::string& text = string_value(e);
  try {
    return parse(text, chart);
  } catch (const ParseError& err) {
    throw ModelError(e.key + ": " + err.what(), e.line, e.value_column + err.position());
  } catch (const UnknownVariableError& err) {
    throw ModelError(e.key + ": " + err.what(), e.line, e.value_column + err.position());
  }
}

void check_index(const Entry& e, long long value, std::size_t bound, const char* what) {
  if (value < 1 || static_cast<std::size_t>(value) > bound) {
    fail_at(e, std::string(what) + " index " + std::to_string(value) + " out of range 1.." +
                   std::to_string(bound));
  }
}

struct Header {
  std::optional<Chart> base;
  std::optional<long long> rank;
  std::vector<const Entry*> rest;
};

Header read_header(const Block& b, bool wants_rank) {
  Header h;
  std::set<std::string> seen;
  for (const auto& e : b.entries) {
    if (!seen.insert(e.key).second) fail_at(e, "duplicate key");
    if (e.key == "base") {
      const auto* names = std::get_if<StringList>(&e.value);
      if (!names) fail_at(e, "expected a list of coordinate names");
      try {
        h.base = Chart(*names);
      } catch (const Error& err) {
        fail_at(e, err.what());
      }
    } else if (wants_rank && e.key == "rank") {
      const auto* k = std::get_if<long long>(&e.value);
      if (!k) fail_at(e, "expected an integer");
      if (*k > static_cast<long long>(IndexSet::kMaxRank)) fail_at(e, "rank too large");
      h.rank = *k;
    } else {
      h.rest.push_back(&e);
    }
  }
  if (!h.base) throw ModelError("[" + b.kind + "] has no base", b.line, 1);
  if (wants_rank && !h.rank) throw ModelError("[" + b.kind + "] has no rank", b.line, 1);
  return h;
}

Algebroid read_algebroid(const Block& b) {
  const Header h = read_header(b, true);
  const Chart& chart = *h.base;
  const auto n = chart.size();
  const auto k = static_cast<unsigned>(*h.rank);
  std::vector<std::vector<Expr>> anchor(k, std::vector<Expr>(n));
  std::vector<StructureEntry> structure;
  for (const Entry* e : h.rest) {
    const auto key = indexed_key(e->key);
    if (key && key->first == "anchor" && key->second.size() == 2) {
      check_index(*e, key->second[0], k, "section");
      check_index(*e, key->second[1], n, "coordinate");
      anchor[key->second[0] - 1][key->second[1] - 1] = expression_value(*e, chart);
    } else if (key && key->first == "C" && key->second.size() == 3) {
      for (long long idx : key->second) check_index(*e, idx, k, "section");
      const auto c = static_cast<unsigned>(key->second[0] - 1);
      const auto a = static_cast<unsigned>(key->second[1] - 1);
      const auto bb = static_cast<unsigned>(key->second[2] - 1);
      if (a >= bb) fail_at(*e, "indices must satisfy a < b");
      structure.push_back({c, a, bb, expression_value(*e, chart)});
    } else {
      fail_at(*e, "unknown key in [algebroid]");
    }
  }
  return Algebroid::create(chart, k, std::move(anchor), structure);
}

PoissonStructure read_poisson(const Block& b) {
  const Header h = read_header(b, false);
  const Chart& chart = *h.base;
  const auto n = static_cast<unsigned>(chart.size());
  GradedElement bivector(Variance::multivector, n);
  for (const Entry* e : h.rest) {
    const auto key = indexed_key(e->key);
    if (!key || key->first != "L" || key->second.size() != 2) fail_at(*e, "unknown key in [poisson]");
    check_index(*e, key->second[0], n, "coordinate");
    check_index(*e, key->second[1], n, "coordinate");
    if (key->second[0] >= key->second[1]) fail_at(*e, "indices must satisfy i < j");
    const auto i = static_cast<unsigned>(key->second[0] - 1);
    const auto j = static_cast<unsigned>(key->second[1] - 1);
    bivector.add(IndexSet::of({i, j}), expression_value(*e, chart));
  }
  return PoissonStructure(chart, std::move(bivector));
}

IndexSet tuple_key(const Entry& e, unsigned rank) {
  if (e.key == "scalar") return IndexSet{};
  std::vector<unsigned> indices;
  std::size_t pos = 0;
  while (true) {
    const std::size_t start = pos;
    while (pos < e.key.size() && is_digit(e.key[pos])) ++pos;
    if (start == pos || pos - start > 9) fail_at(e, "expected a comma-separated index tuple");
    const long long v = std::stoll(e.key.substr(start, pos - start));
    check_index(e, v, rank, "frame");
    if (!indices.empty() && static_cast<unsigned>(v - 1) <= indices.back()) {
      fail_at(e, "indices must be strictly increasing");
    }
    indices.push_back(static_cast<unsigned>(v - 1));
    if (pos == e.key.size()) break;
    if (e.key[pos] != ',') fail_at(e, "expected a comma-separated index tuple");
    ++pos;
  }
  return IndexSet::of(indices);
}

GradedElement read_element(const Block& b, const Chart& chart, unsigned rank) {
  GradedElement g(b.kind == "form" ? Variance::form : Variance::multivector, rank);
  std::set<std::string> seen;
  for (const auto& e : b.entries) {
    const IndexSet s = tuple_key(e, rank);
    if (!seen.insert(tuple_label(s)).second) fail_at(e, "duplicate key");
    g.add(s, expression_value(e, chart));
  }
  return g;
}

void write_string_list(std::ostream& out, const Chart& chart) {
  out << "base = [";
  for (std::size_t i = 0; i < chart.size(); ++i) out << (i ? ", \"" : " \"") << chart.name(i) << '"';
  out << (chart.empty() ? "]\n" : " ]\n");
}

}  // namespace

const Chart& ModelFile::element_chart() const {
  if (algebroid) return algebroid->chart();
  if (poisson) return poisson->chart();
  throw Error("the model has neither an [algebroid] nor a [poisson] block");
}

unsigned ModelFile::element_rank() const {
  if (algebroid) return algebroid->rank();
  if (poisson) return poisson->dimension();
  throw Error("the model has neither an [algebroid] nor a [poisson] block");
}

const NamedElement* ModelFile::find(std::string_view name) const {
  for (const auto& e : elements) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

ModelFile parse_model(std::string_view text) {
  const std::vector<Block> blocks = read_blocks(text);
  ModelFile model;
  auto located = [](const Block& b, auto&& fn) {
    try {
      return fn();
    } catch (const ModelError&) {
      throw;
    } catch (const Error& err) {
      throw ModelError(std::string("[") + b.kind + (b.name.empty() ? "" : " " + b.name) + "]: " +
                           err.what(),
                       b.line, 1);
    }
  };
  for (const auto& b : blocks) {
    if (b.kind == "algebroid") {
      if (model.algebroid) throw ModelError("duplicate [algebroid] block", b.line, 1);
      model.algebroid = located(b, [&] { return read_algebroid(b); });
    } else if (b.kind == "poisson") {
      if (model.poisson) throw ModelError("duplicate [poisson] block", b.line, 1);
      model.poisson = located(b, [&] { return read_poisson(b); });
    }
  }
  std::set<std::string> names;
  for (const auto& b : blocks) {
    if (b.kind != "multivector" && b.kind != "form") continue;
    if (!names.insert(b.name).second) {
      throw ModelError("duplicate element name '" + b.name + "'", b.line, 1);
    }
    if (!model.algebroid && !model.poisson) {
      throw ModelError("element block without an [algebroid] or [poisson] block", b.line, 1);
    }
    model.elements.push_back(
        {b.name, located(b, [&] {
           return read_element(b, model.element_chart(), model.element_rank());
         })});
  }
  return model;
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

void write_algebroid(std::ostream& out, const Algebroid& a) {
  out << "[algebroid]\n";
  write_string_list(out, a.chart());
  out << "rank = " << a.rank() << '\n';
  for (unsigned b = 0; b < a.rank(); ++b) {
    for (unsigned i = 0; i < a.dimension(); ++i) {
      if (a.anchor(b, i).is_zero()) continue;
      out << "anchor[" << b + 1 << "][" << i + 1 << "] = \"" << to_string(a.anchor(b, i), a.chart())
          << "\"\n";
    }
  }
  for (const auto& e : a.structure_entries()) {
    out << "C[" << e.c + 1 << "][" << e.a + 1 << "][" << e.b + 1 << "] = \""
        << to_string(e.value, a.chart()) << "\"\n";
  }
}

void write_poisson(std::ostream& out, const PoissonStructure& ps) {
  out << "[poisson]\n";
  write_string_list(out, ps.chart());
  for (const auto& [s, c] : ps.bivector().terms()) {
    const auto e = s.elements();
    out << "L[" << e[0] + 1 << "][" << e[1] + 1 << "] = \"" << to_string(c, ps.chart()) << "\"\n";
  }
}

void write_element(std::ostream& out, std::string_view name, const GradedElement& g,
                   const Chart& chart) {
  out << '[' << to_string(g.variance()) << ' ' << name << "]\n";
  for (const auto& [s, c] : g.terms()) {
    out << tuple_label(s) << " = \"" << to_string(c, chart) << "\"\n";
  }
}

std::string save_model(const ModelFile& model) {
  std::ostringstream out;
  bool first = true;
  auto separate = [&] {
    if (!first) out << '\n';
    first = false;
  };
  if (model.algebroid) {
    separate();
    write_algebroid(out, *model.algebroid);
  }
  if (model.poisson) {
    separate();
    write_poisson(out, *model.poisson);
  }
  for (const auto& e : model.elements) {
    separate();
    write_element(out, e.name, e.value, model.element_chart());
  }
  return out.str();
}

}  // namespace lac
