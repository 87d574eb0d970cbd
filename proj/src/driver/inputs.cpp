#include "vcsmc/driver/inputs.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "vcsmc/ltl/parser.hpp"
#include "vcsmc/ltl/transform.hpp"
#include "vcsmc/model/lexer.hpp"

namespace vcsmc::driver {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct Line {
  int number;
  std::string text;
};

// Non-blank, non-comment lines.
std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back({n, t});
  }
  return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw InputError(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + msg);
}

}  // namespace

const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::Ecu: return "ecu";
    case FailureKind::Power: return "power";
    case FailureKind::Bus: return "bus";
    case FailureKind::P2P: return "p2p";
    case FailureKind::Composite: return "composite";
  }
  return "?";
}

std::optional<FailureKind> parse_failure_kind(const std::string& s) {
  for (auto k : {FailureKind::Ecu, FailureKind::Power, FailureKind::Bus, FailureKind::P2P, FailureKind::Composite})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

const Failure& FailureCatalog::axis(int i) const {
  if (i < 1 || static_cast<std::size_t>(i) > axes.size())
    throw std::out_of_range("failure axis " + std::to_string(i) + " out of range");
  return entries[static_cast<std::size_t>(axes[static_cast<std::size_t>(i - 1)])];
}

FailureCatalog parse_failure_catalog(const std::string& text, const std::string& origin) {
  auto lines = content_lines(text);
  if (lines.empty()) fail(origin, 0, "empty catalog");
  if (split_csv(lines[0].text) != std::vector<std::string>{"index", "id", "variable", "kind"})
    fail(origin, lines[0].number, "expected header 'index,id,variable,kind'");
  if (lines.size() == 1) fail(origin, 0, "empty catalog");

  FailureCatalog cat;
  std::set<std::string> ids, vars;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    auto cells = split_csv(l.text);
    if (cells.size() != 4) fail(origin, l.number, "expected 4 fields, got " + std::to_string(cells.size()));
    Failure f;
    try {
      std::size_t used = 0;
      f.index = std::stoi(cells[0], &used);
      if (used != cells[0].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail(origin, l.number, "bad index '" + cells[0] + "'");
    }
    if (f.index != static_cast<int>(i)) fail(origin, l.number, "index " + cells[0] + " out of sequence");
    f.id = cells[1];
    f.variable = cells[2];
    if (f.id.empty() || f.variable.empty()) fail(origin, l.number, "empty id or variable");
    auto kind = parse_failure_kind(cells[3]);
    if (!kind) fail(origin, l.number, "unknown kind '" + cells[3] + "'");
    f.kind = *kind;
    if (!ids.insert(f.id).second) fail(origin, l.number, "duplicate id '" + f.id + "'");
    if (!vars.insert(f.variable).second) fail(origin, l.number, "duplicate variable '" + f.variable + "'");
    if (f.kind != FailureKind::Composite) cat.axes.push_back(static_cast<int>(cat.entries.size()));
    cat.entries.push_back(std::move(f));
  }
  if (cat.axes.empty()) fail(origin, 0, "no injectable failures");
  return cat;
}

FailureCatalog load_failure_catalog(const std::string& path) {
  return parse_failure_catalog(read_text_file(path), path);
}

const std::string& TargetModeMatrix::at(int row, int col) const {
  if (row < 1 || col < 1 || static_cast<std::size_t>(row) > n || static_cast<std::size_t>(col) > n)
    throw std::out_of_range("matrix cell (" + std::to_string(row) + "," + std::to_string(col) + ") out of range");
  return cells[static_cast<std::size_t>(row - 1) * n + static_cast<std::size_t>(col - 1)];
}

TargetModeMatrix parse_target_matrix(const std::string& text, const FailureCatalog& catalog,
                                     const std::vector<std::string>& modes, const std::string& origin) {
  auto lines = content_lines(text);
  const std::size_t n = catalog.axis_count();
  if (lines.empty()) fail(origin, 0, "empty matrix");
  auto header = split_csv(lines[0].text);
  if (header.size() != n + 1)
    fail(origin, lines[0].number,
         "matrix has " + std::to_string(header.size() - 1) + " columns, catalog has " + std::to_string(n) + " axes");
  if (lines.size() - 1 != n)
    fail(origin, 0, "matrix has " + std::to_string(lines.size() - 1) + " rows, catalog has " + std::to_string(n) + " axes");
  for (std::size_t c = 0; c < n; ++c)
    if (header[c + 1] != catalog.axis(static_cast<int>(c + 1)).id)
      fail(origin, lines[0].number, "column " + std::to_string(c + 1) + " is '" + header[c + 1] + "', expected '" +
                                        catalog.axis(static_cast<int>(c + 1)).id + "'");

  TargetModeMatrix m;
  m.n = n;
  m.cells.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const Line& l = lines[r + 1];
    auto cells = split_csv(l.text);
    if (cells.size() != n + 1)
      fail(origin, l.number, "row has " + std::to_string(cells.size() - 1) + " cells, expected " + std::to_string(n));
    if (cells[0] != catalog.axis(static_cast<int>(r + 1)).id)
      fail(origin, l.number, "row label '" + cells[0] + "', expected '" + catalog.axis(static_cast<int>(r + 1)).id + "'");
    for (std::size_t c = 1; c <= n; ++c) {
      const std::string& mode = cells[c];
      if (mode != kFatal && !modes.empty() && std::find(modes.begin(), modes.end(), mode) == modes.end())
        fail(origin, l.number, "unknown mode '" + mode + "'");
      if (mode.empty()) fail(origin, l.number, "empty cell");
      m.cells.push_back(mode);
    }
  }
  return m;
}

TargetModeMatrix load_target_matrix(const std::string& path, const FailureCatalog& catalog,
                                    const std::vector<std::string>& modes) {
  return parse_target_matrix(read_text_file(path), catalog, modes, path);
}

const char* to_string(Applicability a) {
  switch (a) {
    case Applicability::None: return "none";
    case Applicability::Single: return "single";
    case Applicability::Double: return "double";
    case Applicability::All: return "all";
  }
  return "?";
}

namespace {

constexpr const char* kTarget = "{{TARGET_MODE}}";
constexpr const char* kFailA = "{{FAIL_A}}";
constexpr const char* kFailB = "{{FAIL_B}}";

bool mentions(const std::string& text, const char* placeholder) { return text.find(placeholder) != std::string::npos; }

}  // namespace

bool Spec::uses_target() const { return mentions(formula, kTarget); }
bool Spec::applies_to_baseline() const {
  return applicability == Applicability::None || applicability == Applicability::All;
}
bool Spec::applies_to_single() const {
  return applicability == Applicability::Single || applicability == Applicability::All;
}
bool Spec::applies_to_double() const {
  return applicability == Applicability::Double || applicability == Applicability::All;
}

std::string substitute(const std::string& text, const Substitution& sub) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    auto open = text.find("{{", pos);
    if (open == std::string::npos) break;
    auto close = text.find("}}", open);
    if (close == std::string::npos) throw InputError("unterminated placeholder in '" + text + "'");
    std::string key = text.substr(open, close + 2 - open);
    out += text.substr(pos, open - pos);
    if (key == kTarget) out += sub.target_mode;
    else if (key == kFailA) out += sub.fail_a;
    else if (key == kFailB) out += sub.fail_b;
    else throw InputError("unknown placeholder " + key);
    pos = close + 2;
  }
  return out + text.substr(pos);
}

SpecCatalog parse_spec_catalog(const std::string& text, const sem::TransitionSystem* ts,
                               const FailureCatalog* catalog, const std::vector<std::string>& modes,
                               const std::string& origin) {
  SpecCatalog cat;
  std::vector<int> starts;
  std::set<std::string> names;
  std::vector<std::set<std::string>> seen_keys;
  for (const Line& l : content_lines(text)) {
    if (l.text.front() == '[') {
      if (l.text.back() != ']') fail(origin, l.number, "expected ']'");
      std::string name = trim(std::string_view(l.text).substr(1, l.text.size() - 2));
      if (name.empty()) fail(origin, l.number, "empty spec name");
      if (!names.insert(name).second) fail(origin, l.number, "duplicate spec '" + name + "'");
      Spec spec;
      spec.name = name;
      cat.specs.push_back(std::move(spec));
      starts.push_back(l.number);
      seen_keys.emplace_back();
      continue;
    }
    if (cat.specs.empty()) fail(origin, l.number, "entry outside a [spec] section");
    auto eq = l.text.find('=');
    if (eq == std::string::npos) fail(origin, l.number, "expected 'key = value'");
    std::string key = trim(std::string_view(l.text).substr(0, eq));
    std::string value = trim(std::string_view(l.text).substr(eq + 1));
    Spec& s = cat.specs.back();
    if (!seen_keys.back().insert(key).second) fail(origin, l.number, "repeated key '" + key + "'");
    if (key == "formula") {
      s.formula = value;
    } else if (key == "description") {
      s.description = value;
    } else if (key == "applicability") {
      bool ok = false;
      for (auto a : {Applicability::None, Applicability::Single, Applicability::Double, Applicability::All})
        if (value == to_string(a)) s.applicability = a, ok = true;
      if (!ok) fail(origin, l.number, "unknown applicability '" + value + "'");
    } else {
      fail(origin, l.number, "unknown key '" + key + "'");
    }
  }

  for (std::size_t i = 0; i < cat.specs.size(); ++i) {
    Spec& s = cat.specs[i];
    const int line = starts[i];
    auto where = "spec '" + s.name + "'";
    if (s.formula.empty()) fail(origin, line, where + ": missing formula");
    if (!seen_keys[i].count("applicability")) fail(origin, line, where + ": missing applicability");
    const bool failures = s.applicability == Applicability::Single || s.applicability == Applicability::Double;
    if (mentions(s.formula, kFailB) && s.applicability != Applicability::Double)
      fail(origin, line, where + ": {{FAIL_B}} requires applicability 'double'");
    if (mentions(s.formula, kFailA) && !failures)
      fail(origin, line, where + ": {{FAIL_A}} requires applicability 'single' or 'double'");
    if (mentions(s.formula, kTarget) && !failures)
      fail(origin, line, where + ": {{TARGET_MODE}} requires applicability 'single' or 'double'");

    Substitution probe;
    if (catalog) {
      probe.fail_a = catalog->axis(1).variable;
      probe.fail_b = catalog->axis(catalog->axis_count() > 1 ? 2 : 1).variable;
    }
    if (!modes.empty()) probe.target_mode = modes.front();
    std::string text;
    try {
      text = substitute(s.formula, probe);
    } catch (const InputError& e) {
      fail(origin, line, where + ": " + e.what());
    }
    if (!ts) continue;
    try {
      auto f = ltl::parse_ltl(text, *ts);
      s.unbounded_liveness = ltl::has_unbounded_liveness(*f);
    } catch (const std::exception& e) {
      fail(origin, line, where + ": " + e.what());
    }
    if (s.unbounded_liveness)
      cat.warnings.push_back(where + ": unbounded F/G/U/R can never hold on a bounded prefix; "
                                     "use F[a,b] or G[a,b] for a definite verdict");
  }
  return cat;
}

SpecCatalog load_spec_catalog(const std::string& path, const sem::TransitionSystem* ts,
                              const FailureCatalog* catalog, const std::vector<std::string>& modes) {
  return parse_spec_catalog(read_text_file(path), ts, catalog, modes, path);
}

std::vector<std::string> operation_modes(const sem::TransitionSystem& ts, const std::string& mode_var) {
  auto idx = ts.find(mode_var);
  if (!idx) throw InputError("model has no variable '" + mode_var + "'");
  const auto& d = ts.vars[static_cast<std::size_t>(*idx)].domain;
  if (d.kind != sem::TypeKind::Enum) throw InputError("'" + mode_var + "' is not an enumeration");
  std::vector<std::string> out;
  for (sem::Value v : d.values) out.push_back(ts.symbols->name(v));
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace vcsmc::driver
