#include "bcfind/scene.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace bcfind {

std::vector<FormulaRef> Scene::domain_formulas() const {
  std::vector<FormulaRef> out;
  for (const NamedFormula& d : domain) out.push_back(d.formula);
  return out;
}

std::vector<FormulaRef> Scene::goal_formulas() const {
  std::vector<FormulaRef> out;
  for (const NamedFormula& g : goals) out.push_back(g.formula);
  return out;
}

std::vector<std::string> Scene::goal_names() const {
  std::vector<std::string> out;
  for (const NamedFormula& g : goals) out.push_back(g.name);
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Strips a # comment, honoring quotes.
std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    else if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<std::string> parse_id_list(const std::string& value, int line) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
    throw SceneError("expected a list like [a, b, c]", line);
  }
  std::vector<std::string> out;
  std::string inner = value.substr(1, value.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw SceneError("empty list entry", line);
    if (!valid_identifier(item)) {
      throw SceneError("invalid identifier '" + item + "'", line);
    }
    out.push_back(item);
  }
  if (trim(inner).empty()) out.clear();
  return out;
}

std::string parse_quoted(const std::string& value, int line) {
  if (value.size() < 2 || value.front() != '"' || value.back() != '"') {
    throw SceneError("expected a quoted string", line);
  }
  return value.substr(1, value.size() - 2);
}

}  // namespace

Scene load_scene(std::string_view text) {
  Scene scene;
  bool fusible_given = false;
  enum class Section { None, Scene, Domain, Goals } section = Section::None;

  std::stringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line == "[scene]") section = Section::Scene;
      else if (line == "[domain]") section = Section::Domain;
      else if (line == "[goals]") section = Section::Goals;
      else throw SceneError("unknown section header " + line, line_no);
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw SceneError("expected 'key = value'", line_no);
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!valid_identifier(key)) {
      throw SceneError("invalid name '" + key + "'", line_no);
    }

    switch (section) {
      case Section::None:
        throw SceneError("entry outside any section", line_no);
      case Section::Scene:
        if (key == "name") {
          scene.name = parse_quoted(value, line_no);
        } else if (key == "atoms") {
          scene.atoms = parse_id_list(value, line_no);
        } else if (key == "fusible") {
          scene.fusible = parse_id_list(value, line_no);
          fusible_given = true;
        } else {
          throw SceneError("unknown [scene] key '" + key + "'", line_no);
        }
        break;
      case Section::Domain:
      case Section::Goals: {
        FormulaRef f = nullptr;
        try {
          f = parse(parse_quoted(value, line_no));
        } catch (const ParseError& e) {
          throw SceneError("in formula for '" + key + "': " + e.what(),
                           line_no);
        }
        auto& list = section == Section::Domain ? scene.domain : scene.goals;
        for (const NamedFormula& nf : list) {
          if (nf.name == key) {
            throw SceneError("duplicate name '" + key + "'", line_no);
          }
        }
        list.push_back(NamedFormula{key, f});
        break;
      }
    }
  }

  if (scene.goals.empty()) throw SceneError("scene declares no goals", 0);
  std::set<std::string> declared(scene.atoms.begin(), scene.atoms.end());
  if (declared.size() != scene.atoms.size()) {
    throw SceneError("duplicate atom declaration", 0);
  }
  auto check_atoms = [&](const NamedFormula& nf) {
    for (const std::string& atom : collect_atoms(nf.formula)) {
      if (!declared.count(atom)) {
        throw SceneError(
            "formula '" + nf.name + "' uses undeclared atom '" + atom + "'",
            0);
      }
    }
  };
  for (const NamedFormula& nf : scene.domain) check_atoms(nf);
  for (const NamedFormula& nf : scene.goals) check_atoms(nf);

  if (!fusible_given) {
    scene.fusible = scene.atoms;
  } else {
    for (const std::string& atom : scene.fusible) {
      if (!declared.count(atom)) {
        throw SceneError("fusible atom '" + atom + "' is not declared", 0);
      }
    }
  }
  return scene;
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file " + path, 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_scene(buffer.str());
}

}  // namespace bcfind
