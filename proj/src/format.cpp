#include "pnetkit/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace pnetkit {

namespace {

struct Token {
  std::string text;
  int col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

bool parse_nat(const std::string& s, Tokens& out) {
  if (s.empty()) return false;
  Tokens v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
    if (v > 1000000000) return false;
  }
  out = v;
  return true;
}

struct ArcSpec {
  std::string place;
  Tokens weight;
};

ArcSpec parse_arc(const Token& tok, int line) {
  auto star = tok.text.find('*');
  if (star == std::string::npos) return {tok.text, 1};
  std::string id = tok.text.substr(0, star);
  std::string w = tok.text.substr(star + 1);
  Tokens weight;
  if (id.empty() || !parse_nat(w, weight))
    throw parse_error("Syntax", line, tok.col, "malformed arc " + tok.text);
  if (weight == 0) throw parse_error("ZeroWeight", line, tok.col, "zero-weight arc " + tok.text);
  return {id, weight};
}

}  // namespace

System parse_net(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  std::string name;
  std::vector<std::string> places, transitions;
  std::vector<Tokens> tokens;
  std::vector<std::tuple<std::string, std::string, Tokens>> arcs;
  std::set<std::string> ids;

  bool saw_net = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    if (kw == "net") {
      if (saw_net) throw parse_error("Syntax", lineno, toks[0].col, "duplicate net header");
      if (toks.size() != 2) throw parse_error("Syntax", lineno, toks[0].col, "expected: net <name>");
      name = toks[1].text;
      saw_net = true;
    } else if (kw == "pl") {
      if (!saw_net) throw parse_error("Syntax", lineno, toks[0].col, "missing net header");
      if (toks.size() != 3)
        throw parse_error("Syntax", lineno, toks[0].col, "expected: pl <id> <tokens>");
      Tokens v;
      if (!parse_nat(toks[2].text, v))
        throw parse_error("Syntax", lineno, toks[2].col, "bad token count " + toks[2].text);
      if (!ids.insert(toks[1].text).second)
        throw parse_error("DuplicateId", lineno, toks[1].col, toks[1].text);
      places.push_back(toks[1].text);
      tokens.push_back(v);
    } else if (kw == "tr") {
      if (!saw_net) throw parse_error("Syntax", lineno, toks[0].col, "missing net header");
      if (toks.size() < 4 || toks[2].text != ":")
        throw parse_error("Syntax", lineno, toks[0].col, "expected: tr <id> : <arc>* -> <arc>*");
      if (!ids.insert(toks[1].text).second)
        throw parse_error("DuplicateId", lineno, toks[1].col, toks[1].text);
      transitions.push_back(toks[1].text);
      std::size_t arrow = 0;
      for (std::size_t i = 3; i < toks.size(); ++i)
        if (toks[i].text == "->") arrow = i;
      if (arrow == 0)
        throw parse_error("Syntax", lineno, toks.back().col, "missing -> in transition");
      auto check_place = [&](const ArcSpec& a, int col) {
        if (std::find(places.begin(), places.end(), a.place) == places.end())
          throw parse_error("UnknownId", lineno, col, a.place);
      };
      for (std::size_t i = 3; i < arrow; ++i) {
        ArcSpec a = parse_arc(toks[i], lineno);
        check_place(a, toks[i].col);
        arcs.emplace_back(a.place, toks[1].text, a.weight);
      }
      for (std::size_t i = arrow + 1; i < toks.size(); ++i) {
        ArcSpec a = parse_arc(toks[i], lineno);
        check_place(a, toks[i].col);
        arcs.emplace_back(toks[1].text, a.place, a.weight);
      }
    } else {
      throw parse_error("Syntax", lineno, toks[0].col, "unknown keyword " + kw);
    }
  }
  if (!saw_net) throw parse_error("Syntax", lineno + 1, 1, "empty document");
  if (transitions.empty())
    throw parse_error("Syntax", lineno + 1, 1, "a net needs at least one transition");
  try {
    Net net(name, places, transitions, arcs);
    return {net, tokens};
  } catch (const pnet_error& e) {
    throw parse_error("Syntax", lineno + 1, 1, e.what());
  }
}

std::string serialize_net(const System& sys) {
  const Net& net = sys.net;
  std::ostringstream os;
  os << "net " << net.name() << "\n";
  for (int p = 0; p < net.num_places(); ++p)
    os << "pl " << net.place_id(p) << " " << sys.m0[p] << "\n";
  auto arc = [&](const Net::Arc& a) {
    os << " " << net.place_id(a.node);
    if (a.weight != 1) os << "*" << a.weight;
  };
  for (int t = 0; t < net.num_transitions(); ++t) {
    os << "tr " << net.transition_id(t) << " :";
    for (const auto& a : net.pre(t)) arc(a);
    os << " ->";
    for (const auto& a : net.post(t)) arc(a);
    os << "\n";
  }
  return os.str();
}

System load_net_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pnet_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_net(ss.str());
}

void save_net_file(const System& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw pnet_error("cannot write " + path);
  out << serialize_net(sys);
}

Marking parse_marking(const Net& net, const std::string& text) {
  Marking m(net.num_places(), 0);
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t comma = text.find(',', i);
    std::string item = text.substr(i, comma == std::string::npos ? std::string::npos : comma - i);
    i = comma == std::string::npos ? text.size() : comma + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw pnet_error("bad marking entry: " + item);
    std::string id = item.substr(0, eq);
    Tokens v;
    if (!parse_nat(item.substr(eq + 1), v)) throw pnet_error("bad marking value in: " + item);
    m[net.place_index(id)] = v;
  }
  return m;
}

PcmgSpec parse_pcmg(const std::string& text,
                    const std::function<System(const std::string&)>& loader) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  PcmgSpec spec;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    if (kw == "pcmg") {
      if (toks.size() != 2) throw parse_error("Syntax", lineno, toks[0].col, "expected: pcmg <name>");
      spec.name = toks[1].text;
      saw_header = true;
    } else if (kw == "v") {
      if (toks.size() != 2) throw parse_error("Syntax", lineno, toks[0].col, "expected: v <id>");
      spec.vertices.push_back(toks[1].text);
    } else if (kw == "e") {
      if (toks.size() != 4)
        throw parse_error("Syntax", lineno, toks[0].col, "expected: e <id> <va> <vb>");
      spec.edges.push_back({toks[1].text, toks[2].text, toks[3].text});
    } else if (kw == "component") {
      if (toks.size() != 5)
        throw parse_error("Syntax", lineno, toks[0].col,
                          "expected: component <edge> <netfile> <placeA> <placeB>");
      PcmgSpec::Component c;
      c.edge = toks[1].text;
      c.system = loader(toks[2].text);
      c.place_a = toks[3].text;
      c.place_b = toks[4].text;
      spec.components.push_back(std::move(c));
    } else {
      throw parse_error("Syntax", lineno, toks[0].col, "unknown keyword " + kw);
    }
  }
  if (!saw_header) throw parse_error("Syntax", 1, 1, "missing pcmg header");
  return spec;
}

PcmgSpec load_pcmg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pnet_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string dir = ".";
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return parse_pcmg(ss.str(), [&](const std::string& rel) { return load_net_file(dir + "/" + rel); });
}

}  // namespace pnetkit
