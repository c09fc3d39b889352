#include "fls/sysfile.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "fls/error.hpp"

namespace fls {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

struct Entry {
  std::size_t line = 0;
  std::string from_index, to_index, from_elem, to_elem;
};

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    throw Error(ErrorKind::ParseError, source_ + ":" + std::to_string(line) + ": " + message);
  }

  FactorSystem parse(std::istream& in) {
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
      ++number;
      Line line{number, {}};
      std::istringstream words(text);
      for (std::string w; words >> w;) {
        if (w[0] == '#') break;
        line.tokens.push_back(w);
      }
      if (!line.tokens.empty()) statement(line);
    }
    return build(number);
  }

 private:
  void statement(const Line& l) {
    const auto& t = l.tokens;
    const std::string& key = t[0];
    if (key == "system") {
      if (t.size() != 2) fail(l.number, "expected 'system <name>'");
      if (name_) fail(l.number, "second 'system' line");
      name_ = t[1];
    } else if (key == "index") {
      if (t.size() != 2) fail(l.number, "expected 'index <id>'");
      for (const auto& id : ids_)
        if (id == t[1]) fail(l.number, "duplicate index '" + t[1] + "'");
      ids_.push_back(t[1]);
    } else if (key == "le") {
      if (t.size() != 3) fail(l.number, "expected 'le <id> <id>'");
      le_.emplace_back(t[1], t[2]);
      le_lines_.push_back(l.number);
    } else if (key == "carrier") {
      if (t.size() < 3 || t[2] != ":") fail(l.number, "expected 'carrier <id> : <elem>...'");
      if (carriers_.count(t[1])) fail(l.number, "second carrier for index '" + t[1] + "'");
      carriers_[t[1]] = {l.number, std::vector<std::string>(t.begin() + 3, t.end())};
    } else if (key == "reflexive") {
      if (t.size() != 2 || t[1] != "explicit") fail(l.number, "expected 'reflexive explicit'");
      implied_diagonal_ = false;
    } else if (key == "pmap" || key == "emb" || key == "proj") {
      if (t.size() != 7 || t[3] != ":" || t[5] != "->") fail(l.number, "expected '" + key + " <id> <id> : <elem> -> <elem>'");
      Entry e{l.number, t[1], t[2], t[4], t[6]};
      (key == "pmap" ? pmap_ : key == "emb" ? emb_ : proj_).push_back(e);
    } else {
      fail(l.number, "unknown statement '" + key + "'");
    }
  }

  Index index(const IndexPoset& p, const std::string& id, std::size_t line) const {
    if (auto k = p.lookup(id)) return *k;
    fail(line, "unknown index '" + id + "'");
  }

  State state(const System& sys, Index k, const std::string& elem, std::size_t line) const {
    if (auto e = sys.find_element(k, elem)) return {k, *e};
    fail(line, "no element '" + elem + "' at index '" + sys.poset().id(k) + "'");
  }

  FactorSystem build(std::size_t last_line) {
    if (!name_) fail(last_line, "missing 'system <name>'");
    if (ids_.empty()) fail(last_line, "no indices");
    for (std::size_t k = 0; k < le_.size(); ++k)
      for (const auto& id : {le_[k].first, le_[k].second}) {
        bool known = false;
        for (const auto& x : ids_) known = known || x == id;
        if (!known) fail(le_lines_[k], "unknown index '" + id + "'");
      }
    IndexPoset poset = IndexPoset::closure(ids_, le_);

    std::vector<std::vector<std::string>> carriers;
    for (const auto& [id, entry] : carriers_)
      if (!poset.lookup(id)) fail(entry.first, "unknown index '" + id + "'");
    for (const auto& id : ids_) {
      auto it = carriers_.find(id);
      if (it == carriers_.end()) fail(last_line, "no carrier for index '" + id + "'");
      const auto& elems = it->second.second;
      for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = a + 1; b < elems.size(); ++b)
          if (elems[a] == elems[b]) fail(it->second.first, "duplicate element '" + elems[a] + "'");
      carriers.push_back(elems);
    }
    System sys(poset, std::move(carriers));
    if (implied_diagonal_) sys.add_diagonal();

    for (const Entry& e : pmap_) {
      const Index later = index(poset, e.from_index, e.line), earlier = index(poset, e.to_index, e.line);
      if (!poset.le(earlier, later)) fail(e.line, "pmap needs " + e.to_index + " <= " + e.from_index);
      sys.set_pred(state(sys, later, e.from_elem, e.line), state(sys, earlier, e.to_elem, e.line), true);
    }

    EpData ep(poset.size());
    auto fill = [&](const std::vector<Entry>& entries, bool up) {
      std::map<std::pair<Index, Index>, std::vector<std::optional<std::size_t>>> tables;
      for (const Entry& e : entries) {
        const Index from = index(poset, e.from_index, e.line), to = index(poset, e.to_index, e.line);
        if (up ? !poset.le(from, to) : !poset.le(to, from)) {
          fail(e.line, std::string(up ? "emb" : "proj") + " from " + e.from_index + " to " + e.to_index +
                           " goes the wrong way");
        }
        auto& table = tables[{from, to}];
        table.resize(sys.carrier_size(from));
        const State a = state(sys, from, e.from_elem, e.line);
        const State b = state(sys, to, e.to_elem, e.line);
        if (table[a.elem] && *table[a.elem] != b.elem) fail(e.line, "conflicting entry for " + sys.render(a));
        table[a.elem] = b.elem;
      }
      for (Index from = 0; from < poset.size(); ++from)
        for (Index to = 0; to < poset.size(); ++to) {
          if (up ? !poset.le(from, to) : !poset.le(to, from)) continue;
          auto it = tables.find({from, to});
          auto& out = up ? ep.emb(from, to) : ep.proj(from, to);
          for (std::size_t a = 0; a < sys.carrier_size(from); ++a) {
            if (it != tables.end() && it->second[a]) {
              out.push_back(*it->second[a]);
            } else if (from == to) {
              out.push_back(a);
            } else {
              fail(last_line, std::string("missing ") + (up ? "emb " : "proj ") + poset.id(from) + " " + poset.id(to) +
                                  " entry for " + sys.render({from, a}));
            }
          }
        }
    };
    fill(emb_, true);
    fill(proj_, false);
    return FactorSystem{*name_, std::move(sys), std::move(ep)};
  }

  std::string source_;
  std::optional<std::string> name_;
  std::vector<std::string> ids_;
  std::vector<std::pair<std::string, std::string>> le_;
  std::vector<std::size_t> le_lines_;
  std::map<std::string, std::pair<std::size_t, std::vector<std::string>>> carriers_;
  bool implied_diagonal_ = true;
  std::vector<Entry> pmap_, emb_, proj_;
};

const std::string& token(const std::string& s) {
  bool ok = !s.empty() && s[0] != '#' && s != ":" && s != "->";
  for (char c : s) ok = ok && !std::isspace(static_cast<unsigned char>(c));
  if (!ok) throw Error(ErrorKind::InvalidSystem, "'" + s + "' cannot be written as a token");
  return s;
}

}  // namespace

FactorSystem read_system(std::istream& in, const std::string& source) { return Reader(source).parse(in); }

FactorSystem read_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
  return read_system(in, path);
}

std::string write_system(const FactorSystem& fs) {
  const System& sys = fs.sys;
  const IndexPoset& p = fs.poset();
  const std::size_t n = p.size();
  std::ostringstream out;
  out << "system " << token(fs.name) << "\n";
  for (Index k = 0; k < n; ++k) out << "index " << token(p.id(k)) << "\n";

  bool antisymmetric = true;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) antisymmetric = antisymmetric && (a == b || !(p.le(a, b) && p.le(b, a)));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (a == b || !p.le(a, b)) continue;
      bool cover = true;
      for (Index c = 0; c < n && antisymmetric; ++c)
        if (c != a && c != b && p.le(a, c) && p.le(c, b)) cover = false;
      if (cover) out << "le " << p.id(a) << " " << p.id(b) << "\n";
    }

  for (Index k = 0; k < n; ++k) {
    out << "carrier " << p.id(k) << " :";
    for (const auto& e : sys.carrier(k)) out << " " << token(e);
    out << "\n";
  }

  bool diagonal = true;
  for (State s : sys.states()) diagonal = diagonal && sys.pred(s, s);
  if (!diagonal) out << "reflexive explicit\n";
  for (State later : sys.states())
    for (State earlier : sys.states())
      if (sys.pred(later, earlier) && (!diagonal || later != earlier)) {
        out << "pmap " << p.id(later.index) << " " << p.id(earlier.index) << " : " << sys.carrier(later.index)[later.elem]
            << " -> " << sys.carrier(earlier.index)[earlier.elem] << "\n";
      }

  for (const bool up : {true, false})
    for (Index from = 0; from < n; ++from)
      for (Index to = 0; to < n; ++to) {
        if (up ? !p.le(from, to) : !p.le(to, from)) continue;
        const auto& table = up ? fs.ep.emb(from, to) : fs.ep.proj(from, to);
        for (std::size_t a = 0; a < table.size(); ++a) {
          if (from == to && table[a] == a) continue;
          out << (up ? "emb " : "proj ") << p.id(from) << " " << p.id(to) << " : " << sys.carrier(from)[a] << " -> "
              << sys.carrier(to).at(table[a]) << "\n";
        }
      }
  return out.str();
}

void write_system_file(const FactorSystem& fs, const std::string& path) {
  const std::string text = write_system(fs);
  std::ofstream out(path);
  if (!out || !(out << text)) throw Error(ErrorKind::ParseError, path + ": cannot write");
}

}  // namespace fls
