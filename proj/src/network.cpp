#include "lmps/network.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lmps/lp.hpp"

namespace lmps {

int NetworkCase::bus_index(const std::string& id) const {
  for (std::size_t i = 0; i < buses.size(); ++i)
    if (buses[i].id == id) return static_cast<int>(i);
  return -1;
}

int NetworkCase::line_index(const std::string& id) const {
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines[i].id == id) return static_cast<int>(i);
  return -1;
}

Eigen::VectorXd NetworkCase::loads() const {
  Eigen::VectorXd v(num_buses());
  for (int i = 0; i < num_buses(); ++i) v[i] = buses[i].load;
  return v;
}

Eigen::VectorXd NetworkCase::loss_factors() const {
  if (loss.lf.size() == num_buses()) return loss.lf;
  return Eigen::VectorXd::Zero(num_buses());
}

Eigen::VectorXd NetworkCase::loss_distribution() const {
  if (loss.d.size() == num_buses()) return loss.d;
  return Eigen::VectorXd::Constant(num_buses(), 1.0 / std::max(1, num_buses()));
}

void NetworkCase::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("case: " + msg); };
  if (buses.empty()) fail("no buses");
  if (reference < 0 || reference >= num_buses()) fail("reference bus is not a declared bus");
  std::map<std::string, int> seen;
  for (const auto& b : buses)
    if (seen[b.id]++) fail("duplicate bus id " + b.id);
  for (const auto& l : lines) {
    if (l.from < 0 || l.from >= num_buses() || l.to < 0 || l.to >= num_buses())
      fail("line " + l.id + " has an undeclared endpoint");
    if (!(l.reactance > 0.0)) fail("line " + l.id + " reactance must be positive");
    if (l.capacity < 0.0) fail("line " + l.id + " has negative capacity");
  }
  for (const auto& g : generators) {
    if (g.bus < 0 || g.bus >= num_buses()) fail("generator " + g.id + " at undeclared bus");
    if (g.pmin > g.pmax) fail("generator " + g.id + " has pmin > pmax");
    for (std::size_t b = 1; b < g.blocks.size(); ++b)
      if (g.blocks[b].price < g.blocks[b - 1].price)
        fail("generator " + g.id + " offer prices must be non-decreasing");
    for (const auto& o : g.blocks)
      if (o.quantity < 0.0) fail("generator " + g.id + " has a negative block");
  }
  if (loss.lf.size() != 0 && loss.lf.size() != num_buses()) fail("LF needs one entry per bus");
  if (loss.d.size() != 0) {
    if (loss.d.size() != num_buses()) fail("d needs one entry per bus");
    if (std::abs(loss.d.sum() - 1.0) > 1e-9) fail("d entries must sum to 1");
  }
}

namespace {

std::string strip(const std::string& s) {
  auto hash = s.find('#');
  std::string t = hash == std::string::npos ? s : s.substr(0, hash);
  auto a = t.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  auto b = t.find_last_not_of(" \t\r");
  return t.substr(a, b - a + 1);
}

double parse_number(const std::string& tok, int line_no) {
  if (tok == "inf" || tok == "+inf") return kInf;
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("case line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
}

}  // namespace

NetworkCase parse_case(std::istream& in) {
  NetworkCase c;
  std::string section;
  std::string ref_id;
  std::string raw;
  int line_no = 0;
  struct PendingLine { Line line; std::string from, to; };
  std::vector<PendingLine> pending;
  struct PendingGen { Generator gen; std::string bus; };
  std::vector<PendingGen> gens;
  std::vector<std::tuple<std::string, double, double>> loss_rows;
  bool has_loss = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string s = strip(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      section = s.substr(1, s.find(']') - 1);
      if (section == "loss") has_loss = true;
      static const char* known[] = {"buses", "lines", "generators", "loss", "profile"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known))
        throw std::invalid_argument("case: unknown section [" + section + "]");
      continue;
    }
    std::istringstream ss(s);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    auto need = [&](std::size_t n) {
      if (tok.size() < n)
        throw std::invalid_argument("case line " + std::to_string(line_no) + ": expected " +
                                    std::to_string(n) + " fields");
    };
    if (section.empty()) {
      need(2);
      if (tok[0] == "name") c.name = tok[1];
      else if (tok[0] == "reference") ref_id = tok[1];
      else throw std::invalid_argument("case line " + std::to_string(line_no) + ": unknown key " + tok[0]);
    } else if (section == "buses") {
      need(2);
      c.buses.push_back({tok[0], parse_number(tok[1], line_no)});
    } else if (section == "lines") {
      need(5);
      PendingLine p;
      p.line.id = tok[0];
      p.from = tok[1];
      p.to = tok[2];
      p.line.reactance = parse_number(tok[3], line_no);
      p.line.capacity = parse_number(tok[4], line_no);
      pending.push_back(p);
    } else if (section == "generators") {
      need(4);
      PendingGen p;
      p.gen.id = tok[0];
      p.bus = tok[1];
      p.gen.pmin = parse_number(tok[2], line_no);
      p.gen.pmax = parse_number(tok[3], line_no);
      for (std::size_t k = 4; k < tok.size(); ++k) {
        auto at = tok[k].find('@');
        if (at == std::string::npos)
          throw std::invalid_argument("case line " + std::to_string(line_no) + ": offer must be q@price");
        p.gen.blocks.push_back({parse_number(tok[k].substr(0, at), line_no),
                                parse_number(tok[k].substr(at + 1), line_no)});
      }
      gens.push_back(p);
    } else if (section == "loss") {
      if (tok[0] == "l0") {
        need(2);
        c.loss.l0 = parse_number(tok[1], line_no);
      } else {
        need(3);
        loss_rows.emplace_back(tok[0], parse_number(tok[1], line_no), parse_number(tok[2], line_no));
      }
    } else if (section == "profile") {
      for (const auto& t : tok) c.profile.push_back(parse_number(t, line_no));
    } else {
      throw std::invalid_argument("case: unknown section [" + section + "]");
    }
  }

  auto bus_of = [&](const std::string& id, const std::string& what) {
    int i = c.bus_index(id);
    if (i < 0) throw std::invalid_argument("case: " + what + " refers to undeclared bus " + id);
    return i;
  };
  for (auto& p : pending) {
    p.line.from = bus_of(p.from, "line " + p.line.id);
    p.line.to = bus_of(p.to, "line " + p.line.id);
    c.lines.push_back(p.line);
  }
  for (auto& p : gens) {
    p.gen.bus = bus_of(p.bus, "generator " + p.gen.id);
    c.generators.push_back(p.gen);
  }
  if (ref_id.empty()) throw std::invalid_argument("case: missing reference bus");
  c.reference = bus_of(ref_id, "reference");
  if (has_loss) {
    c.loss.lf = Eigen::VectorXd::Zero(c.num_buses());
    c.loss.d = Eigen::VectorXd::Zero(c.num_buses());
    if (loss_rows.empty()) c.loss.d.setConstant(1.0 / c.num_buses());
    for (const auto& [id, lf, d] : loss_rows) {
      int i = bus_of(id, "loss row");
      c.loss.lf[i] = lf;
      c.loss.d[i] = d;
    }
  }
  c.validate();
  return c;
}

NetworkCase read_case(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open case file " + path);
  return parse_case(in);
}

void write_case(std::ostream& out, const NetworkCase& c) {
  out << std::setprecision(17);
  out << "name " << (c.name.empty() ? "case" : c.name) << "\n";
  out << "reference " << c.buses.at(c.reference).id << "\n\n[buses]\n";
  for (const auto& b : c.buses) out << b.id << " " << b.load << "\n";
  out << "\n[lines]\n";
  for (const auto& l : c.lines) {
    out << l.id << " " << c.buses[l.from].id << " " << c.buses[l.to].id << " " << l.reactance << " ";
    if (l.limited()) out << l.capacity; else out << "inf";
    out << "\n";
  }
  out << "\n[generators]\n";
  for (const auto& g : c.generators) {
    out << g.id << " " << c.buses[g.bus].id << " " << g.pmin << " " << g.pmax;
    for (const auto& o : g.blocks) out << " " << o.quantity << "@" << o.price;
    out << "\n";
  }
  if (c.loss.lf.size() == c.num_buses()) {
    out << "\n[loss]\nl0 " << c.loss.l0 << "\n";
    Eigen::VectorXd d = c.loss_distribution();
    for (int i = 0; i < c.num_buses(); ++i) out << c.buses[i].id << " " << c.loss.lf[i] << " " << d[i] << "\n";
  }
  if (!c.profile.empty()) {
    out << "\n[profile]\n";
    for (std::size_t t = 0; t < c.profile.size(); ++t)
      out << c.profile[t] << ((t + 1) % 12 == 0 || t + 1 == c.profile.size() ? "\n" : " ");
  }
}

namespace {

std::vector<std::vector<double>> matpower_table(const std::string& text, const std::string& key) {
  auto pos = text.find("mpc." + key);
  while (pos != std::string::npos) {
    // Skip e.g. "mpc.gen" matching "mpc.gencost".
    char next = text[pos + 4 + key.size()];
    if (next == ' ' || next == '=' || next == '\t') break;
    pos = text.find("mpc." + key, pos + 1);
  }
  if (pos == std::string::npos) return {};
  auto open = text.find('[', pos);
  auto close = text.find(']', open);
  if (open == std::string::npos || close == std::string::npos)
    throw std::invalid_argument("matpower: malformed table " + key);
  std::string body = text.substr(open + 1, close - open - 1);
  std::vector<std::vector<double>> rows;
  std::vector<double> row;
  std::string tok;
  auto flush_tok = [&] {
    if (!tok.empty()) {
      row.push_back(tok == "Inf" || tok == "inf" ? kInf : std::stod(tok));
      tok.clear();
    }
  };
  auto flush_row = [&] {
    flush_tok();
    if (!row.empty()) rows.push_back(row);
    row.clear();
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    char ch = body[i];
    if (ch == '%') {
      while (i < body.size() && body[i] != '\n') ++i;
      flush_row();
    } else if (ch == ';' || ch == '\n') {
      flush_row();
    } else if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r') {
      flush_tok();
    } else {
      tok.push_back(ch);
    }
  }
  flush_row();
  return rows;
}

std::string fmt_id(double v) {
  std::ostringstream ss;
  ss << static_cast<long long>(v);
  return ss.str();
}

}  // namespace

NetworkCase convert_matpower(std::istream& in, const std::string& name) {
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto bus = matpower_table(text, "bus");
  auto branch = matpower_table(text, "branch");
  auto gen = matpower_table(text, "gen");
  auto cost = matpower_table(text, "gencost");
  if (bus.empty() || branch.empty() || gen.empty())
    throw std::invalid_argument("matpower: bus, branch and gen tables are required");

  NetworkCase c;
  c.name = name;
  int ref = -1;
  for (const auto& r : bus) {
    if (r.size() < 3) throw std::invalid_argument("matpower: short bus row");
    c.buses.push_back({fmt_id(r[0]), r[2]});
    if (static_cast<int>(r[1]) == 3) ref = c.num_buses() - 1;
  }
  c.reference = ref < 0 ? 0 : ref;
  for (std::size_t k = 0; k < branch.size(); ++k) {
    const auto& r = branch[k];
    if (r.size() < 6) throw std::invalid_argument("matpower: short branch row");
    if (r.size() > 10 && r[10] == 0.0) continue;
    Line l;
    l.id = "L" + std::to_string(k + 1);
    l.from = c.bus_index(fmt_id(r[0]));
    l.to = c.bus_index(fmt_id(r[1]));
    l.reactance = r[3];
    l.capacity = r[5] > 0.0 ? r[5] : kInf;
    c.lines.push_back(l);
  }
  for (std::size_t k = 0; k < gen.size(); ++k) {
    const auto& r = gen[k];
    if (r.size() < 10) throw std::invalid_argument("matpower: short gen row");
    if (r[7] <= 0.0) continue;
    Generator g;
    g.id = "G" + std::to_string(k + 1);
    g.bus = c.bus_index(fmt_id(r[0]));
    g.pmax = r[8];
    g.pmin = r[9];
    if (k < cost.size()) {
      const auto& cr = cost[k];
      int model = static_cast<int>(cr.at(0));
      int n = static_cast<int>(cr.at(3));
      if (model == 1) {
        for (int i = 1; i < n; ++i) {
          double x0 = cr.at(4 + 2 * (i - 1)), y0 = cr.at(5 + 2 * (i - 1));
          double x1 = cr.at(4 + 2 * i), y1 = cr.at(5 + 2 * i);
          if (x1 > x0) g.blocks.push_back({x1 - x0, (y1 - y0) / (x1 - x0)});
        }
      } else {
        // Polynomial: three equal blocks priced at the midpoint marginal cost.
        std::vector<double> coef(cr.begin() + 4, cr.begin() + 4 + n);
        auto marginal = [&](double p) {
          double s = 0.0;
          for (int i = 0; i + 1 < n; ++i) {
            int power = n - 1 - i;
            s += power * coef[i] * std::pow(p, power - 1);
          }
          return s;
        };
        double q = g.pmax / 3.0;
        for (int b = 0; b < 3; ++b) g.blocks.push_back({q, marginal((b + 0.5) * q)});
      }
    } else {
      g.blocks.push_back({g.pmax, 0.0});
    }
    c.generators.push_back(g);
  }
  c.validate();
  return c;
}

}  // namespace lmps
