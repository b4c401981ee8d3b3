#include "invmine/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace invmine::io {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool is_comment(const std::string& line) { return !line.empty() && line[0] == '#'; }

std::vector<int> parse_items(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> items;
  int id;
  while (in >> id) {
    if (id < 0) throw InputError("negative item id");
    if (!items.empty() && id <= items.back())
      throw InputError("item ids must be ascending: " + text);
    items.push_back(id);
  }
  if (!in.eof()) throw InputError("malformed item list: " + text);
  return items;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open for reading: " + path);
  return in;
}

void write_header(std::ostream& out, const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << "\n";
}

}  // namespace

std::string format_items(const ItemSet& s) {
  std::string out;
  for (int k : s.items()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(k);
  }
  return out;
}

TransactionDatabase read_database(std::istream& in, std::optional<int> universe_size) {
  std::vector<std::vector<int>> rows;
  int max_id = -1;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (is_comment(line)) continue;
    rows.push_back(parse_items(line));
    if (!rows.back().empty()) max_id = std::max(max_id, rows.back().back());
  }
  const int t = universe_size.value_or(max_id + 1);
  if (max_id >= t) throw InputError("item id exceeds declared universe size");
  TransactionDatabase db;
  db.universe = ItemUniverse(t);
  long long tid = 1;
  for (auto& items : rows)
    db.rows.push_back(Transaction{tid++, ItemSet::from_items(t, items)});
  return db;
}

TransactionDatabase read_database_file(const std::string& path, std::optional<int> universe_size) {
  auto in = open_in(path);
  return read_database(in, universe_size);
}

void write_database(std::ostream& out, const TransactionDatabase& db,
                    const std::vector<std::string>& header) {
  write_header(out, header);
  for (const auto& row : db.rows) out << format_items(row.items) << "\n";
}

void write_database_file(const std::string& path, const TransactionDatabase& db,
                         const std::vector<std::string>& header) {
  auto out = open_out(path);
  write_database(out, db, header);
}

ConstraintSet read_constraints(std::istream& in) {
  ConstraintSet cs;
  bool have_n = false, have_t = false;
  std::vector<std::pair<std::vector<int>, long long>> raw;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line == "# scrubbed") {
      cs.scrubbed = true;
      continue;
    }
    if (is_comment(line) || line.empty()) continue;
    std::istringstream ls(line);
    if (!have_n) {
      std::string key;
      if (!(ls >> key >> cs.n) || key != "n") throw InputError("expected `n <int>` line");
      have_n = true;
      continue;
    }
    if (!have_t) {
      std::string key;
      int t;
      if (!(ls >> key >> t) || key != "t") throw InputError("expected `t <int>` line");
      cs.universe = ItemUniverse(t);
      have_t = true;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw InputError("constraint line missing `:`: " + line);
    std::istringstream sup(line.substr(colon + 1));
    long long s;
    if (!(sup >> s)) throw InputError("constraint line missing support: " + line);
    raw.emplace_back(parse_items(line.substr(0, colon)), s);
  }
  if (!have_n || !have_t) throw InputError("constraint file missing n or t line");
  for (auto& [items, s] : raw)
    cs.constraints.push_back(SupportConstraint{ItemSet::from_items(cs.universe.size, items), s});
  cs.validate();
  return cs;
}

ConstraintSet read_constraints_file(const std::string& path) {
  auto in = open_in(path);
  return read_constraints(in);
}

void write_constraints(std::ostream& out, const ConstraintSet& cs,
                       const std::vector<std::string>& header) {
  write_header(out, header);
  if (cs.scrubbed) out << "# scrubbed\n";
  out << "n " << cs.n << "\n";
  out << "t " << cs.universe.size << "\n";
  for (const auto& c : cs.constraints)
    out << format_items(c.itemset) << " : " << c.support << "\n";
}

void write_constraints_file(const std::string& path, const ConstraintSet& cs,
                            const std::vector<std::string>& header) {
  auto out = open_out(path);
  write_constraints(out, cs, header);
}

std::vector<PrivacyRule> read_privacy_rules(std::istream& in, int universe_size) {
  std::vector<PrivacyRule> rules;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (is_comment(line) || line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw InputError("privacy rule missing `:`: " + line);
    PrivacyRule rule;
    rule.itemset = ItemSet::from_items(universe_size, parse_items(line.substr(0, colon)));
    std::istringstream bounds(line.substr(colon + 1));
    if (!(bounds >> rule.s_min >> rule.s_max)) throw InputError("privacy rule needs two bounds");
    if (rule.s_min < 0 || rule.s_min > rule.s_max)
      throw InputError("privacy rule needs 0 <= s_min <= s_max");
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<PrivacyRule> read_privacy_rules_file(const std::string& path, int universe_size) {
  auto in = open_in(path);
  return read_privacy_rules(in, universe_size);
}

void write_privacy_rules(std::ostream& out, const std::vector<PrivacyRule>& rules) {
  for (const auto& r : rules)
    out << format_items(r.itemset) << " : " << r.s_min << " " << r.s_max << "\n";
}

void write_report(std::ostream& out, const SynthesisReport& report) {
  out << "itemset,target,actual,deviation\n";
  for (const auto& d : report.per_constraint)
    out << format_items(d.itemset) << "," << d.target << "," << d.actual << ","
        << d.deviation << "\n";
  out << "n_target," << report.n_target << "\n";
  out << "n_actual," << report.n_actual << "\n";
  out << "lp_objective," << report.lp_objective << "\n";
  out << "sum_abs_deviation," << report.sum_abs_deviation << "\n";
  out << "max_abs_deviation," << report.max_abs_deviation << "\n";
}

void write_report_file(const std::string& path, const SynthesisReport& report) {
  auto out = open_out(path);
  write_report(out, report);
}

SynthesisReport read_report(std::istream& in, int universe_size) {
  SynthesisReport report;
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "itemset,target,actual,deviation")
    throw InputError("report missing header row");
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() == 2) {
      const double v = std::stod(cells[1]);
      if (cells[0] == "n_target")
        report.n_target = std::llround(v);
      else if (cells[0] == "n_actual")
        report.n_actual = std::llround(v);
      else if (cells[0] == "lp_objective")
        report.lp_objective = v;
      else if (cells[0] == "sum_abs_deviation")
        report.sum_abs_deviation = std::llround(v);
      else if (cells[0] == "max_abs_deviation")
        report.max_abs_deviation = std::llround(v);
      else
        throw InputError("unknown report summary row: " + cells[0]);
      continue;
    }
    if (cells.size() != 4) throw InputError("malformed report row: " + line);
    ConstraintDeviation d;
    d.itemset = ItemSet::from_items(universe_size, parse_items(cells[0]));
    d.target = std::stoll(cells[1]);
    d.actual = std::stoll(cells[2]);
    d.deviation = std::stoll(cells[3]);
    report.per_constraint.push_back(std::move(d));
  }
  return report;
}

SynthesisReport read_report_file(const std::string& path, int universe_size) {
  auto in = open_in(path);
  return read_report(in, universe_size);
}

}  // namespace invmine::io
