#include "hmf/io.hpp"

#include "hmf/text.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace hmf {

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ojson to_json(const MultivectorF& a) {
  ojson comps = ojson::object();
  for (const auto& t : a.terms()) comps[blade_name(t.blade)] = t.coeff;
  return ojson{{"text", to_string(a)}, {"components", comps}};
}

ojson to_json(const VahlenZ& m) {
  ojson word = ojson::array();
  for (const auto& t : m.word()) word.push_back(t.str());
  return ojson{{"a", to_string(m.a())},
               {"b", to_string(m.b())},
               {"c", to_string(m.c())},
               {"d", to_string(m.d())},
               {"word", word}};
}

ojson to_json(const CosetRep& rep) {
  return ojson{{"key", rep.key.str()},
               {"c_zero", rep.key.has_zero_c()},
               {"word_length", rep.word_length},
               {"height", rep.height},
               {"matrix", to_json(rep.matrix)}};
}

ojson to_json(const SeriesResult& r) {
  ojson partial = ojson::array();
  for (const auto& [level, value] : r.partial_sums) partial.push_back({{"level", level}, {"value", to_string(value)}});
  return ojson{{"value", to_json(r.value)},
               {"partial_sums", partial},
               {"coset_count_c0", r.coset_count_c0},
               {"warnings", r.warnings}};
}

ojson to_json(const EvaluatedPoint& e) {
  ojson j;
  j["x"] = e.x;
  if (!e.y.empty()) j["y"] = e.y;
  const auto body = to_json(e.result);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

std::string series_csv(const std::vector<EvaluatedPoint>& rows, int n) {
  std::set<Blade> blades;
  bool two_points = false;
  for (const auto& r : rows) {
    for (const auto& t : r.result.value.terms()) blades.insert(t.blade);
    two_points = two_points || !r.y.empty();
  }
  std::vector<std::string> header;
  for (int i = 1; i <= n; ++i) header.push_back("x" + std::to_string(i));
  if (two_points) {
    for (int i = 1; i <= n; ++i) header.push_back("y" + std::to_string(i));
  }
  for (auto b : blades) header.push_back(blade_name(b));
  std::ostringstream out;
  auto write = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  write(header);
  for (const auto& r : rows) {
    std::vector<std::string> cells;
    for (double v : r.x) cells.push_back(num(v));
    if (two_points) {
      for (double v : r.y) cells.push_back(num(v));
    }
    for (auto b : blades) cells.push_back(num(r.result.value.coeff(b)));
    write(cells);
  }
  return out.str();
}

std::string cosets_csv(const std::vector<CosetRep>& reps) {
  std::ostringstream out;
  out << "word_length,height,c_zero,key,c,d,word\n";
  for (const auto& r : reps) {
    out << r.word_length << "," << num(r.height) << "," << (r.key.has_zero_c() ? 1 : 0) << ",\"" << r.key.str()
        << "\",\"" << to_string(r.matrix.c()) << "\",\"" << to_string(r.matrix.d()) << "\",\"" << r.matrix.word_string()
        << "\"\n";
  }
  return out.str();
}

std::vector<std::vector<double>> parse_points(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& ch : line) {
      if (ch == ',' || ch == '\t' || ch == ';') ch = ' ';
    }
    std::istringstream fields(line);
    std::vector<double> row;
    std::string tok;
    while (fields >> tok) {
      double v = 0.0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw std::invalid_argument("bad number '" + tok + "' on line " + std::to_string(lineno));
      }
      row.push_back(v);
    }
    if (!row.empty()) out.push_back(std::move(row));
  }
  return out;
}

}  // namespace hmf
