#include "qcurv/metric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

namespace qcurv {

MetricField::MetricField(std::vector<std::string> coords,
                         std::vector<ExprPtr> lower_triangular,
                         std::vector<CoordInterval> domain)
    : coords_(std::move(coords)),
      comps_(std::move(lower_triangular)),
      domain_(std::move(domain)) {
  const std::size_t n = coords_.size();
  if (n < 2) throw std::invalid_argument("metric dimension must be >= 2");
  if (comps_.size() != n * (n + 1) / 2)
    throw std::invalid_argument("metric component count mismatch");
  if (domain_.size() != n)
    throw std::invalid_argument("metric domain count mismatch");
  for (auto& c : comps_)
    if (!c) c = make_number(0.0);
}

const ExprPtr& MetricField::component(int i, int j) const {
  if (i < j) std::swap(i, j);
  return comps_.at(tri_index(i, j));
}

Eigen::MatrixXd MetricField::value(std::span<const double> point) const {
  const int n = dim();
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = eval_value(*comps_[tri_index(i, j)], point);
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

MetricAtPoint MetricField::at(std::span<const double> point) const {
  Eigen::VectorXd p(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) p[i] = point[i];
  return metric_at_point(value(point), std::move(p));
}

std::vector<Jet2> MetricField::component_jets(
    std::span<const double> point) const {
  std::vector<Jet2> jets;
  jets.reserve(comps_.size());
  for (const auto& c : comps_) jets.push_back(eval_jet2(*c, point));
  return jets;
}

// ---------------------------------------------------------------------------
// Metric file parsing
// ---------------------------------------------------------------------------

namespace {

struct Line {
  std::string text;
  int number;      // 1-based physical line
  int column_base; // 1-based column of text[0]
};

// Physical lines split on '\n'; ';' also separates statements. Comments
// start at '#'.
std::vector<Line> split_statements(std::string_view src) {
  std::vector<Line> out;
  int line_no = 1;
  std::size_t pos = 0;
  while (pos <= src.size()) {
    std::size_t eol = src.find('\n', pos);
    std::string_view line =
        src.substr(pos, eol == std::string_view::npos ? src.size() - pos
                                                      : eol - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t semi = line.find(';', start);
      std::string_view stmt = line.substr(
          start, semi == std::string_view::npos ? line.size() - start
                                                : semi - start);
      std::size_t first = stmt.find_first_not_of(" \t\r");
      if (first != std::string_view::npos) {
        std::size_t last = stmt.find_last_not_of(" \t\r");
        out.push_back(Line{std::string(stmt.substr(first, last - first + 1)),
                           line_no,
                           static_cast<int>(start + first) + 1});
      }
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
    ++line_no;
  }
  return out;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool is_function_name(std::string_view s) {
  static const char* names[] = {"sin",  "cos",  "tan", "sinh", "cosh",
                                "tanh", "exp",  "log", "sqrt"};
  for (auto* n : names)
    if (s == n) return true;
  return false;
}

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t");
  return std::string(s.substr(a, b - a + 1));
}

double parse_number_or_throw(std::string_view s, const Line& ln) {
  std::string t = trim(s);
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
    throw ParseError("malformed number '" + t + "'", ln.number,
                     ln.column_base);
  return v;
}

}  // namespace

MetricField parse_metric_source(std::string_view text) {
  const auto statements = split_statements(text);

  int n = 0;
  std::vector<std::string> coords;
  std::vector<CoordInterval> domain;
  std::vector<ExprPtr> comps;
  std::vector<bool> assigned;

  auto require_header = [&](const Line& ln) {
    if (n == 0 || coords.empty())
      throw ParseError("'dim' and 'coords' must be declared first", ln.number,
                       ln.column_base);
  };

  for (const Line& ln : statements) {
    std::size_t eq = ln.text.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected '=' in statement", ln.number, ln.column_base);
    std::string key = trim(std::string_view(ln.text).substr(0, eq));
    std::string_view value = std::string_view(ln.text).substr(eq + 1);

    if (key == "dim") {
      if (n != 0)
        throw ParseError("duplicate 'dim'", ln.number, ln.column_base);
      double v = parse_number_or_throw(value, ln);
      if (v != std::nearbyint(v) || v < 2 || v > 16)
        throw ParseError("dim must be an integer in [2, 16]", ln.number,
                         ln.column_base);
      n = static_cast<int>(v);
      domain.assign(n, CoordInterval{});
      comps.assign(static_cast<std::size_t>(n) * (n + 1) / 2, nullptr);
      assigned.assign(comps.size(), false);
    } else if (key == "coords") {
      if (n == 0)
        throw ParseError("'dim' must precede 'coords'", ln.number,
                         ln.column_base);
      if (!coords.empty())
        throw ParseError("duplicate 'coords'", ln.number, ln.column_base);
      std::string buf(value);
      std::stringstream ss(buf);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::string name = trim(item);
        if (!valid_identifier(name))
          throw ParseError("invalid coordinate name '" + name + "'",
                           ln.number, ln.column_base);
        if (is_function_name(name))
          throw ParseError("coordinate name '" + name +
                               "' collides with a function name",
                           ln.number, ln.column_base);
        if (std::find(coords.begin(), coords.end(), name) != coords.end())
          throw ParseError("duplicate coordinate name '" + name + "'",
                           ln.number, ln.column_base);
        coords.push_back(name);
      }
      if (static_cast<int>(coords.size()) != n)
        throw ParseError("declared dim " + std::to_string(n) + " but " +
                             std::to_string(coords.size()) + " coordinates",
                         ln.number, ln.column_base);
    } else if (key.rfind("domain ", 0) == 0) {
      require_header(ln);
      std::string name = trim(std::string_view(key).substr(7));
      auto it = std::find(coords.begin(), coords.end(), name);
      if (it == coords.end())
        throw ParseError("unknown coordinate '" + name + "' in domain",
                         ln.number, ln.column_base);
      std::string v = trim(value);
      if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw ParseError("domain must be of the form [lo, hi]", ln.number,
                         ln.column_base);
      std::string inner = v.substr(1, v.size() - 2);
      std::size_t comma = inner.find(',');
      if (comma == std::string::npos)
        throw ParseError("domain must be of the form [lo, hi]", ln.number,
                         ln.column_base);
      double lo = parse_number_or_throw(inner.substr(0, comma), ln);
      double hi = parse_number_or_throw(inner.substr(comma + 1), ln);
      if (!(lo < hi))
        throw ParseError("domain requires lo < hi", ln.number,
                         ln.column_base);
      domain[it - coords.begin()] = CoordInterval{lo, hi};
    } else if (key.size() > 1 && key[0] == 'g' && key[1] == '[') {
      require_header(ln);
      int i = 0, j = 0;
      {
        std::string_view k(key);
        std::size_t c1 = k.find(']');
        if (c1 == std::string_view::npos || c1 + 1 >= k.size() ||
            k[c1 + 1] != '[' || k.back() != ']')
          throw ParseError("component must be of the form g[i][j]", ln.number,
                           ln.column_base);
        auto idx1 = k.substr(2, c1 - 2);
        auto idx2 = k.substr(c1 + 2, k.size() - c1 - 3);
        auto parse_idx = [&](std::string_view s) {
          int v = 0;
          std::string t = trim(s);
          auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
          if (ec != std::errc() || p != t.data() + t.size())
            throw ParseError("malformed component index", ln.number,
                             ln.column_base);
          return v;
        };
        i = parse_idx(idx1);
        j = parse_idx(idx2);
      }
      if (i < 1 || i > n || j < 1 || j > n)
        throw ParseError("component index out of range for dim " +
                             std::to_string(n),
                         ln.number, ln.column_base);
      if (j > i)
        throw ParseError("components are lower-triangular: declare g[" +
                             std::to_string(j) + "][" + std::to_string(i) +
                             "] instead",
                         ln.number, ln.column_base);
      std::size_t slot = MetricField::tri_index(i - 1, j - 1);
      if (assigned[slot])
        throw ParseError("duplicate component g[" + std::to_string(i) + "][" +
                             std::to_string(j) + "]",
                         ln.number, ln.column_base);
      int col = ln.column_base + static_cast<int>(eq) + 1;
      comps[slot] = parse_expression(value, coords, ln.number, col);
      assigned[slot] = true;
    } else {
      throw ParseError("unrecognized statement '" + key + "'", ln.number,
                       ln.column_base);
    }
  }

  if (n == 0) throw ParseError("missing 'dim' declaration", 1, 1);
  if (coords.empty()) throw ParseError("missing 'coords' declaration", 1, 1);
  return MetricField(std::move(coords), std::move(comps), std::move(domain));
}

std::string to_metric_source(const MetricField& m) {
  std::string out;
  out += "dim = " + std::to_string(m.dim()) + "\n";
  out += "coords = ";
  for (int i = 0; i < m.dim(); ++i) {
    if (i) out += ", ";
    out += m.coords()[i];
  }
  out += "\n";
  for (int i = 0; i < m.dim(); ++i) {
    const auto& d = m.domain(i);
    out += "domain " + m.coords()[i] + " = [" + format_double(d.lo) + ", " +
           format_double(d.hi) + "]\n";
  }
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j <= i; ++j) {
      const ExprPtr& c = m.component(i, j);
      if (c->kind == Expr::Kind::Number && c->number == 0.0) continue;
      out += "g[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
             "] = " + print_expression(c) + "\n";
    }
  return out;
}

MetricField scale_metric(const MetricField& m, double factor) {
  std::vector<ExprPtr> comps;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j <= i; ++j) {
      const ExprPtr& c = m.component(i, j);
      if (c->kind == Expr::Kind::Number && c->number == 0.0)
        comps.push_back(c);
      else
        comps.push_back(make_bin(BinOp::Mul, make_number(factor), c));
    }
  return MetricField(m.coords(), std::move(comps), m.domains());
}

MetricField pullback_linear(const MetricField& m, const Eigen::MatrixXd& A,
                            const Eigen::VectorXd& offset,
                            std::vector<std::string> new_coords,
                            std::vector<CoordInterval> new_domains) {
  const int n = m.dim();
  if (A.rows() != n || A.cols() != n || offset.size() != n)
    throw std::invalid_argument("pullback_linear: shape mismatch");
  if (std::abs(A.determinant()) < 1e-12)
    throw std::invalid_argument("pullback_linear: singular chart change");

  // x_i = offset_i + Σ_l A(i,l) y_l as expressions in the new coordinates.
  std::vector<ExprPtr> x_of_y(n);
  for (int i = 0; i < n; ++i) {
    ExprPtr acc = make_number(offset[i]);
    for (int l = 0; l < n; ++l) {
      if (A(i, l) == 0.0) continue;
      ExprPtr term = make_bin(BinOp::Mul, make_number(A(i, l)),
                              make_var(l, new_coords[l]));
      acc = make_bin(BinOp::Add, acc, term);
    }
    x_of_y[i] = acc;
  }

  std::vector<ExprPtr> comps;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      ExprPtr acc;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double coef = A(i, a) * A(j, b);
          if (coef == 0.0) continue;
          const ExprPtr& gij = m.component(i, j);
          if (gij->kind == Expr::Kind::Number && gij->number == 0.0) continue;
          ExprPtr term = make_bin(BinOp::Mul, make_number(coef),
                                  substitute(gij, x_of_y));
          acc = acc ? make_bin(BinOp::Add, acc, term) : term;
        }
      comps.push_back(acc ? acc : make_number(0.0));
    }
  return MetricField(std::move(new_coords), std::move(comps),
                     std::move(new_domains));
}

}  // namespace qcurv
